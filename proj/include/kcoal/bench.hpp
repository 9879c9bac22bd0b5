#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kcoal/game.hpp"
#include "kcoal/heuristics.hpp"
#include "kcoal/metrics.hpp"

namespace kcoal {

/// One solver pipeline under test, e.g. "greedy" or "lex:random".
struct Arm {
    Algorithm algorithm = Algorithm::None;
    InitKind init = InitKind::Greedy;
    std::string label;
};

/// Parses "greedy", "random", "sa:greedy", "lex:random", ... Throws
/// std::invalid_argument on anything else.
Arm arm_from_string(const std::string& text);

struct ExperimentPlan {
    enum class Source { File, Uniform, Circulant };

    Source source = Source::Uniform;
    std::string instance_path;  // Source::File
    std::vector<int> sizes;     // n sweep for generated sources
    int d = 5;                  // Uniform out-degree
    bool weighted = false;      // Uniform rank weights

    int k = 0;
    bool equal_sizes = true;    // false -> capped preset with epsilon
    double epsilon = 0.0;

    std::vector<Arm> arms;
    int repetitions = 1;
    std::uint64_t master_seed = 0;
    SolverConfig solver{};      // steps / limits / restarts shared by all arms
};

struct RunRecord {
    int size_index = 0;
    int n = 0;
    int arm_index = 0;
    int rep = 0;
    std::uint64_t seed = 0;
    bool failed = false;
    std::string error;
    MetricsReport report;
};

struct BenchResult {
    std::string summary_csv;  // one row per (size, arm): means and std devs
    std::string per_run_csv;  // one row per repetition
    std::vector<RunRecord> records;
};

/// Runs every (size, arm, repetition) cell. Within a (size, repetition) pair
/// all arms see the same instance; seeds are derived from the master seed so
/// the whole table is reproducible byte for byte regardless of thread count.
/// threads <= 0 picks a machine-dependent worker count (results unaffected).
/// Per-run failures are recorded and excluded from the aggregates; the
/// summary keeps an error count per cell.
BenchResult run_bench(const ExperimentPlan& plan, int threads = 0);

} // namespace kcoal
