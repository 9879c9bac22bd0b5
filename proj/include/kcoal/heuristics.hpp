#pragma once

#include <cstdint>
#include <string>

#include "kcoal/game.hpp"
#include "kcoal/metrics.hpp"

namespace kcoal {

enum class Algorithm {
    None, // init only, no search on top
    SimulatedAnnealing,
    LexiClimb,
};

enum class InitKind {
    Random,
    Greedy,
    File,
};

struct TemperatureSchedule {
    enum class Mode {
        LinearCooling, // base * (1 - step/limit): hot start, cools to zero
        LiteralRising, // base * (step/limit): the exotic variant, kept selectable
    };

    Mode mode = Mode::LinearCooling;
    double base = 0.8;

    double temperature(std::int64_t step, std::int64_t step_limit) const;
};

struct SolverConfig {
    // Negative means "derive from instance size": 200*n*k steps, 50*k
    // non-improving draws.
    std::int64_t step_limit = -1;
    std::int64_t no_improve_limit = -1;
    int restarts = 10;
    std::uint64_t seed = 1;
    TemperatureSchedule schedule{};

    std::int64_t resolved_step_limit(int n, int k) const;
    std::int64_t resolved_no_improve_limit(int k) const;
};

/// Valid structure with sizes as equal as the windows allow, membership
/// uniformly random given the sizes. Throws InfeasibleError when the windows
/// cannot host n players.
CoalitionStructure random_balanced_partition(int n, int k, const SizeConstraints& constraints,
                                             std::uint64_t seed);

/// Deterministic utilitarian seeding: repeatedly places the (player,
/// coalition) pair with the largest marginal gain, skipping placements that
/// would make the minimum-size quotas unreachable. The seed parameter is
/// accepted for interface symmetry and ignored.
CoalitionStructure greedy_utilitarian_init(const Game& game, int k, const SizeConstraints& constraints,
                                           std::uint64_t seed);

/// Metropolis acceptance on the sa_score objective: 1 for non-negative score
/// deltas, exp(delta / temperature) otherwise (0 once the temperature hits 0).
double sa_acceptance_probability(double score_delta, double temperature);

/// Local search over single-player moves and cross-coalition swaps, keeping
/// the best structure ever visited (the walk itself may drift downhill).
CoalitionStructure simulated_annealing(const Game& game, const CoalitionStructure& init,
                                       const SizeConstraints& constraints, const SolverConfig& config);

/// Leximin hill-climb: draws an ordered coalition pair (donor above its
/// minimum, receiver below its maximum), scans all single-player moves
/// between them and applies the leximin-best strictly improving one. A run
/// stops after no_improve_limit consecutive draws without improvement;
/// restarts re-run from fresh random balanced structures and the overall
/// leximin-best result wins.
CoalitionStructure lexi_climb(const Game& game, const CoalitionStructure& init,
                              const SizeConstraints& constraints, const SolverConfig& config);

struct PipelineChoice {
    Algorithm algorithm = Algorithm::LexiClimb;
    InitKind init = InitKind::Random;
    std::string init_file; // used when init == InitKind::File
};

struct SolveResult {
    CoalitionStructure structure;
    MetricsReport report;
};

/// init -> algorithm -> metrics, with all seeds derived from config.seed.
SolveResult solve_pipeline(const Game& game, const SizeConstraints& constraints,
                           const SolverConfig& config, const PipelineChoice& choice);

} // namespace kcoal
