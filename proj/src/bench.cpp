#include "kcoal/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "kcoal/datagen.hpp"
#include "kcoal/errors.hpp"
#include "kcoal/io.hpp"
#include "kcoal/rng.hpp"

namespace kcoal {

namespace {

constexpr std::uint64_t kStreamInstance = 0x62656E2E69; // instance draws
constexpr std::uint64_t kStreamRun = 0x62656E2E72;      // per-run solver seeds

std::string fixed6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

std::string source_name(const ExperimentPlan& plan) {
    switch (plan.source) {
        case ExperimentPlan::Source::File: return "file:" + plan.instance_path;
        case ExperimentPlan::Source::Uniform: return "uniform";
        case ExperimentPlan::Source::Circulant: return "circulant";
    }
    return "?";
}

struct CellStats {
    int count = 0;
    int errors = 0;
    Rational min_sum;
    Rational avg_sum;
    Rational total_sum;
    Rational gini_sum;
    std::vector<double> mins, avgs, totals, ginis;

    void add(const MetricsReport& r) {
        ++count;
        min_sum += r.egalitarian;
        avg_sum += r.average;
        total_sum += r.total;
        gini_sum += r.gini;
        mins.push_back(static_cast<double>(r.egalitarian));
        avgs.push_back(r.average.convert_to<double>());
        totals.push_back(static_cast<double>(r.total));
        ginis.push_back(r.gini.convert_to<double>());
    }

    static double stddev(const std::vector<double>& xs) {
        if (xs.size() < 2) return 0.0;
        double mean = 0.0;
        for (double x : xs) mean += x;
        mean /= static_cast<double>(xs.size());
        double ss = 0.0;
        for (double x : xs) ss += (x - mean) * (x - mean);
        return std::sqrt(ss / static_cast<double>(xs.size() - 1));
    }
};

} // namespace

Arm arm_from_string(const std::string& text) {
    auto init_of = [](const std::string& s) {
        if (s == "greedy") return InitKind::Greedy;
        if (s == "random") return InitKind::Random;
        throw std::invalid_argument("unknown arm seeding '" + s + "' (greedy or random)");
    };
    Arm arm;
    arm.label = text;
    const std::size_t colon = text.find(':');
    if (colon == std::string::npos) {
        arm.algorithm = Algorithm::None;
        arm.init = init_of(text);
        return arm;
    }
    const std::string algo = text.substr(0, colon);
    if (algo == "sa")
        arm.algorithm = Algorithm::SimulatedAnnealing;
    else if (algo == "lex")
        arm.algorithm = Algorithm::LexiClimb;
    else
        throw std::invalid_argument("unknown arm algorithm '" + algo + "' (sa or lex)");
    arm.init = init_of(text.substr(colon + 1));
    return arm;
}

BenchResult run_bench(const ExperimentPlan& plan, int threads) {
    if (plan.arms.empty()) throw std::invalid_argument("benchmark needs at least one arm");
    if (plan.repetitions < 1) throw std::invalid_argument("benchmark needs at least one repetition");
    if (plan.k < 1) throw std::invalid_argument("benchmark needs the coalition count k");

    // Materialise the instances first: every arm must see the same game in a
    // given (size, repetition) cell for the comparison to be paired.
    std::vector<int> sizes = plan.sizes;
    Instance file_instance;
    if (plan.source == ExperimentPlan::Source::File) {
        file_instance = read_edge_list_file(plan.instance_path);
        sizes = {file_instance.game.player_count()};
    } else if (sizes.empty()) {
        throw std::invalid_argument("generated benchmarks need at least one instance size");
    }

    const int S = static_cast<int>(sizes.size());
    const int A = static_cast<int>(plan.arms.size());
    const int R = plan.repetitions;

    std::vector<Game> instances(static_cast<std::size_t>(S) * static_cast<std::size_t>(R));
    for (int s = 0; s < S; ++s) {
        for (int r = 0; r < R; ++r) {
            const auto flat = static_cast<std::uint64_t>(s) * static_cast<std::uint64_t>(R) +
                              static_cast<std::uint64_t>(r);
            Game& slot = instances[static_cast<std::size_t>(s * R + r)];
            switch (plan.source) {
                case ExperimentPlan::Source::File:
                    slot = file_instance.game;
                    break;
                case ExperimentPlan::Source::Uniform:
                    slot = gen_uniform_outdegree(GenSpec{sizes[static_cast<std::size_t>(s)], plan.d,
                                                         plan.weighted,
                                                         derive_seed(plan.master_seed, kStreamInstance, flat)});
                    break;
                case ExperimentPlan::Source::Circulant:
                    slot = gen_circulant(sizes[static_cast<std::size_t>(s)], plan.k);
                    break;
            }
        }
    }

    BenchResult result;
    result.records.resize(static_cast<std::size_t>(S) * static_cast<std::size_t>(A) *
                          static_cast<std::size_t>(R));

    const auto job_count = result.records.size();
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t job = next.fetch_add(1);
            if (job >= job_count) return;
            const int s = static_cast<int>(job / (static_cast<std::size_t>(A) * R));
            const int a = static_cast<int>((job / static_cast<std::size_t>(R)) % A);
            const int r = static_cast<int>(job % static_cast<std::size_t>(R));

            RunRecord& rec = result.records[job];
            rec.size_index = s;
            rec.n = sizes[static_cast<std::size_t>(s)];
            rec.arm_index = a;
            rec.rep = r;
            rec.seed = derive_seed(plan.master_seed, kStreamRun,
                                   (static_cast<std::uint64_t>(s) * static_cast<std::uint64_t>(A) +
                                    static_cast<std::uint64_t>(a)) *
                                           static_cast<std::uint64_t>(R) +
                                       static_cast<std::uint64_t>(r));
            try {
                const Game& game = instances[static_cast<std::size_t>(s * R + r)];
                const SizeConstraints cons = plan.equal_sizes
                                                 ? SizeConstraints::equal_split(rec.n, plan.k)
                                                 : SizeConstraints::capped(rec.n, plan.k, plan.epsilon);
                SolverConfig config = plan.solver;
                config.seed = rec.seed;
                const Arm& arm = plan.arms[static_cast<std::size_t>(a)];
                PipelineChoice choice{arm.algorithm, arm.init, ""};
                rec.report = solve_pipeline(game, cons, config, choice).report;
            } catch (const std::exception& ex) {
                rec.failed = true;
                rec.error = ex.what();
            }
        }
    };

    int worker_count = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    worker_count = std::max(1, std::min({worker_count, 8, static_cast<int>(job_count)}));
    if (worker_count == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(worker_count));
        for (int t = 0; t < worker_count; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    // CSVs are assembled single-threaded from the records, so their bytes do
    // not depend on scheduling.
    const std::string source = source_name(plan);
    std::string per_run = "source,n,k,arm,rep,seed,min,avg,total,gini,min_count,error\n";
    std::string summary =
        "source,n,k,d,weighted,arm,reps,errors,min_mean,min_std,avg_mean,avg_std,total_mean,total_std,"
        "gini_mean,gini_std\n";

    for (int s = 0; s < S; ++s) {
        for (int a = 0; a < A; ++a) {
            CellStats stats;
            for (int r = 0; r < R; ++r) {
                const RunRecord& rec =
                    result.records[(static_cast<std::size_t>(s) * A + static_cast<std::size_t>(a)) * R +
                                   static_cast<std::size_t>(r)];
                per_run += source + "," + std::to_string(rec.n) + "," + std::to_string(plan.k) + "," +
                           plan.arms[static_cast<std::size_t>(a)].label + "," + std::to_string(r) + "," +
                           std::to_string(rec.seed) + ",";
                if (rec.failed) {
                    ++stats.errors;
                    per_run += ",,,,," + rec.error + "\n";
                } else {
                    stats.add(rec.report);
                    per_run += rec.report.csv_row() + ",\n";
                }
            }
            summary += source + "," + std::to_string(sizes[static_cast<std::size_t>(s)]) + "," +
                       std::to_string(plan.k) + "," +
                       std::to_string(plan.source == ExperimentPlan::Source::Uniform ? plan.d : 0) + "," +
                       (plan.source == ExperimentPlan::Source::Uniform && plan.weighted ? "1" : "0") + "," +
                       plan.arms[static_cast<std::size_t>(a)].label + "," + std::to_string(stats.count) +
                       "," + std::to_string(stats.errors) + ",";
            if (stats.count > 0) {
                const Rational m(stats.count);
                summary += decimal_string(stats.min_sum / m, 6) + "," + fixed6(CellStats::stddev(stats.mins)) +
                           "," + decimal_string(stats.avg_sum / m, 6) + "," +
                           fixed6(CellStats::stddev(stats.avgs)) + "," + decimal_string(stats.total_sum / m, 6) +
                           "," + fixed6(CellStats::stddev(stats.totals)) + "," +
                           decimal_string(stats.gini_sum / m, 6) + "," + fixed6(CellStats::stddev(stats.ginis)) +
                           "\n";
            } else {
                summary += ",,,,,,,\n";
            }
        }
    }
    result.per_run_csv = std::move(per_run);
    result.summary_csv = std::move(summary);
    return result;
}

} // namespace kcoal
