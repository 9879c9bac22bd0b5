#include "kcoal/cli.hpp"

#include <chrono>
#include <cstdint>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"

#include "kcoal/bench.hpp"
#include "kcoal/datagen.hpp"
#include "kcoal/errors.hpp"
#include "kcoal/heuristics.hpp"
#include "kcoal/io.hpp"
#include "kcoal/metrics.hpp"
#include "kcoal/oracle.hpp"
#include "kcoal/rng.hpp"

namespace kcoal {

namespace {

std::uint64_t time_seed() {
    const auto now = std::chrono::system_clock::now().time_since_epoch();
    const auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(now).count();
    return derive_seed(static_cast<std::uint64_t>(ns), 0x74696D65);
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(cell, &used);
            if (used != cell.size()) throw std::invalid_argument(cell);
            out.push_back(v);
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string(what) + ": '" + cell + "' is not an integer");
        }
    }
    if (out.empty()) throw std::invalid_argument(std::string(what) + ": empty list");
    return out;
}

std::int64_t config_int(const std::map<std::string, std::string>& kv, const std::string& file,
                        const std::string& key) {
    const std::string& v = kv.at(key);
    try {
        std::size_t used = 0;
        const long long x = std::stoll(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ParseError(file, 0, "key '" + key + "': '" + v + "' is not an integer");
    }
}

double config_double(const std::map<std::string, std::string>& kv, const std::string& file,
                     const std::string& key) {
    const std::string& v = kv.at(key);
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ParseError(file, 0, "key '" + key + "': '" + v + "' is not a number");
    }
}

Algorithm algorithm_from_string(const std::string& s) {
    if (s == "sa") return Algorithm::SimulatedAnnealing;
    if (s == "lex") return Algorithm::LexiClimb;
    if (s == "none") return Algorithm::None;
    throw std::invalid_argument("unknown algorithm '" + s + "' (sa, lex or none)");
}

TemperatureSchedule::Mode schedule_from_string(const std::string& s) {
    if (s == "linear") return TemperatureSchedule::Mode::LinearCooling;
    if (s == "literal") return TemperatureSchedule::Mode::LiteralRising;
    throw std::invalid_argument("unknown schedule '" + s + "' (linear or literal)");
}

void init_from_string(const std::string& s, PipelineChoice& choice) {
    if (s == "random") {
        choice.init = InitKind::Random;
    } else if (s == "greedy") {
        choice.init = InitKind::Greedy;
    } else if (s.rfind("file=", 0) == 0) {
        choice.init = InitKind::File;
        choice.init_file = s.substr(5);
        if (choice.init_file.empty()) throw std::invalid_argument("empty path in init 'file='");
    } else {
        throw std::invalid_argument("unknown init '" + s + "' (random, greedy or file=PATH)");
    }
}

// ---- generate ---------------------------------------------------------

struct GenerateArgs {
    std::string type;
    std::string out;
    std::string csv;
    int n = 0;
    int k = 0;
    int d = 0;
    int k_hint = 0;
    int max_friends = 0;
    bool weighted = false;
    std::uint64_t seed = 1;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
    if (a.type == "circulant") {
        if (a.n <= 0 || a.k <= 0) throw std::invalid_argument("circulant needs --n and --k");
        const Game game = gen_circulant(a.n, a.k);
        write_edge_list_file(a.out, game, a.k,
                             {"generator: circulant n=" + std::to_string(a.n) + " k=" + std::to_string(a.k)});
    } else if (a.type == "uniform") {
        if (a.n <= 0 || a.d <= 0) throw std::invalid_argument("uniform needs --n and --d");
        const Game game = gen_uniform_outdegree(GenSpec{a.n, a.d, a.weighted, a.seed});
        write_edge_list_file(a.out, game, a.k_hint,
                             {"generator: uniform n=" + std::to_string(a.n) + " d=" + std::to_string(a.d) +
                              " weighted=" + (a.weighted ? std::string("1") : std::string("0")) +
                              " seed=" + std::to_string(a.seed)});
    } else { // friends
        if (a.csv.empty() || a.max_friends <= 0)
            throw std::invalid_argument("friends needs --csv and --max-friends");
        const FriendCsv data = ingest_friend_csv_file(a.csv, a.max_friends, a.weighted);
        write_edge_list_file(a.out, data.game, a.k_hint,
                             {"generator: friends csv=" + a.csv + " max-friends=" +
                              std::to_string(a.max_friends) +
                              " weighted=" + (a.weighted ? std::string("1") : std::string("0"))});
        // Sidecar keeps the player-index -> original-id mapping round-trippable.
        std::ofstream ids(a.out + ".ids");
        if (!ids) throw ParseError(a.out + ".ids", 0, "cannot open file for writing");
        for (const auto& id : data.ids) ids << id << "\n";
        out << "wrote " << a.out << " and " << a.out << ".ids\n";
        return kExitOk;
    }
    out << "wrote " << a.out << "\n";
    return kExitOk;
}

// ---- solve ------------------------------------------------------------

struct SolveArgs {
    std::string instance;
    std::string config_file;
    std::string out;
    std::string algorithm = "lex";
    std::string init = "random";
    std::string schedule = "linear";
    int k = 0;
    double epsilon = 0.0;
    bool equal = false;
    std::int64_t steps = -1;
    std::int64_t no_improve = -1;
    int restarts = 10;
    std::uint64_t seed = 0;
    // which flags were given explicitly (config file must not override those)
    bool has_k = false, has_epsilon = false, has_algorithm = false, has_init = false;
    bool has_schedule = false, has_steps = false, has_no_improve = false, has_restarts = false;
    bool has_seed = false;
};

int cmd_solve(SolveArgs a, std::ostream& out) {
    if (!a.config_file.empty()) {
        const auto kv = read_key_values_file(a.config_file);
        if (!a.has_algorithm && kv.count("algorithm")) a.algorithm = kv.at("algorithm");
        if (!a.has_init && kv.count("init")) a.init = kv.at("init");
        if (!a.has_schedule && kv.count("schedule")) a.schedule = kv.at("schedule");
        if (!a.has_k && kv.count("k")) {
            a.k = static_cast<int>(config_int(kv, a.config_file, "k"));
            a.has_k = true;
        }
        if (!a.has_epsilon && kv.count("epsilon")) {
            a.epsilon = config_double(kv, a.config_file, "epsilon");
            a.has_epsilon = true;
        }
        if (!a.has_steps && kv.count("step_limit")) a.steps = config_int(kv, a.config_file, "step_limit");
        if (!a.has_no_improve && kv.count("no_improve_limit"))
            a.no_improve = config_int(kv, a.config_file, "no_improve_limit");
        if (!a.has_restarts && kv.count("restarts"))
            a.restarts = static_cast<int>(config_int(kv, a.config_file, "restarts"));
        if (!a.has_seed && kv.count("seed")) {
            a.seed = static_cast<std::uint64_t>(config_int(kv, a.config_file, "seed"));
            a.has_seed = true;
        }
    }
    if (a.equal && a.has_epsilon)
        throw std::invalid_argument("--equal and --epsilon are mutually exclusive");

    const Instance inst = read_edge_list_file(a.instance);
    const int n = inst.game.player_count();
    int k = a.has_k ? a.k : inst.k_hint;
    if (k < 1)
        throw std::invalid_argument("no usable k: pass --k or use an instance with a k hint");
    if (k > n) throw InfeasibleError("k=" + std::to_string(k) + " exceeds the player count " + std::to_string(n));

    const SizeConstraints cons =
        a.has_epsilon ? SizeConstraints::capped(n, k, a.epsilon) : SizeConstraints::equal_split(n, k);

    SolverConfig config;
    config.step_limit = a.steps;
    config.no_improve_limit = a.no_improve;
    config.restarts = a.restarts;
    config.seed = a.has_seed ? a.seed : time_seed();
    config.schedule.mode = schedule_from_string(a.schedule);

    PipelineChoice choice;
    choice.algorithm = algorithm_from_string(a.algorithm);
    init_from_string(a.init, choice);

    const SolveResult result = solve_pipeline(inst.game, cons, config, choice);

    out << "# seed=" << config.seed << "\n";
    out << MetricsReport::csv_header() << "\n" << result.report.csv_row() << "\n";
    if (!a.out.empty()) write_partition_file(a.out, result.structure);
    return kExitOk;
}

// ---- evaluate ---------------------------------------------------------

int cmd_evaluate(const std::string& instance_path, const std::string& partition_path, std::ostream& out) {
    const Instance inst = read_edge_list_file(instance_path);
    const CoalitionStructure cs = read_partition_file(partition_path, inst.game.player_count());
    const MetricsReport report = MetricsReport::of(utility_profile(inst.game, cs));
    out << MetricsReport::csv_header() << "\n" << report.csv_row() << "\n";
    return kExitOk;
}

// ---- bench ------------------------------------------------------------

struct BenchArgs {
    std::string instance;
    std::string gen;
    std::string sizes;
    std::string arms;
    std::string out;
    std::string per_run;
    int d = 5;
    bool weighted = false;
    int k = 0;
    double epsilon = 0.0;
    bool equal = false;
    bool has_epsilon = false;
    int reps = 1;
    std::uint64_t seed = 0;
    std::int64_t steps = -1;
    std::int64_t no_improve = -1;
    int restarts = 10;
    int threads = 0;
};

int cmd_bench(const BenchArgs& a, std::ostream&) {
    if (a.equal && a.has_epsilon)
        throw std::invalid_argument("--equal and --epsilon are mutually exclusive");
    if (a.instance.empty() == a.gen.empty())
        throw std::invalid_argument("pick exactly one instance source: --instance or --gen");

    ExperimentPlan plan;
    if (!a.instance.empty()) {
        plan.source = ExperimentPlan::Source::File;
        plan.instance_path = a.instance;
    } else if (a.gen == "uniform") {
        plan.source = ExperimentPlan::Source::Uniform;
    } else if (a.gen == "circulant") {
        plan.source = ExperimentPlan::Source::Circulant;
    } else {
        throw std::invalid_argument("unknown generator '" + a.gen + "' (uniform or circulant)");
    }
    if (plan.source != ExperimentPlan::Source::File)
        plan.sizes = parse_int_list(a.sizes, "--sizes");

    plan.d = a.d;
    plan.weighted = a.weighted;
    plan.k = a.k;
    if (plan.k < 1 && plan.source == ExperimentPlan::Source::File)
        plan.k = read_edge_list_file(a.instance).k_hint;
    if (plan.k < 1) throw std::invalid_argument("no usable k: pass --k or use an instance with a k hint");
    plan.equal_sizes = !a.has_epsilon;
    plan.epsilon = a.epsilon;
    for (const auto& label : [&] {
             std::vector<std::string> parts;
             std::stringstream ss(a.arms);
             std::string cell;
             while (std::getline(ss, cell, ',')) parts.push_back(cell);
             return parts;
         }())
        plan.arms.push_back(arm_from_string(label));
    plan.repetitions = a.reps;
    plan.master_seed = a.seed;
    plan.solver.step_limit = a.steps;
    plan.solver.no_improve_limit = a.no_improve;
    plan.solver.restarts = a.restarts;

    const BenchResult result = run_bench(plan, a.threads);

    std::ofstream summary(a.out);
    if (!summary) throw ParseError(a.out, 0, "cannot open file for writing");
    summary << result.summary_csv;
    if (!a.per_run.empty()) {
        std::ofstream per_run(a.per_run);
        if (!per_run) throw ParseError(a.per_run, 0, "cannot open file for writing");
        per_run << result.per_run_csv;
    }
    return kExitOk;
}

// ---- oracle -----------------------------------------------------------

struct OracleArgs {
    std::string instance;
    std::string min_sizes;
    std::string out;
    int k = 0;
    double epsilon = 0.0;
    bool equal = false;
    bool has_epsilon = false;
    bool has_delta = false;
    std::int64_t delta = 0;
    int max_n = 16;
};

int cmd_oracle(const OracleArgs& a, std::ostream& out) {
    const Instance inst = read_edge_list_file(a.instance);
    const int n = inst.game.player_count();

    SizeConstraints cons;
    int k = a.k > 0 ? a.k : inst.k_hint;
    if (!a.min_sizes.empty()) {
        if (a.has_epsilon || a.equal)
            throw std::invalid_argument("--min-sizes cannot be combined with --equal/--epsilon");
        const auto mins = parse_int_list(a.min_sizes, "--min-sizes");
        if (k > 0 && k != static_cast<int>(mins.size()))
            throw std::invalid_argument("--k disagrees with the number of --min-sizes entries");
        k = static_cast<int>(mins.size());
        cons = SizeConstraints::at_least(mins, n);
    } else {
        if (k < 1) throw std::invalid_argument("no usable k: pass --k or use an instance with a k hint");
        cons = a.has_epsilon ? SizeConstraints::capped(n, k, a.epsilon) : SizeConstraints::equal_split(n, k);
    }

    const OracleLimits limits{a.max_n};
    if (a.has_delta) {
        const auto witness = decide_egalitarian(DecisionInstance{inst.game, k, a.delta, cons}, limits);
        out << (witness ? "yes" : "no") << "\n";
        if (witness && !a.out.empty()) write_partition_file(a.out, *witness);
        return kExitOk;
    }
    const OracleResult best = exact_max_egalitarian(inst.game, k, cons, limits);
    const MetricsReport report = MetricsReport::of(utility_profile(inst.game, best.structure));
    out << MetricsReport::csv_header() << "\n" << report.csv_row() << "\n";
    if (!a.out.empty()) write_partition_file(a.out, best.structure);
    return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"coalition partitioning toolkit: generators, local search, exact procedures"};
    app.name("kcoal");
    app.require_subcommand(1);

    GenerateArgs g;
    auto* gen = app.add_subcommand("generate", "write a game instance as an edge list");
    gen->add_option("--type", g.type, "circulant | uniform | friends")
        ->required()
        ->check(CLI::IsMember({"circulant", "uniform", "friends"}));
    gen->add_option("--out", g.out, "output edge-list path")->required();
    gen->add_option("--n", g.n, "player count");
    gen->add_option("--k", g.k, "circulant step count (also written as the k hint)");
    gen->add_option("--d", g.d, "uniform out-degree");
    gen->add_option("--k-hint", g.k_hint, "k hint to store in the header");
    gen->add_option("--seed", g.seed, "generator seed");
    gen->add_flag("--weighted", g.weighted, "rank weights instead of unit weights");
    gen->add_option("--csv", g.csv, "friendship survey CSV to ingest");
    gen->add_option("--max-friends", g.max_friends, "friend cap per row in the CSV");

    SolveArgs s;
    auto* sol = app.add_subcommand("solve", "run a solver pipeline on an instance");
    sol->add_option("instance", s.instance, "edge-list file")->required();
    sol->add_option("--k", s.k, "coalition count (default: instance hint)");
    sol->add_option("--epsilon", s.epsilon, "size slack: max size floor((n/k)(1+eps)), min 1");
    sol->add_flag("--equal", s.equal, "equal-size windows (the default preset)");
    sol->add_option("--algorithm", s.algorithm, "sa | lex | none");
    sol->add_option("--init", s.init, "random | greedy | file=PATH");
    sol->add_option("--steps", s.steps, "annealing step limit (default 200*n*k)");
    sol->add_option("--no-improve", s.no_improve, "climb stop after this many dry draws (default 50*k)");
    sol->add_option("--restarts", s.restarts, "extra climb runs from random structures");
    sol->add_option("--seed", s.seed, "master seed (default: time-derived, echoed)");
    sol->add_option("--schedule", s.schedule, "linear | literal");
    sol->add_option("--config", s.config_file, "key=value config file (flags win)");
    sol->add_option("--out", s.out, "write the resulting partition here");

    std::string e_instance, e_partition;
    auto* eva = app.add_subcommand("evaluate", "recompute metrics for a partition file");
    eva->add_option("instance", e_instance, "edge-list file")->required();
    eva->add_option("partition", e_partition, "partition file, one label per line")->required();

    BenchArgs b;
    auto* ben = app.add_subcommand("bench", "run an experiment grid and write CSV tables");
    ben->add_option("--instance", b.instance, "fixed instance file");
    ben->add_option("--gen", b.gen, "uniform | circulant");
    ben->add_option("--sizes", b.sizes, "comma-separated n values for generated instances");
    ben->add_option("--d", b.d, "uniform out-degree");
    ben->add_flag("--weighted", b.weighted, "rank weights for the uniform generator");
    ben->add_option("--k", b.k, "coalition count");
    ben->add_option("--epsilon", b.epsilon, "size slack preset instead of equal sizes");
    ben->add_flag("--equal", b.equal, "equal-size windows (the default preset)");
    ben->add_option("--arms", b.arms, "comma list: greedy, random, sa:INIT, lex:INIT")->required();
    ben->add_option("--reps", b.reps, "repetitions per cell")->required();
    ben->add_option("--seed", b.seed, "master seed (required for reproducibility)")->required();
    ben->add_option("--steps", b.steps, "annealing step limit");
    ben->add_option("--no-improve", b.no_improve, "climb stop threshold");
    ben->add_option("--restarts", b.restarts, "climb restarts");
    ben->add_option("--threads", b.threads, "worker threads (0 = auto; results identical)");
    ben->add_option("--out", b.out, "summary CSV path")->required();
    ben->add_option("--per-run", b.per_run, "also dump one row per repetition");

    OracleArgs o;
    auto* ora = app.add_subcommand("oracle", "exact optimum / decision for small instances");
    ora->add_option("instance", o.instance, "edge-list file")->required();
    ora->add_option("--k", o.k, "coalition count (default: instance hint)");
    ora->add_option("--epsilon", o.epsilon, "size slack preset");
    ora->add_flag("--equal", o.equal, "equal-size windows (the default preset)");
    ora->add_option("--min-sizes", o.min_sizes, "comma list of per-coalition minimum sizes");
    ora->add_option("--delta", o.delta, "decide: does min utility >= delta exist?");
    ora->add_option("--out", o.out, "write the optimum / witness partition here");
    ora->add_option("--max-n", o.max_n, "exact-procedure size cap (default 16)");

    try {
        std::vector<const char*> argv;
        argv.reserve(args.size() + 1);
        argv.push_back("kcoal");
        for (const auto& arg : args) argv.push_back(arg.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*gen) return cmd_generate(g, out);
        if (*sol) {
            s.has_k = sol->count("--k") > 0;
            s.has_epsilon = sol->count("--epsilon") > 0;
            s.has_algorithm = sol->count("--algorithm") > 0;
            s.has_init = sol->count("--init") > 0;
            s.has_schedule = sol->count("--schedule") > 0;
            s.has_steps = sol->count("--steps") > 0;
            s.has_no_improve = sol->count("--no-improve") > 0;
            s.has_restarts = sol->count("--restarts") > 0;
            s.has_seed = sol->count("--seed") > 0;
            return cmd_solve(s, out);
        }
        if (*eva) return cmd_evaluate(e_instance, e_partition, out);
        if (*ben) {
            b.has_epsilon = ben->count("--epsilon") > 0;
            return cmd_bench(b, out);
        }
        if (*ora) {
            o.has_epsilon = ora->count("--epsilon") > 0;
            o.has_delta = ora->count("--delta") > 0;
            return cmd_oracle(o, out);
        }
        err << "kcoal: no subcommand selected\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "kcoal: " << e.what() << "\n";
        return kExitParse;
    } catch (const InfeasibleError& e) {
        err << "kcoal: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const SizeGuardError& e) {
        err << "kcoal: " << e.what() << "\n";
        return kExitGuard;
    } catch (const std::invalid_argument& e) {
        err << "kcoal: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "kcoal: internal error: " << e.what() << "\n";
        return kExitGuard;
    }
}

} // namespace kcoal
