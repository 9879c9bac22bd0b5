#include "kcoal/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "kcoal/errors.hpp"
#include "kcoal/io.hpp"
#include "kcoal/rng.hpp"

namespace kcoal {

namespace {

// Stream tags keeping the derived seeds of unrelated draws apart.
constexpr std::uint64_t kStreamInit = 0x696E6974;       // pipeline seeding
constexpr std::uint64_t kStreamSaWalk = 0x73612E77;     // annealing walk
constexpr std::uint64_t kStreamLexWalk = 0x6C782E77;    // climb draws, per run
constexpr std::uint64_t kStreamLexRestart = 0x6C782E72; // restart structures

void require_valid_init(const Game& game, const CoalitionStructure& init,
                        const SizeConstraints& constraints) {
    if (init.player_count() != game.player_count())
        throw std::invalid_argument("initial structure covers a different player count than the game");
    if (!init.well_formed()) throw std::invalid_argument("malformed initial structure");
    if (init.k != constraints.k())
        throw std::invalid_argument("initial structure and constraints disagree on coalition count");
    if (!validate(init, constraints).ok)
        throw std::invalid_argument("initial structure violates the size constraints");
}

// Mutable view of a structure during search: membership lists for uniform
// member draws, utilities maintained incrementally under single moves.
class SearchState {
public:
    SearchState(const Game& game, const CoalitionStructure& cs)
        : game_(&game), k_(cs.k), assignment_(cs.assignment) {
        const int n = game.player_count();
        members_.resize(static_cast<std::size_t>(k_));
        pos_.resize(static_cast<std::size_t>(n));
        for (int p = 0; p < n; ++p) {
            auto& m = members_[static_cast<std::size_t>(assignment_[static_cast<std::size_t>(p)])];
            pos_[static_cast<std::size_t>(p)] = static_cast<int>(m.size());
            m.push_back(p);
        }
        utils_ = utility_profile(game, cs);
    }

    int size_of(int c) const { return static_cast<int>(members_[static_cast<std::size_t>(c)].size()); }
    int member_at(int c, int i) const { return members_[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)]; }
    const std::vector<int>& members_of(int c) const { return members_[static_cast<std::size_t>(c)]; }
    const UtilityProfile& utilities() const { return utils_; }
    const std::vector<int>& assignment() const { return assignment_; }
    int k() const { return k_; }

    void move(int p, int to) {
        const auto pc = static_cast<std::size_t>(p);
        const int from = assignment_[pc];
        if (from == to) return;

        auto& old_list = members_[static_cast<std::size_t>(from)];
        const int slot = pos_[pc];
        const int moved_back = old_list.back();
        old_list[static_cast<std::size_t>(slot)] = moved_back;
        pos_[static_cast<std::size_t>(moved_back)] = slot;
        old_list.pop_back();
        auto& new_list = members_[static_cast<std::size_t>(to)];
        pos_[pc] = static_cast<int>(new_list.size());
        new_list.push_back(p);

        Weight u = 0;
        for (const auto& e : game_->out_edges(p))
            if (assignment_[static_cast<std::size_t>(e.to)] == to) u += e.weight;
        for (const auto& e : game_->in_edges(p)) {
            const int home = assignment_[static_cast<std::size_t>(e.from)];
            if (home == from)
                utils_[static_cast<std::size_t>(e.from)] -= e.weight;
            else if (home == to)
                utils_[static_cast<std::size_t>(e.from)] += e.weight;
        }
        utils_[pc] = u;
        assignment_[pc] = to;
    }

private:
    const Game* game_;
    int k_;
    std::vector<int> assignment_;
    std::vector<std::vector<int>> members_;
    std::vector<int> pos_;
    UtilityProfile utils_;
};

// First position where the sorted keys differ decides; larger entry wins.
bool key_greater(const std::vector<Weight>& a, const std::vector<Weight>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] > b[i];
    return false;
}

void sorted_key(const UtilityProfile& utils, std::vector<Weight>& out) {
    out = utils;
    std::sort(out.begin(), out.end());
}

// One hill-climbing run in place; the state always holds the best structure
// found so far within this run.
void climb_run(SearchState& st, Rng& rng, const SizeConstraints& cons, std::int64_t limit) {
    std::vector<Weight> key;
    sorted_key(st.utilities(), key);
    std::vector<Weight> best_key;
    std::vector<Weight> cand_key;
    std::vector<int> eligible;
    std::vector<int> scan;

    std::int64_t without_improvement = 0;
    while (without_improvement < limit) {
        eligible.clear();
        for (int c = 0; c < st.k(); ++c)
            if (st.size_of(c) > cons.min_sizes[static_cast<std::size_t>(c)]) eligible.push_back(c);
        if (eligible.empty()) {
            ++without_improvement;
            continue;
        }
        const int donor = eligible[rng.index(static_cast<int>(eligible.size()))];

        eligible.clear();
        for (int c = 0; c < st.k(); ++c)
            if (c != donor && st.size_of(c) < cons.max_sizes[static_cast<std::size_t>(c)])
                eligible.push_back(c);
        if (eligible.empty()) {
            ++without_improvement;
            continue;
        }
        const int receiver = eligible[rng.index(static_cast<int>(eligible.size()))];

        // Try every member of the donor coalition, lowest player first so
        // equal keys resolve to the smallest index.
        scan = st.members_of(donor);
        std::sort(scan.begin(), scan.end());
        int best_player = -1;
        best_key = key;
        for (int p : scan) {
            st.move(p, receiver);
            sorted_key(st.utilities(), cand_key);
            if (key_greater(cand_key, best_key)) {
                best_key = cand_key;
                best_player = p;
            }
            st.move(p, donor);
        }
        if (best_player >= 0) {
            st.move(best_player, receiver);
            key = best_key;
            without_improvement = 0;
        } else {
            ++without_improvement;
        }
    }
}

} // namespace

double TemperatureSchedule::temperature(std::int64_t step, std::int64_t step_limit) const {
    if (step_limit <= 0) return 0.0;
    const double progress = static_cast<double>(step) / static_cast<double>(step_limit);
    return mode == Mode::LinearCooling ? base * (1.0 - progress) : base * progress;
}

std::int64_t SolverConfig::resolved_step_limit(int n, int k) const {
    return step_limit >= 0 ? step_limit : 200LL * n * k;
}

std::int64_t SolverConfig::resolved_no_improve_limit(int k) const {
    return no_improve_limit >= 0 ? no_improve_limit : 50LL * k;
}

CoalitionStructure random_balanced_partition(int n, int k, const SizeConstraints& constraints,
                                             std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("need at least one coalition");
    if (constraints.k() != k) throw std::invalid_argument("constraints cover a different coalition count");
    if (!constraints.feasible(n))
        throw InfeasibleError("no split of " + std::to_string(n) + " players fits the size windows");

    // Start every coalition at its minimum, then hand the surplus to the
    // currently smallest coalition that can still grow.
    std::vector<int> sizes = constraints.min_sizes;
    int remaining = n;
    for (int s : sizes) remaining -= s;
    while (remaining > 0) {
        int pick = -1;
        for (int c = 0; c < k; ++c) {
            if (sizes[static_cast<std::size_t>(c)] >= constraints.max_sizes[static_cast<std::size_t>(c)])
                continue;
            if (pick < 0 || sizes[static_cast<std::size_t>(c)] < sizes[static_cast<std::size_t>(pick)])
                pick = c;
        }
        ++sizes[static_cast<std::size_t>(pick)];
        --remaining;
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) order[static_cast<std::size_t>(p)] = p;
    Rng rng(seed);
    rng.shuffle(order);

    CoalitionStructure cs{k, std::vector<int>(static_cast<std::size_t>(n), 0)};
    std::size_t at = 0;
    for (int c = 0; c < k; ++c)
        for (int i = 0; i < sizes[static_cast<std::size_t>(c)]; ++i)
            cs.assignment[static_cast<std::size_t>(order[at++])] = c;
    return cs;
}

CoalitionStructure greedy_utilitarian_init(const Game& game, int k, const SizeConstraints& constraints,
                                           std::uint64_t /*seed*/) {
    if (k < 1) throw std::invalid_argument("need at least one coalition");
    if (constraints.k() != k) throw std::invalid_argument("constraints cover a different coalition count");
    const int n = game.player_count();
    if (!constraints.feasible(n))
        throw InfeasibleError("no split of " + std::to_string(n) + " players fits the size windows");

    // gains[p][c] = total welfare added by putting p into c right now.
    std::vector<std::vector<Weight>> gains(static_cast<std::size_t>(n),
                                           std::vector<Weight>(static_cast<std::size_t>(k), 0));
    std::vector<char> assigned(static_cast<std::size_t>(n), 0);
    std::vector<int> sizes(static_cast<std::size_t>(k), 0);
    std::vector<int> assignment(static_cast<std::size_t>(n), -1);
    int deficit = 0;
    for (int c = 0; c < k; ++c) deficit += constraints.min_sizes[static_cast<std::size_t>(c)];

    for (int step = 0; step < n; ++step) {
        const int remaining_after = n - step - 1;
        int best_p = -1;
        int best_c = -1;
        Weight best_gain = -1;
        for (int p = 0; p < n; ++p) {
            if (assigned[static_cast<std::size_t>(p)]) continue;
            for (int c = 0; c < k; ++c) {
                if (sizes[static_cast<std::size_t>(c)] >= constraints.max_sizes[static_cast<std::size_t>(c)])
                    continue;
                const int deficit_next =
                    deficit -
                    (sizes[static_cast<std::size_t>(c)] < constraints.min_sizes[static_cast<std::size_t>(c)] ? 1 : 0);
                if (deficit_next > remaining_after) continue; // would starve a minimum quota
                if (gains[static_cast<std::size_t>(p)][static_cast<std::size_t>(c)] > best_gain) {
                    best_gain = gains[static_cast<std::size_t>(p)][static_cast<std::size_t>(c)];
                    best_p = p;
                    best_c = c;
                }
            }
        }
        if (best_p < 0) throw std::logic_error("greedy seeding found no viable placement");
        if (sizes[static_cast<std::size_t>(best_c)] < constraints.min_sizes[static_cast<std::size_t>(best_c)])
            --deficit;
        ++sizes[static_cast<std::size_t>(best_c)];
        assigned[static_cast<std::size_t>(best_p)] = 1;
        assignment[static_cast<std::size_t>(best_p)] = best_c;
        for (const auto& e : game.out_edges(best_p))
            if (!assigned[static_cast<std::size_t>(e.to)])
                gains[static_cast<std::size_t>(e.to)][static_cast<std::size_t>(best_c)] += e.weight;
        for (const auto& e : game.in_edges(best_p))
            if (!assigned[static_cast<std::size_t>(e.from)])
                gains[static_cast<std::size_t>(e.from)][static_cast<std::size_t>(best_c)] += e.weight;
    }
    return CoalitionStructure{k, std::move(assignment)};
}

double sa_acceptance_probability(double score_delta, double temperature) {
    if (score_delta >= 0) return 1.0;
    if (temperature <= 0) return 0.0;
    return std::exp(score_delta / temperature);
}

CoalitionStructure simulated_annealing(const Game& game, const CoalitionStructure& init,
                                       const SizeConstraints& constraints, const SolverConfig& config) {
    require_valid_init(game, init, constraints);
    const int n = game.player_count();
    const int k = constraints.k();

    SearchState st(game, init);
    Rng rng(derive_seed(config.seed, kStreamSaWalk));
    const std::int64_t limit = config.resolved_step_limit(n, k);

    std::int64_t current = sa_score(st.utilities());
    std::int64_t best_score = current;
    std::vector<int> best_assignment = st.assignment();
    std::vector<int> eligible;

    for (std::int64_t step = 0; step < limit; ++step) {
        const double temp = config.schedule.temperature(step, limit);
        const bool single_move = rng.below(2) == 0;
        std::int64_t after = current;
        bool applied = false;
        int moved_a = -1, back_a = -1; // revert bookkeeping
        int moved_b = -1, back_b = -1;

        if (single_move) {
            eligible.clear();
            for (int c = 0; c < k; ++c)
                if (st.size_of(c) > constraints.min_sizes[static_cast<std::size_t>(c)]) eligible.push_back(c);
            if (eligible.empty()) continue;
            const int donor = eligible[rng.index(static_cast<int>(eligible.size()))];
            eligible.clear();
            for (int c = 0; c < k; ++c)
                if (c != donor && st.size_of(c) < constraints.max_sizes[static_cast<std::size_t>(c)])
                    eligible.push_back(c);
            if (eligible.empty()) continue;
            const int receiver = eligible[rng.index(static_cast<int>(eligible.size()))];
            const int p = st.member_at(donor, rng.index(st.size_of(donor)));
            st.move(p, receiver);
            applied = true;
            moved_a = p;
            back_a = donor;
        } else {
            if (k < 2) continue;
            const int c1 = rng.index(k);
            int c2 = rng.index(k - 1);
            if (c2 >= c1) ++c2;
            const int a = st.member_at(c1, rng.index(st.size_of(c1)));
            const int b = st.member_at(c2, rng.index(st.size_of(c2)));
            st.move(a, c2);
            st.move(b, c1);
            applied = true;
            moved_a = a;
            back_a = c1;
            moved_b = b;
            back_b = c2;
        }

        if (!applied) continue;
        after = sa_score(st.utilities());
        const double accept = sa_acceptance_probability(static_cast<double>(after - current), temp);
        if (rng.unit() < accept) {
            current = after;
            if (current > best_score) {
                best_score = current;
                best_assignment = st.assignment();
            }
        } else {
            if (moved_b >= 0) st.move(moved_b, back_b);
            st.move(moved_a, back_a);
        }
    }
    return CoalitionStructure{k, std::move(best_assignment)};
}

CoalitionStructure lexi_climb(const Game& game, const CoalitionStructure& init,
                              const SizeConstraints& constraints, const SolverConfig& config) {
    require_valid_init(game, init, constraints);
    const int n = game.player_count();
    const int k = constraints.k();
    const std::int64_t limit = config.resolved_no_improve_limit(k);
    if (config.restarts < 0) throw std::invalid_argument("restart count must be non-negative");

    std::vector<Weight> best_key;
    CoalitionStructure best;
    for (int run = 0; run <= config.restarts; ++run) {
        CoalitionStructure start =
            run == 0 ? init
                     : random_balanced_partition(n, k, constraints,
                                                 derive_seed(config.seed, kStreamLexRestart,
                                                             static_cast<std::uint64_t>(run)));
        SearchState st(game, start);
        Rng rng(derive_seed(config.seed, kStreamLexWalk, static_cast<std::uint64_t>(run)));
        climb_run(st, rng, constraints, limit);

        std::vector<Weight> run_key;
        sorted_key(st.utilities(), run_key);
        if (run == 0 || key_greater(run_key, best_key)) {
            best_key = std::move(run_key);
            best = CoalitionStructure{k, st.assignment()};
        }
    }
    return best;
}

SolveResult solve_pipeline(const Game& game, const SizeConstraints& constraints,
                           const SolverConfig& config, const PipelineChoice& choice) {
    const int n = game.player_count();
    const int k = constraints.k();
    if (!constraints.feasible(n))
        throw InfeasibleError("no split of " + std::to_string(n) + " players fits the size windows");

    CoalitionStructure init;
    switch (choice.init) {
        case InitKind::Random:
            init = random_balanced_partition(n, k, constraints, derive_seed(config.seed, kStreamInit));
            break;
        case InitKind::Greedy:
            init = greedy_utilitarian_init(game, k, constraints, derive_seed(config.seed, kStreamInit));
            break;
        case InitKind::File: {
            init = read_partition_file(choice.init_file, n);
            if (init.k > k)
                throw ParseError(choice.init_file, 0,
                                 "partition uses " + std::to_string(init.k) + " coalitions, solver was given k=" +
                                     std::to_string(k));
            init.k = k; // files may simply never mention trailing labels
            const auto check = validate(init, constraints);
            if (!check.ok) {
                const auto& v = check.violations.front();
                throw InfeasibleError("partition '" + choice.init_file + "': coalition " +
                                      std::to_string(v.coalition) + " has " + std::to_string(v.size) +
                                      " players, allowed [" + std::to_string(v.min_size) + ", " +
                                      std::to_string(v.max_size) + "]");
            }
            break;
        }
    }

    CoalitionStructure result;
    switch (choice.algorithm) {
        case Algorithm::None:
            result = init;
            break;
        case Algorithm::SimulatedAnnealing:
            result = simulated_annealing(game, init, constraints, config);
            break;
        case Algorithm::LexiClimb:
            result = lexi_climb(game, init, constraints, config);
            break;
    }
    return SolveResult{result, MetricsReport::of(utility_profile(game, result))};
}

} // namespace kcoal
