#include "kcoal/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace kcoal {

namespace {

void check_guard(const Game& game, const OracleLimits& limits, const char* what) {
    if (game.player_count() > limits.max_n)
        throw SizeGuardError(std::string(what) + ": instance has " + std::to_string(game.player_count()) +
                             " players, exact-procedure cap is " + std::to_string(limits.max_n) +
                             " (raise OracleLimits::max_n deliberately if this is intended)");
}

// Depth-first walk over valid coalition structures. Players are placed in
// index order; per-branch bookkeeping keeps utilities and size quotas
// incremental. When every coalition shares one size window, labels are
// restricted-growth (player 0 opens coalition 0, a new label may only follow
// all smaller ones), so each unordered partition shows up exactly once.
//
// A non-negative target (delta mode) adds two prunes for decision queries:
//  - an assigned player whose utility plus remaining reachable weight is
//    below the target can never recover, and
//  - a coalition that just reached its maximum size must already carry all
//    its members past the target.
class PartitionWalker {
public:
    PartitionWalker(const Game& game, int k, const SizeConstraints& constraints, Weight target,
                    bool use_target)
        : game_(game),
          n_(game.player_count()),
          k_(k),
          cons_(constraints),
          target_(target),
          use_target_(use_target) {
        canonical_ = true;
        for (int c = 1; c < k_; ++c) {
            if (cons_.min_sizes[static_cast<std::size_t>(c)] != cons_.min_sizes[0] ||
                cons_.max_sizes[static_cast<std::size_t>(c)] != cons_.max_sizes[0]) {
                canonical_ = false;
                break;
            }
        }
        cs_.k = k_;
        cs_.assignment.assign(static_cast<std::size_t>(n_), -1);
        sizes_.assign(static_cast<std::size_t>(k_), 0);
        utils_.assign(static_cast<std::size_t>(n_), 0);
        remaining_out_.assign(static_cast<std::size_t>(n_), 0);
        for (int p = 0; p < n_; ++p) remaining_out_[static_cast<std::size_t>(p)] = game_.out_weight(p);
        deficit_ = 0;
        for (int c = 0; c < k_; ++c) deficit_ += cons_.min_sizes[static_cast<std::size_t>(c)];
    }

    // Visitor gets live buffers, valid only during the call; returns false to
    // stop the whole walk.
    void run(const std::function<bool(const CoalitionStructure&, const UtilityProfile&)>& visit) {
        visit_ = &visit;
        stopped_ = false;
        recurse(0, 0);
        visit_ = nullptr;
    }

private:
    void recurse(int p, int used) {
        if (p == n_) {
            if (deficit_ == 0 && !(*visit_)(cs_, utils_)) stopped_ = true;
            return;
        }
        const int open_limit = canonical_ ? std::min(used + 1, k_) : k_;
        const int remaining_after = n_ - p - 1;
        for (int b = 0; b < open_limit; ++b) {
            const auto bc = static_cast<std::size_t>(b);
            if (sizes_[bc] >= cons_.max_sizes[bc]) continue;
            const int deficit_next = deficit_ - (sizes_[bc] < cons_.min_sizes[bc] ? 1 : 0);
            if (deficit_next > remaining_after) continue; // quotas can no longer be met
            place(p, b);
            if (dead_ == 0) recurse(p + 1, (canonical_ && b == used) ? used + 1 : used);
            unplace(p, b);
            if (stopped_) return;
        }
    }

    void place(int p, int b) {
        const auto pc = static_cast<std::size_t>(p);
        const auto bc = static_cast<std::size_t>(b);
        for (const auto& e : game_.in_edges(p)) {
            const auto ic = static_cast<std::size_t>(e.from);
            const bool assigned = e.from < p;
            const bool was_dead = assigned && below_target(ic);
            remaining_out_[ic] -= e.weight;
            if (assigned && cs_.assignment[ic] == b) utils_[ic] += e.weight;
            if (assigned) dead_ += (below_target(ic) ? 1 : 0) - (was_dead ? 1 : 0);
        }
        Weight u = 0;
        for (const auto& e : game_.out_edges(p))
            if (e.to < p && cs_.assignment[static_cast<std::size_t>(e.to)] == b) u += e.weight;
        utils_[pc] = u;
        if (sizes_[bc] < cons_.min_sizes[bc]) --deficit_;
        ++sizes_[bc];
        cs_.assignment[pc] = b;
        if (use_target_) {
            if (below_target(pc)) ++dead_;
            if (sizes_[bc] == cons_.max_sizes[bc] && closed_block_violates(p, b)) ++dead_;
        }
    }

    void unplace(int p, int b) {
        const auto pc = static_cast<std::size_t>(p);
        const auto bc = static_cast<std::size_t>(b);
        if (use_target_) {
            if (sizes_[bc] == cons_.max_sizes[bc] && closed_block_violates(p, b)) --dead_;
            if (below_target(pc)) --dead_;
        }
        cs_.assignment[pc] = -1;
        --sizes_[bc];
        if (sizes_[bc] < cons_.min_sizes[bc]) ++deficit_;
        utils_[pc] = 0;
        for (const auto& e : game_.in_edges(p)) {
            const auto ic = static_cast<std::size_t>(e.from);
            const bool assigned = e.from < p;
            const bool was_dead = assigned && below_target(ic);
            remaining_out_[ic] += e.weight;
            if (assigned && cs_.assignment[ic] == b) utils_[ic] -= e.weight;
            if (assigned) dead_ += (below_target(ic) ? 1 : 0) - (was_dead ? 1 : 0);
        }
    }

    bool below_target(std::size_t player) const {
        return use_target_ && utils_[player] + remaining_out_[player] < target_;
    }

    // Members of a coalition that just hit its max size can never gain more.
    bool closed_block_violates(int placed_up_to, int b) const {
        for (int q = 0; q <= placed_up_to; ++q)
            if (cs_.assignment[static_cast<std::size_t>(q)] == b && utils_[static_cast<std::size_t>(q)] < target_)
                return true;
        return false;
    }

    const Game& game_;
    int n_;
    int k_;
    const SizeConstraints& cons_;
    Weight target_;
    bool use_target_;
    bool canonical_ = false;

    CoalitionStructure cs_;
    std::vector<int> sizes_;
    UtilityProfile utils_;
    std::vector<Weight> remaining_out_;
    int deficit_ = 0;
    int dead_ = 0;
    bool stopped_ = false;
    const std::function<bool(const CoalitionStructure&, const UtilityProfile&)>* visit_ = nullptr;
};

void check_enumeration_inputs(const Game& game, int k, const SizeConstraints& constraints) {
    if (k < 1) throw std::invalid_argument("need at least one coalition");
    if (constraints.k() != k) throw std::invalid_argument("constraints cover a different coalition count");
    if (!constraints.feasible(game.player_count()))
        throw InfeasibleError("no split of " + std::to_string(game.player_count()) +
                              " players fits the size windows");
}

// --- disjoint cycle packing -------------------------------------------------

// Finds vertex-disjoint cycles slot by slot, backtracking across slots. Each
// cycle is discovered once, anchored at its minimum vertex; in undirected
// mode (symmetric games) the two traversal orientations collapse to one and
// lengths below 3 are never requested.
class CyclePacker {
public:
    CyclePacker(const Game& game, std::vector<int> need, bool undirected)
        : game_(game), n_(game.player_count()), need_(std::move(need)), undirected_(undirected) {
        used_.assign(static_cast<std::size_t>(n_), 0);
        on_path_.assign(static_cast<std::size_t>(n_), 0);
    }

    std::optional<std::vector<std::vector<int>>> pack() {
        int total_need = 0;
        for (int len : need_) total_need += len;
        if (total_need > n_) return std::nullopt;
        if (solve_slot(0)) return picked_;
        return std::nullopt;
    }

private:
    bool solve_slot(std::size_t slot) {
        if (slot == need_.size()) return true;
        for (int start = 0; start < n_; ++start) {
            if (used_[static_cast<std::size_t>(start)]) continue;
            path_.clear();
            path_.push_back(start);
            on_path_[static_cast<std::size_t>(start)] = 1;
            const bool done = dfs(slot, start);
            on_path_[static_cast<std::size_t>(start)] = 0;
            if (done) return true;
        }
        return false;
    }

    bool dfs(std::size_t slot, int start) {
        const int v = path_.back();
        for (const auto& e : game_.out_edges(v)) {
            const int u = e.to;
            if (used_[static_cast<std::size_t>(u)]) continue;
            if (u == start && static_cast<int>(path_.size()) >= need_[slot]) {
                // Undirected cycles are seen twice (both orientations); keep
                // the one whose second vertex is below its last.
                if (!(undirected_ && path_[1] > path_.back())) {
                    for (int x : path_) used_[static_cast<std::size_t>(x)] = 1;
                    picked_.push_back(path_);
                    // Deeper slots reuse the path scratch; stash ours.
                    auto saved_path = path_;
                    const bool done = solve_slot(slot + 1);
                    path_ = std::move(saved_path);
                    if (done) return true;
                    picked_.pop_back();
                    for (int x : path_) used_[static_cast<std::size_t>(x)] = 0;
                }
            }
            if (u > start && !on_path_[static_cast<std::size_t>(u)]) {
                path_.push_back(u);
                on_path_[static_cast<std::size_t>(u)] = 1;
                if (dfs(slot, start)) return true;
                on_path_[static_cast<std::size_t>(u)] = 0;
                path_.pop_back();
            }
        }
        return false;
    }

    const Game& game_;
    int n_;
    std::vector<int> need_;
    bool undirected_;
    std::vector<char> used_;
    std::vector<char> on_path_;
    std::vector<int> path_;
    std::vector<std::vector<int>> picked_;
};

bool min_internal_outdeg_positive(const Game& game, const std::vector<int>& members,
                                  const std::vector<char>& in_set) {
    for (int v : members) {
        bool ok = false;
        for (const auto& e : game.out_edges(v)) {
            if (in_set[static_cast<std::size_t>(e.to)]) {
                ok = true;
                break;
            }
        }
        if (!ok) return false;
    }
    return true;
}

} // namespace

void enumerate_partitions(const Game& game, int k, const SizeConstraints& constraints,
                          const OracleLimits& limits,
                          const std::function<bool(const CoalitionStructure&, const UtilityProfile&)>& visit) {
    check_guard(game, limits, "enumerate_partitions");
    check_enumeration_inputs(game, k, constraints);
    PartitionWalker walker(game, k, constraints, 0, false);
    walker.run(visit);
}

OracleResult exact_max_egalitarian(const Game& game, int k, const SizeConstraints& constraints,
                                   const OracleLimits& limits) {
    check_guard(game, limits, "exact_max_egalitarian");
    check_enumeration_inputs(game, k, constraints);

    bool have_best = false;
    OracleResult best;
    PartitionWalker walker(game, k, constraints, 0, false);
    walker.run([&](const CoalitionStructure& cs, const UtilityProfile& profile) {
        LeximinKey key = leximin_key(profile);
        // Enumeration order is lexicographic in the assignment vector, so on
        // leximin ties the first hit is already the smallest assignment.
        if (!have_best || leximin_better(key, best.key)) {
            best.structure = cs;
            best.key = std::move(key);
            have_best = true;
        }
        return true;
    });
    if (!have_best)
        throw InfeasibleError("no valid coalition structure exists for these constraints");
    return best;
}

std::optional<CoalitionStructure> decide_egalitarian(const DecisionInstance& instance,
                                                     const OracleLimits& limits) {
    check_guard(instance.game, limits, "decide_egalitarian");
    check_enumeration_inputs(instance.game, instance.k, instance.constraints);

    std::optional<CoalitionStructure> witness;
    PartitionWalker walker(instance.game, instance.k, instance.constraints, instance.delta,
                           instance.delta > 0);
    walker.run([&](const CoalitionStructure& cs, const UtilityProfile& profile) {
        if (egalitarian(profile) >= instance.delta) {
            witness = cs;
            return false;
        }
        return true;
    });
    return witness;
}

Game augment_universal_players(const Game& game, int k) {
    if (k < 1) throw std::invalid_argument("need at least one coalition");
    if (!game.is_simple())
        throw std::invalid_argument("universal-player augmentation is defined for unit-weight games");
    const int n = game.player_count();
    Game out(n * k);
    for (int p = 0; p < n; ++p)
        for (const auto& e : game.out_edges(p)) out.add_value(p, e.to, e.weight);
    // The n*(k-1) added players value every original player at 1 and are
    // valued by nobody, so they soak up space without disturbing anyone else.
    for (int q = n; q < n * k; ++q)
        for (int p = 0; p < n; ++p) out.add_value(q, p, 1);
    return out;
}

std::optional<std::vector<std::vector<int>>> find_disjoint_cycles(const Game& game,
                                                                  const std::vector<int>& min_lengths,
                                                                  const OracleLimits& limits) {
    check_guard(game, limits, "find_disjoint_cycles");
    if (min_lengths.empty()) throw std::invalid_argument("need at least one cycle slot");
    std::vector<int> need(min_lengths.size());
    for (std::size_t i = 0; i < min_lengths.size(); ++i) need[i] = std::max(min_lengths[i], 2);
    CyclePacker packer(game, std::move(need), /*undirected=*/false);
    return packer.pack();
}

namespace {

// Seed search for the fixed-minimum-sizes out-degree-1 decision. A part that
// keeps out-degree >= 1 always contains a cycle; if all its cycles are shorter
// than its size quota m, it contains an out-degree->=1 vertex set of size in
// [m, 2m-2]. So packing one such seed per part is equivalent to the partition
// existing, and any packing grows into a witness by absorption.
class OutdegSeedSearch {
public:
    OutdegSeedSearch(const Game& game, const std::vector<int>& min_sizes)
        : game_(game), n_(game.player_count()), m_(min_sizes) {
        used_.assign(static_cast<std::size_t>(n_), 0);
        part_of_.assign(static_cast<std::size_t>(n_), -1);
        tail_need_.assign(m_.size() + 1, 0);
        for (std::size_t i = m_.size(); i-- > 0;)
            tail_need_[i] = tail_need_[i + 1] + std::max(m_[i], 2);
    }

    bool search() { return slot(0, 0); }

    const std::vector<int>& part_of() const { return part_of_; }

private:
    bool slot(std::size_t i, int used_count) {
        if (i == m_.size()) return true;
        if (used_count + tail_need_[i] > n_) return false;

        // Cycles of length >= max(m_i, 2) first.
        const int cycle_need = std::max(m_[i], 2);
        for (int start = 0; start < n_; ++start) {
            if (used_[static_cast<std::size_t>(start)]) continue;
            path_.clear();
            path_.push_back(start);
            on_path_.assign(static_cast<std::size_t>(n_), 0);
            on_path_[static_cast<std::size_t>(start)] = 1;
            if (cycle_dfs(i, start, cycle_need, used_count)) return true;
        }

        // Small out-degree->=1 vertex sets: only needed when the window
        // [m_i, 2 m_i - 2] reaches past plain cycles, i.e. m_i >= 3.
        if (m_[i] >= 3) {
            subset_.clear();
            if (subset_dfs(i, 0, used_count)) return true;
        }
        return false;
    }

    bool cycle_dfs(std::size_t i, int start, int need, int used_count) {
        const int v = path_.back();
        for (const auto& e : game_.out_edges(v)) {
            const int u = e.to;
            if (used_[static_cast<std::size_t>(u)]) continue;
            if (u == start && static_cast<int>(path_.size()) >= need) {
                if (used_count + static_cast<int>(path_.size()) + tail_need_[i + 1] <= n_) {
                    if (commit(i, path_, used_count)) return true;
                }
            }
            if (u > start && !on_path_[static_cast<std::size_t>(u)]) {
                path_.push_back(u);
                on_path_[static_cast<std::size_t>(u)] = 1;
                if (cycle_dfs(i, start, need, used_count)) return true;
                on_path_[static_cast<std::size_t>(u)] = 0;
                path_.pop_back();
            }
        }
        return false;
    }

    bool subset_dfs(std::size_t i, int from, int used_count) {
        const int size = static_cast<int>(subset_.size());
        if (size >= m_[i] && used_count + size + tail_need_[i + 1] <= n_) {
            std::vector<char> in_set(static_cast<std::size_t>(n_), 0);
            for (int v : subset_) in_set[static_cast<std::size_t>(v)] = 1;
            if (min_internal_outdeg_positive(game_, subset_, in_set)) {
                if (commit(i, subset_, used_count)) return true;
            }
        }
        if (size == 2 * m_[i] - 2) return false;
        for (int v = from; v < n_; ++v) {
            if (used_[static_cast<std::size_t>(v)]) continue;
            subset_.push_back(v);
            if (subset_dfs(i, v + 1, used_count)) return true;
            subset_.pop_back();
        }
        return false;
    }

    bool commit(std::size_t i, const std::vector<int>& seed, int used_count) {
        for (int v : seed) {
            used_[static_cast<std::size_t>(v)] = 1;
            part_of_[static_cast<std::size_t>(v)] = static_cast<int>(i);
        }
        // Re-entering the slot search reuses the scratch buffers, so stash ours.
        auto saved_path = path_;
        auto saved_subset = subset_;
        auto saved_on_path = on_path_;
        const bool done = slot(i + 1, used_count + static_cast<int>(seed.size()));
        path_ = std::move(saved_path);
        subset_ = std::move(saved_subset);
        on_path_ = std::move(saved_on_path);
        if (done) return true;
        for (int v : seed) {
            used_[static_cast<std::size_t>(v)] = 0;
            part_of_[static_cast<std::size_t>(v)] = -1;
        }
        return false;
    }

    const Game& game_;
    int n_;
    const std::vector<int>& m_;
    std::vector<int> tail_need_;
    std::vector<char> used_;
    std::vector<int> part_of_;
    std::vector<char> on_path_;
    std::vector<int> path_;
    std::vector<int> subset_;
};

} // namespace

std::optional<CoalitionStructure> decide_outdeg1_partition(const Game& game,
                                                           const std::vector<int>& min_sizes,
                                                           const OracleLimits& limits) {
    check_guard(game, limits, "decide_outdeg1_partition");
    const int k = static_cast<int>(min_sizes.size());
    if (k < 1) throw std::invalid_argument("need at least one part");
    for (int m : min_sizes)
        if (m < 1) throw std::invalid_argument("part size quotas must be at least 1");

    const int n = game.player_count();
    for (int v = 0; v < n; ++v)
        if (game.out_degree(v) == 0) return std::nullopt; // v fails in every part

    OutdegSeedSearch search(game, min_sizes);
    if (!search.search()) return std::nullopt;

    // Grow the seeds: a vertex with an out-neighbour inside a part may join
    // it (lowest vertex, then lowest part, rescanning after every change).
    std::vector<int> part_of = search.part_of();
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < n && !changed; ++v) {
            if (part_of[static_cast<std::size_t>(v)] != -1) continue;
            for (int p = 0; p < k && !changed; ++p) {
                for (const auto& e : game.out_edges(v)) {
                    if (part_of[static_cast<std::size_t>(e.to)] == p) {
                        part_of[static_cast<std::size_t>(v)] = p;
                        changed = true;
                        break;
                    }
                }
            }
        }
    }
    // Whatever is left only points at other leftovers; it rides along with
    // part 0 and keeps its out-neighbours.
    for (int v = 0; v < n; ++v)
        if (part_of[static_cast<std::size_t>(v)] == -1) part_of[static_cast<std::size_t>(v)] = 0;

    CoalitionStructure cs{k, part_of};
    const auto sizes = cs.coalition_sizes();
    for (int p = 0; p < k; ++p)
        if (sizes[static_cast<std::size_t>(p)] < min_sizes[static_cast<std::size_t>(p)])
            throw std::logic_error("out-degree partition construction broke a size quota");
    for (int v = 0; v < n; ++v)
        if (utility_of(game, cs, v) < 1)
            throw std::logic_error("out-degree partition construction stranded a vertex");
    return cs;
}

std::optional<CoalitionStructure> symmetric_degree2_partition(const Game& game, int k,
                                                              const OracleLimits& limits) {
    check_guard(game, limits, "symmetric_degree2_partition");
    if (k < 1) throw std::invalid_argument("need at least one part");
    if (!game.is_simple() || !game.is_symmetric())
        throw std::invalid_argument("construction is defined for symmetric unit-weight games");

    const int n = game.player_count();
    CyclePacker packer(game, std::vector<int>(static_cast<std::size_t>(k), 3), /*undirected=*/true);
    auto cycles = packer.pack();
    if (!cycles) return std::nullopt;

    std::vector<int> part_of(static_cast<std::size_t>(n), -1);
    for (int p = 0; p < k; ++p)
        for (int v : (*cycles)[static_cast<std::size_t>(p)]) part_of[static_cast<std::size_t>(v)] = p;

    // Absorb any outside vertex with two neighbours already inside a part.
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < n && !changed; ++v) {
            if (part_of[static_cast<std::size_t>(v)] != -1) continue;
            for (int p = 0; p < k && !changed; ++p) {
                int inside = 0;
                for (const auto& e : game.out_edges(v))
                    if (part_of[static_cast<std::size_t>(e.to)] == p) ++inside;
                if (inside >= 2) {
                    part_of[static_cast<std::size_t>(v)] = p;
                    changed = true;
                }
            }
        }
    }

    bool leftovers = false;
    for (int v = 0; v < n; ++v) leftovers = leftovers || part_of[static_cast<std::size_t>(v)] == -1;
    if (leftovers) {
        // The merge step is only safe when every vertex has degree >= k + 1:
        // a leftover has at most one neighbour in each other part, leaving at
        // least two among (part 0 + leftovers).
        int min_degree = n;
        for (int v = 0; v < n; ++v) min_degree = std::min(min_degree, game.out_degree(v));
        if (min_degree <= k)
            throw std::invalid_argument(
                "minimum degree " + std::to_string(min_degree) + " is at most the part count " +
                std::to_string(k) + "; the leftover merge step needs degree >= k + 1");
        for (int v = 0; v < n; ++v)
            if (part_of[static_cast<std::size_t>(v)] == -1) part_of[static_cast<std::size_t>(v)] = 0;
    }

    CoalitionStructure cs{k, part_of};
    for (int v = 0; v < n; ++v)
        if (utility_of(game, cs, v) < 2)
            throw std::logic_error("degree-2 construction left a vertex under-connected");
    return cs;
}

} // namespace kcoal
