#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "kcoal/errors.hpp"
#include "kcoal/game.hpp"
#include "kcoal/metrics.hpp"

namespace kcoal {

/// Exact procedures enumerate coalition structures, which is exponential in
/// n. The guard keeps them honest: instances above max_n throw SizeGuardError
/// instead of silently grinding. Raise it deliberately per call site.
struct OracleLimits {
    int max_n = 16;
};

/// Walks every valid coalition structure exactly once and hands the visitor
/// the assignment plus the utility profile. When all coalitions share one
/// size window the enumeration is over canonical labellings (player 0 in
/// coalition 0, each new label introduced in order), so each unordered
/// partition appears once; otherwise all labelled assignments are visited.
/// Visitor returns false to stop early.
void enumerate_partitions(const Game& game, int k, const SizeConstraints& constraints,
                          const OracleLimits& limits,
                          const std::function<bool(const CoalitionStructure&, const UtilityProfile&)>& visit);

struct OracleResult {
    CoalitionStructure structure;
    LeximinKey key;
};

/// Exhaustive optimum: maximises the egalitarian value, breaks ties by the
/// full leximin order, then by lexicographically smallest assignment vector.
OracleResult exact_max_egalitarian(const Game& game, int k, const SizeConstraints& constraints,
                                   const OracleLimits& limits = {});

/// "Does a valid structure with every utility >= delta exist?"
struct DecisionInstance {
    Game game;
    int k = 0;
    Weight delta = 0;
    SizeConstraints constraints;
};

/// First witness in enumeration order, or nullopt. Prunes branches where an
/// already-placed player can no longer reach delta even if every remaining
/// player joined it.
std::optional<CoalitionStructure> decide_egalitarian(const DecisionInstance& instance,
                                                     const OracleLimits& limits = {});

/// Reduction gadget for simple games: adds n*(k-1) universal players, each
/// valuing every original player at 1 (and nothing valuing them back). The
/// augmented game has an equal-size k-split with min utility >= delta exactly
/// when the original game has some k-split, any sizes >= 1, with min utility
/// >= delta. Throws std::invalid_argument unless the game is simple.
Game augment_universal_players(const Game& game, int k);

/// k vertex-disjoint directed cycles, cycle i of length >= max(min_lengths[i], 2).
/// Returns the cycles as vertex sequences (in traversal order) or nullopt.
std::optional<std::vector<std::vector<int>>> find_disjoint_cycles(const Game& game,
                                                                  const std::vector<int>& min_lengths,
                                                                  const OracleLimits& limits = {});

/// Decides whether the digraph splits into k parts with |part i| >= min_sizes[i]
/// and every vertex keeping at least one out-neighbour inside its own part.
/// Searches for k disjoint seed subgraphs (a long-enough cycle, or a small
/// out-degree->=1 vertex set) and grows them by absorption; the returned
/// witness is verified before it is handed back.
std::optional<CoalitionStructure> decide_outdeg1_partition(const Game& game,
                                                           const std::vector<int>& min_sizes,
                                                           const OracleLimits& limits = {});

/// For symmetric simple games: k-partition in which every vertex keeps at
/// least two same-part neighbours. Returns nullopt iff the graph has no k
/// vertex-disjoint (undirected) cycles. The absorption argument needs min
/// degree >= k + 1; when leftover vertices force the fallback merge and the
/// hypothesis fails, std::invalid_argument is thrown rather than returning a
/// structure the construction cannot vouch for.
std::optional<CoalitionStructure> symmetric_degree2_partition(const Game& game, int k,
                                                              const OracleLimits& limits = {});

} // namespace kcoal
