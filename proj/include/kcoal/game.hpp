#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace kcoal {

/// Edge weights are exact 64-bit integers. Every welfare comparison in the
/// toolkit is done in integer (or exact rational) arithmetic.
using Weight = std::int64_t;

struct OutEdge {
    int to;
    Weight weight;
};

struct InEdge {
    int from;
    Weight weight;
};

/// A coalition formation instance: n players and non-negative directed
/// valuations v_i(j). A player's utility in a coalition is the sum of its
/// valuations of the other members, so absent edges behave as zeros.
///
/// Adjacency is stored both ways (sorted by neighbour index) so that scans
/// over "who do I value" and "who values me" are both cheap; incremental
/// utility updates during local search need the second direction.
class Game {
public:
    Game() = default;
    explicit Game(int n);

    int player_count() const { return n_; }

    /// Registers v_from(to) = w. Zero weights are dropped (same semantics as
    /// absent). Throws std::invalid_argument on self-valuations, negative
    /// weights or a repeated (from, to) pair, std::out_of_range on bad ids.
    void add_value(int from, int to, Weight w);

    /// v_from(to); 0 when no edge is present.
    Weight value(int from, int to) const;

    const std::vector<OutEdge>& out_edges(int p) const { return out_.at(p); }
    const std::vector<InEdge>& in_edges(int p) const { return in_.at(p); }

    int out_degree(int p) const { return static_cast<int>(out_.at(p).size()); }
    Weight out_weight(int p) const;

    std::size_t edge_count() const;
    Weight total_weight() const;

    /// True when every stored weight is exactly 1.
    bool is_simple() const;
    /// True when v_i(j) == v_j(i) for every pair.
    bool is_symmetric() const;

private:
    int n_ = 0;
    std::vector<std::vector<OutEdge>> out_;
    std::vector<std::vector<InEdge>> in_;
};

/// Assignment of every player to one of k coalitions, stored densely:
/// assignment[p] is the coalition label of player p, labels in [0, k).
struct CoalitionStructure {
    int k = 0;
    std::vector<int> assignment;

    int player_count() const { return static_cast<int>(assignment.size()); }
    bool well_formed() const;
    std::vector<int> coalition_sizes() const;
    /// Members per label, each list in increasing player order.
    std::vector<std::vector<int>> members() const;

    bool operator==(const CoalitionStructure&) const = default;
};

/// Per-coalition size window [min_sizes[c], max_sizes[c]]. Invariant
/// 1 <= min <= max is enforced at construction; empty coalitions are never
/// considered valid.
struct SizeConstraints {
    std::vector<int> min_sizes;
    std::vector<int> max_sizes;

    SizeConstraints() = default;
    SizeConstraints(std::vector<int> mins, std::vector<int> maxs);

    int k() const { return static_cast<int>(min_sizes.size()); }

    /// All sizes in [floor(n/k), ceil(n/k)]: as equal as integer division allows.
    static SizeConstraints equal_split(int n, int k);
    /// Sizes in [1, floor((n/k) * (1 + epsilon))]: the slack preset used for
    /// benchmark runs ("at most (1+eps) times the average size").
    static SizeConstraints capped(int n, int k, double epsilon);
    /// Explicit minimum sizes, maxima all n (used by decision procedures).
    static SizeConstraints at_least(std::vector<int> mins, int n);

    /// True when some split of n players into these windows exists.
    bool feasible(int n) const;
};

struct SizeViolation {
    int coalition;
    int size;
    int min_size;
    int max_size;
};

struct ValidationResult {
    bool ok = true;
    std::vector<SizeViolation> violations;
};

using UtilityProfile = std::vector<Weight>;

/// Sum of p's valuations of its coalition mates.
Weight utility_of(const Game& game, const CoalitionStructure& cs, int player);

/// All n utilities, indexed by player.
UtilityProfile utility_profile(const Game& game, const CoalitionStructure& cs);

/// Checks every coalition's size against its window. Structural problems
/// (label out of range, k mismatch) throw std::invalid_argument; size
/// violations are reported in the result, one entry per offending coalition.
ValidationResult validate(const CoalitionStructure& cs, const SizeConstraints& constraints);

} // namespace kcoal
