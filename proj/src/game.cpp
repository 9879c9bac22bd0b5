#include "kcoal/game.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace kcoal {

Game::Game(int n) : n_(n) {
    if (n < 0) throw std::invalid_argument("player count must be non-negative");
    out_.resize(static_cast<std::size_t>(n));
    in_.resize(static_cast<std::size_t>(n));
}

void Game::add_value(int from, int to, Weight w) {
    if (from < 0 || from >= n_ || to < 0 || to >= n_)
        throw std::out_of_range("player id out of range: " + std::to_string(from) + " -> " +
                                std::to_string(to));
    if (from == to)
        throw std::invalid_argument("self-valuation not allowed (player " + std::to_string(from) + ")");
    if (w < 0)
        throw std::invalid_argument("negative weight on edge " + std::to_string(from) + " -> " +
                                    std::to_string(to));
    if (w == 0) return; // absent edge and zero weight are the same thing

    auto& row = out_[static_cast<std::size_t>(from)];
    auto it = std::lower_bound(row.begin(), row.end(), to,
                               [](const OutEdge& e, int key) { return e.to < key; });
    if (it != row.end() && it->to == to)
        throw std::invalid_argument("duplicate edge " + std::to_string(from) + " -> " +
                                    std::to_string(to));
    row.insert(it, OutEdge{to, w});

    auto& col = in_[static_cast<std::size_t>(to)];
    auto jt = std::lower_bound(col.begin(), col.end(), from,
                               [](const InEdge& e, int key) { return e.from < key; });
    col.insert(jt, InEdge{from, w});
}

Weight Game::value(int from, int to) const {
    const auto& row = out_.at(static_cast<std::size_t>(from));
    auto it = std::lower_bound(row.begin(), row.end(), to,
                               [](const OutEdge& e, int key) { return e.to < key; });
    return (it != row.end() && it->to == to) ? it->weight : 0;
}

Weight Game::out_weight(int p) const {
    const auto& row = out_.at(static_cast<std::size_t>(p));
    Weight sum = 0;
    for (const auto& e : row) sum += e.weight;
    return sum;
}

std::size_t Game::edge_count() const {
    std::size_t total = 0;
    for (const auto& row : out_) total += row.size();
    return total;
}

Weight Game::total_weight() const {
    Weight sum = 0;
    for (int p = 0; p < n_; ++p) sum += out_weight(p);
    return sum;
}

bool Game::is_simple() const {
    for (const auto& row : out_)
        for (const auto& e : row)
            if (e.weight != 1) return false;
    return true;
}

bool Game::is_symmetric() const {
    for (int p = 0; p < n_; ++p)
        for (const auto& e : out_[static_cast<std::size_t>(p)])
            if (value(e.to, p) != e.weight) return false;
    return true;
}

bool CoalitionStructure::well_formed() const {
    if (k < 1) return false;
    for (int label : assignment)
        if (label < 0 || label >= k) return false;
    return true;
}

std::vector<int> CoalitionStructure::coalition_sizes() const {
    std::vector<int> sizes(static_cast<std::size_t>(k), 0);
    for (int label : assignment) ++sizes.at(static_cast<std::size_t>(label));
    return sizes;
}

std::vector<std::vector<int>> CoalitionStructure::members() const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(k));
    for (int p = 0; p < player_count(); ++p)
        out.at(static_cast<std::size_t>(assignment[static_cast<std::size_t>(p)])).push_back(p);
    return out;
}

SizeConstraints::SizeConstraints(std::vector<int> mins, std::vector<int> maxs)
    : min_sizes(std::move(mins)), max_sizes(std::move(maxs)) {
    if (min_sizes.size() != max_sizes.size())
        throw std::invalid_argument("size constraint vectors differ in length");
    if (min_sizes.empty()) throw std::invalid_argument("need at least one coalition");
    for (std::size_t c = 0; c < min_sizes.size(); ++c) {
        if (min_sizes[c] < 1)
            throw std::invalid_argument("coalition " + std::to_string(c) + " minimum size below 1");
        if (max_sizes[c] < min_sizes[c])
            throw std::invalid_argument("coalition " + std::to_string(c) + " has max size below min size");
    }
}

SizeConstraints SizeConstraints::equal_split(int n, int k) {
    if (k < 1) throw std::invalid_argument("need at least one coalition");
    if (n < k) throw std::invalid_argument("fewer players than coalitions");
    const int lo = n / k;
    const int hi = (n + k - 1) / k;
    return SizeConstraints(std::vector<int>(static_cast<std::size_t>(k), lo),
                           std::vector<int>(static_cast<std::size_t>(k), hi));
}

SizeConstraints SizeConstraints::capped(int n, int k, double epsilon) {
    if (k < 1) throw std::invalid_argument("need at least one coalition");
    if (n < k) throw std::invalid_argument("fewer players than coalitions");
    if (epsilon < 0.0) throw std::invalid_argument("epsilon must be non-negative");
    // Tiny nudge so that e.g. 20 * 1.1 == 22.000000000000004's exact cousin
    // still caps at 22 rather than dropping to 21 through binary rounding.
    int cap = static_cast<int>(static_cast<double>(n) / k * (1.0 + epsilon) + 1e-9);
    cap = std::max(1, std::min(cap, n));
    if (static_cast<long long>(cap) * k < n)
        throw std::invalid_argument("size cap too tight to host all players");
    return SizeConstraints(std::vector<int>(static_cast<std::size_t>(k), 1),
                           std::vector<int>(static_cast<std::size_t>(k), cap));
}

SizeConstraints SizeConstraints::at_least(std::vector<int> mins, int n) {
    std::vector<int> maxs(mins.size(), n);
    return SizeConstraints(std::move(mins), std::move(maxs));
}

bool SizeConstraints::feasible(int n) const {
    long long lo = 0;
    long long hi = 0;
    for (std::size_t c = 0; c < min_sizes.size(); ++c) {
        lo += min_sizes[c];
        hi += max_sizes[c];
    }
    return lo <= n && n <= hi;
}

Weight utility_of(const Game& game, const CoalitionStructure& cs, int player) {
    if (player < 0 || player >= game.player_count()) throw std::out_of_range("player id out of range");
    if (cs.player_count() != game.player_count())
        throw std::invalid_argument("structure covers a different player count than the game");
    const int home = cs.assignment[static_cast<std::size_t>(player)];
    Weight sum = 0;
    for (const auto& e : game.out_edges(player))
        if (cs.assignment[static_cast<std::size_t>(e.to)] == home) sum += e.weight;
    return sum;
}

UtilityProfile utility_profile(const Game& game, const CoalitionStructure& cs) {
    if (!cs.well_formed()) throw std::invalid_argument("malformed coalition structure");
    if (cs.player_count() != game.player_count())
        throw std::invalid_argument("structure covers a different player count than the game");
    UtilityProfile profile(static_cast<std::size_t>(game.player_count()), 0);
    for (int p = 0; p < game.player_count(); ++p)
        profile[static_cast<std::size_t>(p)] = utility_of(game, cs, p);
    return profile;
}

ValidationResult validate(const CoalitionStructure& cs, const SizeConstraints& constraints) {
    if (!cs.well_formed()) throw std::invalid_argument("malformed coalition structure");
    if (cs.k != constraints.k())
        throw std::invalid_argument("structure has " + std::to_string(cs.k) + " coalitions, constraints cover " +
                                    std::to_string(constraints.k()));
    ValidationResult result;
    const auto sizes = cs.coalition_sizes();
    for (int c = 0; c < cs.k; ++c) {
        const int s = sizes[static_cast<std::size_t>(c)];
        const int lo = constraints.min_sizes[static_cast<std::size_t>(c)];
        const int hi = constraints.max_sizes[static_cast<std::size_t>(c)];
        if (s < lo || s > hi) {
            result.ok = false;
            result.violations.push_back(SizeViolation{c, s, lo, hi});
        }
    }
    return result;
}

} // namespace kcoal
