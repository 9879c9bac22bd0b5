#pragma once

// Shared scaffolding for the test binaries. The brute-force routines here are
// deliberately written against the raw edge list / label vector, not against
// the library's incremental machinery, so they can serve as independent
// referees for it.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "kcoal/game.hpp"

namespace helpers {

struct EdgeSpec {
    int from;
    int to;
    kcoal::Weight w;
};

inline kcoal::Game make_game(int n, const std::vector<EdgeSpec>& edges) {
    kcoal::Game g(n);
    for (const auto& e : edges) g.add_value(e.from, e.to, e.w);
    return g;
}

// Utilities straight from the edge list: sum weights whose endpoints share a
// label. No adjacency structures involved.
inline std::vector<kcoal::Weight> edge_list_utilities(int n, const std::vector<EdgeSpec>& edges,
                                                      const std::vector<int>& labels) {
    std::vector<kcoal::Weight> utils(static_cast<std::size_t>(n), 0);
    for (const auto& e : edges)
        if (labels[static_cast<std::size_t>(e.from)] == labels[static_cast<std::size_t>(e.to)])
            utils[static_cast<std::size_t>(e.from)] += e.w;
    return utils;
}

inline std::vector<EdgeSpec> edges_of(const kcoal::Game& g) {
    std::vector<EdgeSpec> out;
    for (int p = 0; p < g.player_count(); ++p)
        for (const auto& e : g.out_edges(p)) out.push_back(EdgeSpec{p, e.to, e.weight});
    return out;
}

// Every labelled assignment in odometer order. Used to referee the oracle's
// pruned enumeration with something too dumb to be wrong.
template <class Fn>
void for_each_labelled(int n, int k, Fn&& fn) {
    std::vector<int> labels(static_cast<std::size_t>(n), 0);
    for (;;) {
        fn(const_cast<const std::vector<int>&>(labels));
        int i = n - 1;
        while (i >= 0 && labels[static_cast<std::size_t>(i)] == k - 1) {
            labels[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) return;
        ++labels[static_cast<std::size_t>(i)];
    }
}

inline bool sizes_ok(const std::vector<int>& labels, const kcoal::SizeConstraints& cons) {
    std::vector<int> sizes(static_cast<std::size_t>(cons.k()), 0);
    for (int l : labels) ++sizes[static_cast<std::size_t>(l)];
    for (int c = 0; c < cons.k(); ++c) {
        if (sizes[static_cast<std::size_t>(c)] < cons.min_sizes[static_cast<std::size_t>(c)] ||
            sizes[static_cast<std::size_t>(c)] > cons.max_sizes[static_cast<std::size_t>(c)])
            return false;
    }
    return true;
}

struct BruteBest {
    bool found = false;
    std::vector<kcoal::Weight> best_key; // sorted ascending
    std::vector<int> best_labels;        // lexicographically smallest achiever
};

// Exhaustive leximin optimum over all labelled assignments within the size
// windows. Exponential; keep n small.
BruteBest brute_best(const kcoal::Game& g, int k, const kcoal::SizeConstraints& cons);

// Exhaustive decision: any valid assignment with min utility >= delta?
bool brute_decide(const kcoal::Game& g, int k, const kcoal::SizeConstraints& cons, kcoal::Weight delta);

// Random simple digraph with the edge set drawn per ordered pair. Uses the
// standard library generator directly, independent of the project's wrapper.
kcoal::Game random_digraph(int n, double edge_prob, std::mt19937_64& rng);

// Random digraph where every vertex gets between lo and hi distinct targets.
kcoal::Game random_outdeg_digraph(int n, int lo, int hi, std::mt19937_64& rng);

// Random labelled tree on n vertices as a symmetric unit-weight game.
kcoal::Game random_tree(int n, std::mt19937_64& rng);

// Random symmetric unit-weight game, then extra edges until every vertex has
// degree >= min_degree.
kcoal::Game random_symmetric_min_degree(int n, double edge_prob, int min_degree, std::mt19937_64& rng);

inline std::string temp_path(const std::string& name) {
    static std::uint64_t counter = 0;
    const auto dir = std::filesystem::temp_directory_path() / "kcoal-tests";
    std::filesystem::create_directories(dir);
    return (dir / (std::to_string(++counter) + "-" + name)).string();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

} // namespace helpers
