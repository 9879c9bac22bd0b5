#include "helpers.hpp"

#include <algorithm>

namespace helpers {

namespace {

std::vector<kcoal::Weight> sorted_utils(const kcoal::Game& g, const std::vector<EdgeSpec>& edges,
                                        const std::vector<int>& labels) {
    auto utils = edge_list_utilities(g.player_count(), edges, labels);
    std::sort(utils.begin(), utils.end());
    return utils;
}

} // namespace

BruteBest brute_best(const kcoal::Game& g, int k, const kcoal::SizeConstraints& cons) {
    const auto edges = edges_of(g);
    BruteBest best;
    for_each_labelled(g.player_count(), k, [&](const std::vector<int>& labels) {
        if (!sizes_ok(labels, cons)) return;
        auto key = sorted_utils(g, edges, labels);
        if (!best.found || std::lexicographical_compare(best.best_key.begin(), best.best_key.end(),
                                                        key.begin(), key.end())) {
            best.found = true;
            best.best_key = key;
            best.best_labels = labels;
        }
    });
    return best;
}

bool brute_decide(const kcoal::Game& g, int k, const kcoal::SizeConstraints& cons, kcoal::Weight delta) {
    const auto edges = edges_of(g);
    bool yes = false;
    for_each_labelled(g.player_count(), k, [&](const std::vector<int>& labels) {
        if (yes || !sizes_ok(labels, cons)) return;
        auto utils = edge_list_utilities(g.player_count(), edges, labels);
        if (*std::min_element(utils.begin(), utils.end()) >= delta) yes = true;
    });
    return yes;
}

kcoal::Game random_digraph(int n, double edge_prob, std::mt19937_64& rng) {
    kcoal::Game g(n);
    std::bernoulli_distribution coin(edge_prob);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && coin(rng)) g.add_value(i, j, 1);
    return g;
}

kcoal::Game random_outdeg_digraph(int n, int lo, int hi, std::mt19937_64& rng) {
    kcoal::Game g(n);
    std::uniform_int_distribution<int> deg(lo, hi);
    for (int i = 0; i < n; ++i) {
        std::vector<int> targets;
        targets.reserve(static_cast<std::size_t>(n) - 1);
        for (int j = 0; j < n; ++j)
            if (j != i) targets.push_back(j);
        std::shuffle(targets.begin(), targets.end(), rng);
        const int d = std::min(deg(rng), n - 1);
        for (int r = 0; r < d; ++r) g.add_value(i, targets[static_cast<std::size_t>(r)], 1);
    }
    return g;
}

kcoal::Game random_tree(int n, std::mt19937_64& rng) {
    kcoal::Game g(n);
    for (int v = 1; v < n; ++v) {
        std::uniform_int_distribution<int> pick(0, v - 1);
        const int parent = pick(rng);
        g.add_value(v, parent, 1);
        g.add_value(parent, v, 1);
    }
    return g;
}

kcoal::Game random_symmetric_min_degree(int n, double edge_prob, int min_degree, std::mt19937_64& rng) {
    std::vector<std::vector<bool>> adj(static_cast<std::size_t>(n),
                                       std::vector<bool>(static_cast<std::size_t>(n), false));
    std::bernoulli_distribution coin(edge_prob);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng)) adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                adj[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = true;
    auto degree = [&](int v) {
        int d = 0;
        for (int u = 0; u < n; ++u)
            if (adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)]) ++d;
        return d;
    };
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int v = 0; v < n; ++v) {
        while (degree(v) < min_degree) {
            const int u = pick(rng);
            if (u == v || adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)]) continue;
            adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] =
                adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = true;
        }
    }
    kcoal::Game g(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) g.add_value(i, j, 1);
    return g;
}

} // namespace helpers
