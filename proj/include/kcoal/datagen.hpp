#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "kcoal/game.hpp"

namespace kcoal {

/// Random digraph where every player points at exactly d distinct others.
/// weighted draws rank weights d, d-1, ..., 1 in draw order (first pick is
/// the most valued); unweighted gives every edge weight 1.
struct GenSpec {
    int n = 0;
    int d = 0;
    bool weighted = false;
    std::uint64_t seed = 1;
};

Game gen_uniform_outdegree(const GenSpec& spec);

/// Circulant digraph: i points at i+1, ..., i+k (mod n), all weight 1.
/// Requires 1 <= k < n and k | n (the companion partitions need it).
Game gen_circulant(int n, int k);

/// The two canonical splits of circulant(n, k) into k parts of size n/k:
/// by residue class (every vertex keeps exactly one out-neighbour, its +k
/// step) and by contiguous blocks (vertices near a block border lose out-
/// neighbours to the next block).
CoalitionStructure interleaved_cycles_partition(int n, int k);
CoalitionStructure contiguous_partition(int n, int k);

/// Friendship survey: "student, friend1, friend2, ..." per line, friends in
/// preference order, at most max_friends of them. Students appearing only as
/// friends become players with no outgoing valuations. weighted assigns rank
/// weights max_friends, max_friends-1, ...; otherwise all 1.
struct FriendCsv {
    Game game;
    std::vector<std::string> ids; // index -> original id, first-appearance order
};

FriendCsv ingest_friend_csv(std::istream& in, const std::string& display_name, int max_friends,
                            bool weighted);
FriendCsv ingest_friend_csv_file(const std::string& path, int max_friends, bool weighted);

} // namespace kcoal
