#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "kcoal/errors.hpp"
#include "kcoal/game.hpp"

namespace kcoal {

/// A game plus the suggested coalition count from the file header. k_hint of
/// 0 means "no suggestion"; solvers require an explicit k in that case.
struct Instance {
    Game game;
    int k_hint = 0;
};

// Edge-list format:
//   # comment lines anywhere
//   n k_hint
//   i j w        (0-based ids; "i j" alone means weight 1)
// Parse failures throw ParseError carrying the display name and line number.
Instance read_edge_list(std::istream& in, const std::string& display_name);
Instance read_edge_list_file(const std::string& path);

/// Writes the header comments (already without the leading "# "), the "n k"
/// line and all edges sorted by (from, to). Games whose weights are all 1 are
/// written without the weight column, so unweighted files round-trip exactly.
void write_edge_list(std::ostream& out, const Game& game, int k_hint,
                     const std::vector<std::string>& comments = {});
void write_edge_list_file(const std::string& path, const Game& game, int k_hint,
                          const std::vector<std::string>& comments = {});

// Partition format: one coalition label per line, line p holds player p's
// label. k is inferred as max label + 1 unless the caller fixes it later.
// expected_n < 0 skips the length check.
CoalitionStructure read_partition(std::istream& in, const std::string& display_name, int expected_n);
CoalitionStructure read_partition_file(const std::string& path, int expected_n);

void write_partition(std::ostream& out, const CoalitionStructure& cs);
void write_partition_file(const std::string& path, const CoalitionStructure& cs);

/// "key = value" per line, '#' comments, blank lines ignored. Duplicate keys
/// are an error. Used for solver config files.
std::map<std::string, std::string> read_key_values(std::istream& in, const std::string& display_name);
std::map<std::string, std::string> read_key_values_file(const std::string& path);

} // namespace kcoal
