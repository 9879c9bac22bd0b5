#include "kcoal/io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace kcoal {

namespace {

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool skippable(const std::string& line) {
    const std::string t = strip(line);
    return t.empty() || t[0] == '#';
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open file");
    return in;
}

} // namespace

Instance read_edge_list(std::istream& in, const std::string& display_name) {
    std::string line;
    int line_no = 0;
    int n = -1;
    int k_hint = 0;

    // Header: first non-comment line is "n k_hint".
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        std::istringstream hs(line);
        if (!(hs >> n >> k_hint))
            throw ParseError(display_name, line_no, "expected header 'n k'");
        std::string rest;
        if (hs >> rest) throw ParseError(display_name, line_no, "trailing tokens after header");
        if (n < 0) throw ParseError(display_name, line_no, "negative player count");
        if (k_hint < 0) throw ParseError(display_name, line_no, "negative coalition count");
        break;
    }
    if (n < 0) throw ParseError(display_name, line_no, "missing header line");

    Instance inst{Game(n), k_hint};
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        std::istringstream es(line);
        long long i = 0;
        long long j = 0;
        long long w = 1;
        if (!(es >> i >> j)) throw ParseError(display_name, line_no, "expected 'i j [w]'");
        if (!(es >> w)) w = 1; // weight column optional, defaults to 1
        std::string rest;
        if (es.clear(), es >> rest) throw ParseError(display_name, line_no, "trailing tokens after edge");
        if (i < 0 || i >= n || j < 0 || j >= n)
            throw ParseError(display_name, line_no, "player id out of range");
        try {
            inst.game.add_value(static_cast<int>(i), static_cast<int>(j), w);
        } catch (const std::exception& ex) {
            throw ParseError(display_name, line_no, ex.what());
        }
    }
    return inst;
}

Instance read_edge_list_file(const std::string& path) {
    auto in = open_or_throw(path);
    return read_edge_list(in, path);
}

void write_edge_list(std::ostream& out, const Game& game, int k_hint,
                     const std::vector<std::string>& comments) {
    for (const auto& c : comments) out << "# " << c << "\n";
    out << game.player_count() << " " << k_hint << "\n";
    const bool simple = game.is_simple();
    for (int p = 0; p < game.player_count(); ++p) {
        for (const auto& e : game.out_edges(p)) { // already sorted by target
            out << p << " " << e.to;
            if (!simple) out << " " << e.weight;
            out << "\n";
        }
    }
}

void write_edge_list_file(const std::string& path, const Game& game, int k_hint,
                          const std::vector<std::string>& comments) {
    std::ofstream out(path);
    if (!out) throw ParseError(path, 0, "cannot open file for writing");
    write_edge_list(out, game, k_hint, comments);
}

CoalitionStructure read_partition(std::istream& in, const std::string& display_name, int expected_n) {
    CoalitionStructure cs;
    std::string line;
    int line_no = 0;
    int max_label = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        std::istringstream ls(line);
        int label = 0;
        if (!(ls >> label)) throw ParseError(display_name, line_no, "expected a coalition label");
        std::string rest;
        if (ls >> rest) throw ParseError(display_name, line_no, "trailing tokens after label");
        if (label < 0) throw ParseError(display_name, line_no, "negative coalition label");
        cs.assignment.push_back(label);
        max_label = std::max(max_label, label);
    }
    if (expected_n >= 0 && static_cast<int>(cs.assignment.size()) != expected_n)
        throw ParseError(display_name, line_no,
                         "partition lists " + std::to_string(cs.assignment.size()) + " players, expected " +
                             std::to_string(expected_n));
    cs.k = max_label + 1;
    return cs;
}

CoalitionStructure read_partition_file(const std::string& path, int expected_n) {
    auto in = open_or_throw(path);
    return read_partition(in, path, expected_n);
}

void write_partition(std::ostream& out, const CoalitionStructure& cs) {
    for (int label : cs.assignment) out << label << "\n";
}

void write_partition_file(const std::string& path, const CoalitionStructure& cs) {
    std::ofstream out(path);
    if (!out) throw ParseError(path, 0, "cannot open file for writing");
    write_partition(out, cs);
}

std::map<std::string, std::string> read_key_values(std::istream& in, const std::string& display_name) {
    std::map<std::string, std::string> kv;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(display_name, line_no, "expected 'key = value'");
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        if (key.empty()) throw ParseError(display_name, line_no, "empty key");
        if (value.empty()) throw ParseError(display_name, line_no, "empty value for key '" + key + "'");
        if (!kv.emplace(key, value).second)
            throw ParseError(display_name, line_no, "duplicate key '" + key + "'");
    }
    return kv;
}

std::map<std::string, std::string> read_key_values_file(const std::string& path) {
    auto in = open_or_throw(path);
    return read_key_values(in, path);
}

} // namespace kcoal
