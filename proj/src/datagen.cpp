#include "kcoal/datagen.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "kcoal/errors.hpp"
#include "kcoal/rng.hpp"

namespace kcoal {

Game gen_uniform_outdegree(const GenSpec& spec) {
    if (spec.n < 2) throw std::invalid_argument("need at least two players");
    if (spec.d < 1 || spec.d >= spec.n)
        throw std::invalid_argument("out-degree must satisfy 1 <= d <= n - 1");

    Game game(spec.n);
    Rng rng(spec.seed);
    std::vector<int> candidates(static_cast<std::size_t>(spec.n - 1));
    for (int p = 0; p < spec.n; ++p) {
        int at = 0;
        for (int q = 0; q < spec.n; ++q)
            if (q != p) candidates[static_cast<std::size_t>(at++)] = q;
        // Partial Fisher-Yates: the first d entries become the draw, in draw
        // order, so rank weights attach to positions directly.
        for (int r = 0; r < spec.d; ++r) {
            const int j = r + static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.n - 1 - r)));
            std::swap(candidates[static_cast<std::size_t>(r)], candidates[static_cast<std::size_t>(j)]);
            const Weight w = spec.weighted ? static_cast<Weight>(spec.d - r) : 1;
            game.add_value(p, candidates[static_cast<std::size_t>(r)], w);
        }
    }
    return game;
}

Game gen_circulant(int n, int k) {
    if (n < 2) throw std::invalid_argument("need at least two players");
    if (k < 1 || k >= n) throw std::invalid_argument("step count must satisfy 1 <= k <= n - 1");
    if (n % k != 0) throw std::invalid_argument("step count must divide n");
    Game game(n);
    for (int v = 0; v < n; ++v)
        for (int s = 1; s <= k; ++s) game.add_value(v, (v + s) % n, 1);
    return game;
}

CoalitionStructure interleaved_cycles_partition(int n, int k) {
    if (k < 1 || k > n || n % k != 0)
        throw std::invalid_argument("interleaved partition needs k dividing n");
    CoalitionStructure cs{k, std::vector<int>(static_cast<std::size_t>(n), 0)};
    for (int v = 0; v < n; ++v) cs.assignment[static_cast<std::size_t>(v)] = v % k;
    return cs;
}

CoalitionStructure contiguous_partition(int n, int k) {
    if (k < 1 || k > n || n % k != 0)
        throw std::invalid_argument("contiguous partition needs k dividing n");
    const int block = n / k;
    CoalitionStructure cs{k, std::vector<int>(static_cast<std::size_t>(n), 0)};
    for (int v = 0; v < n; ++v) cs.assignment[static_cast<std::size_t>(v)] = v / block;
    return cs;
}

namespace {

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

FriendCsv ingest_friend_csv(std::istream& in, const std::string& display_name, int max_friends,
                            bool weighted) {
    if (max_friends < 1) throw std::invalid_argument("friend cap must be at least 1");

    struct RawEdge {
        int from;
        int to;
        Weight w;
    };
    std::vector<std::string> ids;
    std::map<std::string, int> index_of;
    auto intern = [&](const std::string& id) {
        auto [it, fresh] = index_of.emplace(id, static_cast<int>(ids.size()));
        if (fresh) ids.push_back(id);
        return it->second;
    };

    std::vector<RawEdge> edges;
    std::vector<char> seen_row; // by player index, grows with ids
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = strip(line);
        if (t.empty() || t[0] == '#') continue;

        std::vector<std::string> cells;
        std::stringstream row(line);
        std::string cell;
        while (std::getline(row, cell, ',')) cells.push_back(strip(cell));

        if (cells.empty() || cells.front().empty())
            throw ParseError(display_name, line_no, "missing student id");
        const std::string student = cells.front();
        const int s = intern(student);
        if (seen_row.size() < ids.size()) seen_row.resize(ids.size(), 0);
        if (seen_row[static_cast<std::size_t>(s)])
            throw ParseError(display_name, line_no, "duplicate row for student '" + student + "'");
        seen_row[static_cast<std::size_t>(s)] = 1;

        if (static_cast<int>(cells.size()) - 1 > max_friends)
            throw ParseError(display_name, line_no,
                             "student '" + student + "' lists " + std::to_string(cells.size() - 1) +
                                 " friends, cap is " + std::to_string(max_friends));
        std::vector<char> in_row; // friend dupes within one line
        for (std::size_t r = 1; r < cells.size(); ++r) {
            const std::string& friend_id = cells[r];
            if (friend_id.empty())
                throw ParseError(display_name, line_no, "empty friend entry for student '" + student + "'");
            if (friend_id == student)
                throw ParseError(display_name, line_no, "student '" + student + "' lists themselves");
            const int f = intern(friend_id);
            if (seen_row.size() < ids.size()) seen_row.resize(ids.size(), 0);
            if (in_row.size() < ids.size()) in_row.resize(ids.size(), 0);
            if (in_row[static_cast<std::size_t>(f)])
                throw ParseError(display_name, line_no,
                                 "student '" + student + "' lists '" + friend_id + "' twice");
            in_row[static_cast<std::size_t>(f)] = 1;
            // Rank r (1-based): top pick worth max_friends, next one less, ...
            const Weight w = weighted ? static_cast<Weight>(max_friends - static_cast<int>(r) + 1) : 1;
            edges.push_back(RawEdge{s, f, w});
        }
    }

    FriendCsv out;
    out.ids = std::move(ids);
    out.game = Game(static_cast<int>(out.ids.size()));
    for (const auto& e : edges) out.game.add_value(e.from, e.to, e.w);
    return out;
}

FriendCsv ingest_friend_csv_file(const std::string& path, int max_friends, bool weighted) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open file");
    return ingest_friend_csv(in, path, max_friends, weighted);
}

} // namespace kcoal
