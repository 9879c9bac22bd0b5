#include "kcoal/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace kcoal {

namespace {
using BigInt = boost::multiprecision::cpp_int;

void require_non_empty(const UtilityProfile& profile) {
    if (profile.empty()) throw std::invalid_argument("empty utility profile");
}
} // namespace

std::string decimal_string(const Rational& value, int digits) {
    if (digits < 0) throw std::invalid_argument("negative digit count");
    BigInt num = boost::multiprecision::numerator(value);
    BigInt den = boost::multiprecision::denominator(value); // normalised positive
    const bool negative = num < 0;
    if (negative) num = -num;

    BigInt scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;

    // Round half up at the last kept digit.
    BigInt scaled = (num * scale * 2 + den) / (den * 2);
    BigInt whole = scaled / scale;
    BigInt frac = scaled % scale;

    std::string out = whole.str();
    if (digits > 0) {
        std::string f = frac.str();
        f.insert(f.begin(), static_cast<std::size_t>(digits) - f.size(), '0');
        out += "." + f;
    }
    if (negative && (whole != 0 || frac != 0)) out.insert(out.begin(), '-');
    return out;
}

Weight egalitarian(const UtilityProfile& profile) {
    require_non_empty(profile);
    return *std::min_element(profile.begin(), profile.end());
}

std::pair<Weight, Rational> utilitarian_total_and_average(const UtilityProfile& profile) {
    require_non_empty(profile);
    Weight total = 0;
    for (Weight u : profile) total += u;
    return {total, Rational(total, static_cast<Weight>(profile.size()))};
}

LeximinKey leximin_key(const UtilityProfile& profile) {
    require_non_empty(profile);
    LeximinKey key{profile};
    std::sort(key.sorted_utilities.begin(), key.sorted_utilities.end());
    return key;
}

LeximinOrder compare_leximin(const LeximinKey& a, const LeximinKey& b) {
    if (a.sorted_utilities.size() != b.sorted_utilities.size())
        throw std::invalid_argument("leximin keys of different length");
    for (std::size_t i = 0; i < a.sorted_utilities.size(); ++i) {
        if (a.sorted_utilities[i] != b.sorted_utilities[i])
            return a.sorted_utilities[i] > b.sorted_utilities[i] ? LeximinOrder::FirstBetter
                                                                 : LeximinOrder::SecondBetter;
    }
    return LeximinOrder::Equal;
}

bool leximin_better(const LeximinKey& a, const LeximinKey& b) {
    return compare_leximin(a, b) == LeximinOrder::FirstBetter;
}

Rational gini(const UtilityProfile& profile) {
    require_non_empty(profile);
    const auto n = static_cast<std::int64_t>(profile.size());
    UtilityProfile sorted = profile;
    std::sort(sorted.begin(), sorted.end());

    // sum_{i<j} (x_j - x_i) over the sorted values, via prefix sums:
    // each x_i is added i times and subtracted (n-1-i) times.
    BigInt pair_diff_sum = 0;
    for (std::int64_t i = 0; i < n; ++i) {
        const BigInt x = sorted[static_cast<std::size_t>(i)];
        pair_diff_sum += x * i - x * (n - 1 - i);
    }

    BigInt total = 0;
    for (Weight u : sorted) total += u;
    if (total == 0) return Rational(0); // flat-at-zero profile: no inequality measured
    return Rational(pair_diff_sum, BigInt(n) * total); // = 2*sum_{i<j}diff / (2 n^2 mu), mu = total/n
}

std::int64_t sa_score(const UtilityProfile& profile) {
    require_non_empty(profile);
    const Weight min = egalitarian(profile);
    std::int64_t at_min = 0;
    for (Weight u : profile)
        if (u == min) ++at_min;
    return static_cast<std::int64_t>(profile.size()) * min - at_min;
}

MetricsReport MetricsReport::of(const UtilityProfile& profile) {
    require_non_empty(profile);
    MetricsReport r;
    r.egalitarian = kcoal::egalitarian(profile);
    auto [total, avg] = utilitarian_total_and_average(profile);
    r.total = total;
    r.average = avg;
    r.gini = kcoal::gini(profile);
    r.min_count = 0;
    for (Weight u : profile)
        if (u == r.egalitarian) ++r.min_count;
    return r;
}

std::string MetricsReport::csv_header() { return "min,avg,total,gini,min_count"; }

std::string MetricsReport::csv_row() const {
    return std::to_string(egalitarian) + "," + decimal_string(average, 6) + "," + std::to_string(total) +
           "," + decimal_string(gini, 6) + "," + std::to_string(min_count);
}

} // namespace kcoal
