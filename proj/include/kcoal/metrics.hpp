#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "kcoal/game.hpp"

namespace kcoal {

/// Exact rational value. Averages and inequality indices are kept exact so
/// that comparisons between runs never hinge on floating-point rounding.
using Rational = boost::multiprecision::cpp_rational;

/// Fixed-point decimal rendering (round half up), e.g. decimal_string(1/3, 6)
/// == "0.333333". Deterministic, used for all CSV output.
std::string decimal_string(const Rational& value, int digits);

/// Smallest utility in the profile. Throws std::invalid_argument when empty.
Weight egalitarian(const UtilityProfile& profile);

/// (sum, sum / n) with the average exact.
std::pair<Weight, Rational> utilitarian_total_and_average(const UtilityProfile& profile);

/// Utilities sorted ascending. Two keys compare lexicographically, larger is
/// better: the first position where they differ decides, and the structure
/// that treats its worst-off players better wins.
struct LeximinKey {
    UtilityProfile sorted_utilities;
};

LeximinKey leximin_key(const UtilityProfile& profile);

enum class LeximinOrder {
    SecondBetter = -1,
    Equal = 0,
    FirstBetter = 1,
};

/// Throws std::invalid_argument when the keys have different lengths.
LeximinOrder compare_leximin(const LeximinKey& a, const LeximinKey& b);

/// True iff a is strictly leximin-better than b.
bool leximin_better(const LeximinKey& a, const LeximinKey& b);

/// Mean absolute pairwise difference normalised by twice the mean:
/// sum_{i,j} |x_i - x_j| / (2 n^2 mu). Zero for a zero-sum profile by
/// convention (no inequality surface to measure).
Rational gini(const UtilityProfile& profile);

/// Search score n * min - (#players attaining min): lifts the floor first,
/// then shrinks the crowd sitting on it. Strictly increases when the minimum
/// rises, and when the minimum stays but fewer players sit on it.
std::int64_t sa_score(const UtilityProfile& profile);

/// Flat summary used by the CLI and the bench tables.
struct MetricsReport {
    Weight egalitarian = 0;
    Weight total = 0;
    Rational average;
    Rational gini;
    int min_count = 0;

    static MetricsReport of(const UtilityProfile& profile);

    static std::string csv_header(); // "min,avg,total,gini,min_count"
    std::string csv_row() const;
};

} // namespace kcoal
