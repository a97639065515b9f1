#pragma once

#include <random>

#include "tadic/schwartz.hpp"

namespace tadic {

// Deterministic generators for property suites and query batteries.  All
// draws come from a caller-owned engine seeded from the configuration, so
// identical configs produce identical suites.

using Rng = std::mt19937_64;

inline long long draw(Rng& rng, long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

// A random exact element with ord in [ord_lo, ord_hi] (or exact zero).
FieldElement random_field_element(Rng& rng, const Context& ctx, Ord ord_lo, Ord ord_hi,
                                  bool allow_zero = true);

// A random motivic coefficient: small cyclotomic combination times an
// L-power, occasionally divided by (1 - L^{-i}).
MotivicScalar random_scalar(Rng& rng, const Context& ctx);

// A random Schwartz-Bruhat function with at most max_terms terms, radii and
// frequency orders within [ord_lo, ord_hi].
SBFunction random_sb_function(Rng& rng, const Context& ctx, size_t m, size_t max_terms,
                              Ord ord_lo, Ord ord_hi, bool with_freq = true);

struct BallQuerySpec {
    FieldVec center;
    Ord alpha;
    FieldVec freq;
};

// A deterministic battery of ball queries with centers/radii in the given
// ord range; roughly half the queries carry a frequency twist.
std::vector<BallQuerySpec> query_battery(Rng& rng, const Context& ctx, size_t m, size_t count,
                                         Ord ord_lo, Ord ord_hi);

}  // namespace tadic
