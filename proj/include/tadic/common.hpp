#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace tadic {

// Valuations and precision bounds share one integer type.  kOrdInf is the
// "+infinity" sentinel for ord(0) and for exact precision; it is kept well
// below INT_MAX so that bounded sums of valuations never overflow.
using Ord = long long;
inline constexpr Ord kOrdInf = std::numeric_limits<Ord>::max() / 8;

inline bool is_inf(Ord v) { return v >= kOrdInf; }

// Saturating addition in the extended order Z u {+inf}.
inline Ord ord_add(Ord a, Ord b) {
    if (is_inf(a) || is_inf(b)) return kOrdInf;
    return a + b;
}

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Result of an operation cannot be certified within the precision window.
struct PrecisionError : Error {
    using Error::Error;
};

// An enumeration would exceed the configured budget.
struct BudgetError : Error {
    using Error::Error;
};

// Malformed input: parse errors, sort errors, invalid configuration.
struct InputError : Error {
    using Error::Error;
};

// Supplied bounds (smooth data, phase data, stability depths) are violated
// by a sampled point; the message carries the witness.
struct DataError : Error {
    using Error::Error;
};

}  // namespace tadic
