#pragma once

#include "tadic/schwartz.hpp"

namespace tadic {

// Brute-force character-sum oracle.  Everything here works at the
// specialization L = q, summing explicit coset representatives; it is the
// independent check against the closed-form operations and must not call
// fourier / convolve / integrate.

// phi evaluated at a point, specialized at q.
CycRational evaluate_at_q(const SBFunction& phi, const FieldVec& x, const Context& ctx);

// F(phi)(y) as the sum over representatives of B_{alpha^-} mod t^D of
// q^{-mD} phi(x) Psi(<x,y>), with D = max(alpha^+(phi), 1 - min_i ord y_i).
CycRational brute_fourier_value(const SBFunction& phi, const FieldVec& y, const Context& ctx);

// integral of phi by direct summation.
CycRational brute_integral(const SBFunction& phi, const Context& ctx);

// (phi * psi)(z) by the direct double... single sum over x of
// phi(x) psi(z - x) q^{-mD}.
CycRational brute_convolution_value(const SBFunction& phi, const SBFunction& psi,
                                    const FieldVec& z, const Context& ctx);

struct OracleReport {
    bool ok = true;
    size_t checked = 0;
    std::string mismatch;  // first mismatch description
};

// Compares eval_at_q(fourier(phi)(y)) with the brute-force sum on every
// given covector.  With inject_error set, the symbolic side is corrupted by
// one power of L (negative control for the mismatch detector).
OracleReport oracle_compare_fourier(const SBFunction& phi, const std::vector<FieldVec>& covectors,
                                    const Context& ctx, bool inject_error = false);

}  // namespace tadic
