#pragma once

#include <optional>

#include "tadic/context.hpp"

namespace tadic {

// One twisted-ball term  x |-> coeff * 1_{B(c,alpha)}(x) * Psi(<x,xi>),
// where B(c,alpha) = { x : ord(x_i - c_i) >= alpha for all i }.
//
// Canonical form: every coefficient of c_i at exponent >= alpha is zero, and
// every coefficient of xi_i at exponent >= 1-alpha is zero, the truncated
// part of the phase having been folded into coeff (on the ball, a frequency
// component of conductor <= alpha contributes only the constant
// Psi(<c, xi_dropped>)).
struct SBTerm {
    MotivicScalar coeff;
    FieldVec center;
    Ord alpha = 0;
    FieldVec freq;

    size_t m() const { return center.size(); }
};

// A Schwartz-Bruhat function: a finite motivic-linear combination of twisted
// ball indicators, closed under Fourier transform, product and convolution.
// Terms are kept in canonical form, merged per canonical key, and sorted, so
// equality of functions is syntactic.
class SBFunction {
  public:
    SBFunction() : m_(0) {}
    SBFunction(const Context& ctx, size_t m, std::vector<SBTerm> terms);

    // 1_{B(0, alpha)} on K^m.
    static SBFunction ball(const Context& ctx, size_t m, Ord alpha);
    // coeff * 1_{B(c, alpha)} * Psi(<x, xi>).
    static SBFunction term(const Context& ctx, MotivicScalar coeff, FieldVec c, Ord alpha,
                           FieldVec xi);

    size_t m() const { return m_; }
    bool is_zero() const { return terms_.empty(); }
    const std::vector<SBTerm>& terms() const { return terms_; }

    // support bound alpha^-: the function vanishes outside B_{alpha^-}.
    // Zero function: 0 by convention (never consumed).
    Ord support_bound() const;
    // constancy bound alpha^+: constant on every coset of B_{alpha^+}.
    Ord constancy_bound() const;

    bool equals(const SBFunction& o) const;

    SBFunction scaled(const MotivicScalar& s, const Context& ctx) const;
    SBFunction plus(const SBFunction& o, const Context& ctx) const;

    std::string to_text() const;

  private:
    size_t m_;
    std::vector<SBTerm> terms_;
};

MotivicScalar evaluate(const SBFunction& f, const FieldVec& x, const Context& ctx);

// F(phi)(y) = integral phi(x) Psi(<x,y>) dx, in closed form: the term
// (a, c, alpha, xi) maps to (a Psi(<c,xi>) L^{-m alpha}, -xi, 1-alpha, c).
SBFunction fourier(const SBFunction& f, const Context& ctx);

// Exact inverse: L^m * fourier(reflect(.)).
SBFunction fourier_inverse(const SBFunction& f, const Context& ctx);

// Pointwise product; two polyballs of radii a1 <= a2 intersect iff the
// second center lies in the first ball, and then the intersection is the
// second ball.
SBFunction multiply(const SBFunction& f, const SBFunction& g, const Context& ctx);

// integral of f over K^m: per term, coeff Psi(<c,xi>) L^{-m alpha} when every
// frequency component has ord >= 1-alpha, else 0.
MotivicScalar integrate(const SBFunction& f, const Context& ctx);

// Convolution via the Fourier round trip F^{-1}(F(f) F(g)).
SBFunction convolve(const SBFunction& f, const SBFunction& g, const Context& ctx);

// phi_check(x) = phi(-x).
SBFunction reflect(const SBFunction& f, const Context& ctx);

// x |-> phi(x - a).
SBFunction translate(const SBFunction& f, const FieldVec& a, const Context& ctx);

// The same function rewritten on disjoint cosets of B_D (D >= alpha^+); the
// output terms all have radius D and zero frequency.
SBFunction refine_to_depth(const SBFunction& f, Ord D, const Context& ctx);

}  // namespace tadic
