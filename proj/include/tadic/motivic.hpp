#pragma once

#include <map>
#include <string>

#include "tadic/cyclotomic.hpp"

namespace tadic {

// A Laurent polynomial in the formal symbol L with Z[zeta_p] coefficients.
// Zero coefficients are never stored.
class LaurentPoly {
  public:
    LaurentPoly() : p_(0) {}
    explicit LaurentPoly(uint32_t p) : p_(p) {}

    static LaurentPoly monomial(uint32_t p, long long exp, CyclotomicInteger coeff);

    uint32_t p() const { return p_; }
    const std::map<long long, CyclotomicInteger>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    long long min_exp() const;  // requires non-zero
    long long max_exp() const;

    void add_term(long long exp, const CyclotomicInteger& c);

    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator-() const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly shifted(long long k) const;  // multiply by L^k
    bool operator==(const LaurentPoly& o) const { return p_ == o.p_ && terms_ == o.terms_; }

    // Exact division by (L^i - 1); nullopt-style: returns false and leaves
    // quotient untouched when the division is not exact.
    bool divide_exact_by_cyclo_factor(long long i, LaurentPoly* quotient) const;

    // Exact value at L = q as an element of Q(zeta_p).
    CycRational eval_at(long long q) const;

  private:
    uint32_t p_;
    std::map<long long, CyclotomicInteger> terms_;
};

// An element of the coefficient ring A (+) p-th roots of unity:
//     numerator / ( prod_j (L^{i_j} - 1) * L^denom_Lpow )
// with numerator a Laurent polynomial in L over Z[zeta_p].  Normal form:
// denom_Lpow is folded into the numerator (L is a unit), the zero element
// carries no denominator data, and a factor (L^i - 1) is stripped only when
// it divides the numerator exactly.  Equality is by cross-multiplication.
class MotivicScalar {
  public:
    MotivicScalar() = default;
    explicit MotivicScalar(uint32_t p) : num_(p) {}
    MotivicScalar(LaurentPoly num, std::map<long long, int> denom_factors, long long denom_Lpow);

    static MotivicScalar zero(uint32_t p) { return MotivicScalar(p); }
    static MotivicScalar one(uint32_t p) { return of_int(p, 1); }
    static MotivicScalar of_int(uint32_t p, const BigInt& n);
    static MotivicScalar of_cyclotomic(CyclotomicInteger z);
    static MotivicScalar L_pow(uint32_t p, long long k);
    static MotivicScalar zeta_pow(uint32_t p, long long k);
    // 1 / (1 - L^{-i})  ==  L^i / (L^i - 1), i > 0.
    static MotivicScalar inv_one_minus_L_neg(uint32_t p, long long i);

    uint32_t p() const { return num_.p(); }
    const LaurentPoly& numerator() const { return num_; }
    const std::map<long long, int>& denom_factors() const { return denom_; }
    long long denom_Lpow() const { return denom_Lpow_; }

    bool is_zero() const { return num_.is_zero(); }

    MotivicScalar operator+(const MotivicScalar& o) const;
    MotivicScalar operator-(const MotivicScalar& o) const;
    MotivicScalar operator-() const;
    MotivicScalar operator*(const MotivicScalar& o) const;
    MotivicScalar times_L_pow(long long k) const;

    // Exact equality in the ring (cross-multiplied numerators compared as
    // Laurent polynomials).
    bool equals(const MotivicScalar& o) const;

    // Exact specialization at L = q (q >= 2).  Throws InputError when a
    // denominator factor would vanish (impossible for q >= 2, still guarded).
    CycRational eval_at_q(long long q) const;

    // Canonical text form, e.g. "(2*z^1)*L^-3 / (L^2-1)".
    std::string to_text() const;
    static MotivicScalar parse(uint32_t p, const std::string& text);

  private:
    void normalize();
    LaurentPoly denominator_poly() const;

    LaurentPoly num_;
    std::map<long long, int> denom_;  // factor exponent i -> multiplicity
    long long denom_Lpow_ = 0;        // always 0 after normalization
};

// Sum over the residue line: Sigma_{a in F_q} zeta_p^{tr(r a)}.  Returns the
// integer q as a scalar when r = 0 and 0 otherwise (character orthogonality).
class ResidueElement;
MotivicScalar char_sum_over_residue_line(const ResidueElement& r);

}  // namespace tadic
