#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "tadic/motivic.hpp"
#include "tadic/residue.hpp"

namespace tadic {

// A truncated Laurent series over F_q.  Stored coefficients cover exponents
// lead .. lead+size-1; all further coefficients below `prec` are exactly
// zero, and nothing is known at exponents >= prec.  prec == kOrdInf means
// the element is exact (a Laurent polynomial).  The zero-to-window state
// (no stored coefficients, finite prec) cannot certify its own ord; asking
// for it is a hard PrecisionError, never a silent truncation.
class FieldElement {
  public:
    FieldElement() : lead_(0), prec_(kOrdInf) {}

    static FieldElement zero(const ResidueField& F);
    static FieldElement one(const ResidueField& F) { return t_pow_scaled(F, 0, 1); }
    // c * t^k with c an integer residue.
    static FieldElement t_pow_scaled(const ResidueField& F, Ord k, long long c);
    static FieldElement of_int(const ResidueField& F, long long n) {
        return t_pow_scaled(F, 0, n);
    }
    // coefficients for exponents lead, lead+1, ...
    static FieldElement from_coeffs(const ResidueField& F, Ord lead,
                                    std::vector<ResidueElement> coeffs, Ord prec = kOrdInf);

    const ResidueField& field() const;
    bool is_exact() const { return is_inf(prec_); }
    Ord prec() const { return prec_; }

    bool is_exact_zero() const { return coeffs_.empty() && is_exact(); }
    // True when nothing nonzero is stored (zero as far as the window shows).
    bool is_zero_in_window() const { return coeffs_.empty(); }

    // ord(x); +inf sentinel for the exact zero.  Throws PrecisionError when
    // the element is zero to its window but not exactly.
    Ord ord() const;
    // Highest stored nonzero exponent (requires a nonzero element).
    Ord top_exp() const;
    // ac(x) = x t^{-ord x} mod t; ac(0) = 0.
    ResidueElement ac() const;
    // Coefficient at exponent e; certified within the window.
    ResidueElement coeff_at(Ord e) const;

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement times_t_pow(Ord k) const;

    // The canonical representative modulo t^N: coefficients at exponents
    // >= N dropped, result exact.  Requires the window to reach N.
    FieldElement reduced_mod(Ord N) const;
    // Marks a (possibly exact) element as known only below N.
    FieldElement with_precision(Ord N) const;

    // Exact structural equality (requires both exact).
    bool same_exact(const FieldElement& o) const;

    // tr(a_0(x)) in [0, p): the exponent k with Psi(x) = zeta_p^k.  The
    // induced character is additive, trivial exactly on ord >= 1.
    uint32_t character_exponent() const;

    // Signed-exponent coefficient text, e.g. "t^-1*[2] + t^0*[1] + t^2*[1]".
    std::string to_text() const;
    static FieldElement parse(const ResidueField& F, const std::string& text);

    // total order on exact elements, for canonical sorting
    static int compare(const FieldElement& a, const FieldElement& b);

  private:
    void strip();
    const ResidueField* field_ptr() const;

    Ord lead_;
    std::vector<ResidueElement> coeffs_;
    Ord prec_;
};

// Vectors over K.
using FieldVec = std::vector<FieldElement>;

// <x, xi> = Sigma x_i xi_i.
FieldElement inner_product(std::span<const FieldElement> x, std::span<const FieldElement> xi);

// Psi(x) = zeta_p^{character_exponent(x)} as a motivic scalar.
MotivicScalar psi(const ResidueField& F, const FieldElement& x);

// min_i ord(x_i) with the +inf convention for the empty/zero vector.
Ord min_ord(std::span<const FieldElement> v);

// Exactly q^{m(D-alpha)} representatives of B(c, alpha) modulo B(c, D), in
// lexicographic coefficient order, each exact.  Throws BudgetError when the
// count exceeds `budget`.
std::vector<FieldVec> enumerate_coset_reps(const ResidueField& F, const FieldVec& c, Ord alpha,
                                           Ord D, long long budget);

}  // namespace tadic
