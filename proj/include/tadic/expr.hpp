#pragma once

#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "tadic/context.hpp"

namespace tadic::expr {

// Quantifier-free three-sorted term language: valued-field polynomials with
// ord and ac, Presburger integer expressions, residue atoms, and boolean
// combinations.  Inputs must already be quantifier-free.
enum class Sort { Val, Int, Res, Bool };

enum class Op {
    VVar, VConst, VAdd, VSub, VNeg, VMul, VPow,
    IVar, IConst, IAdd, ISub, INeg, IMulC, IOrd, IMin, IMax, IMod,
    RAc, RConst,
    BEqInt, BLeInt, BLtInt, BEqRes, BDivides, BAnd, BOr, BNot,
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
    Sort sort;
    Op op;
    std::vector<TermPtr> args;
    std::string name;        // VVar
    FieldElement kconst;     // VConst
    long long iconst = 0;    // IConst, VPow exponent, IMulC factor, BDivides/IMod modulus
    ResidueElement rconst;   // RConst
};

TermPtr v_var(const std::string& name);
TermPtr v_const(FieldElement k);
TermPtr v_add(TermPtr a, TermPtr b);
TermPtr v_sub(TermPtr a, TermPtr b);
TermPtr v_neg(TermPtr a);
TermPtr v_mul(TermPtr a, TermPtr b);
TermPtr v_pow(TermPtr a, long long k);
TermPtr i_ord(TermPtr val);
TermPtr i_min(TermPtr a, TermPtr b);

// Free valued-field variables in canonical (first-occurrence) order.
std::vector<std::string> free_vars(const TermPtr& t);

// Sorted values and assignments.
struct Value {
    Sort sort;
    FieldElement v;
    Ord i = 0;
    ResidueElement r;
    bool b = false;
};

struct Assignment {
    std::map<std::string, FieldElement> vals;
    std::map<std::string, Ord> ints;
};

// parse/print.  var_sorts assigns sorts to identifiers (default Val).
TermPtr parse(const std::string& text,
              const Context& ctx,
              const std::map<std::string, Sort>& var_sorts = {});
std::string print(const TermPtr& t);

Value eval(const TermPtr& t, const Assignment& a, const Context& ctx);
FieldElement eval_val(const TermPtr& t, const Assignment& a, const Context& ctx);
Ord eval_int(const TermPtr& t, const Assignment& a, const Context& ctx);
bool eval_bool(const TermPtr& t, const Assignment& a, const Context& ctx);

// As eval_int, additionally reporting whether any inner ord() hit the zero
// locus (the +inf sentinel), even when min/max later clamp it away.
Ord eval_int_watch(const TermPtr& t, const Assignment& a, const Context& ctx, bool* saw_ord_inf);

// --- symbolic calculus on valued-field polynomials ---------------------

// Exact symbolic gradient of a polynomial term with respect to vars (other
// free variables stay symbolic).  Throws InputError on non-polynomial input.
std::vector<TermPtr> grad(const TermPtr& poly, std::span<const std::string> vars,
                          const Context& ctx);

// Matrix R with g(x+y) = g(x) + <grad g(x), y> + <R(x,y) y, y> as an exact
// polynomial identity; monomials of y-degree >= 2 are assigned to entries
// lexicographically (R_{ij} gets the y_i y_j slice, i = first y-index).
// y-variables are named by appending `y_suffix` to each var name.
std::vector<std::vector<TermPtr>> taylor_remainder(const TermPtr& poly,
                                                   std::span<const std::string> vars,
                                                   const Context& ctx,
                                                   const std::string& y_suffix = "__dy");

// --- finite-range enumeration over balls --------------------------------

struct BallDomain {
    FieldVec center;  // one entry per bound variable
    Ord alpha = 0;
};

struct ValuationBounds {
    Ord lo = kOrdInf;
    Ord hi = -kOrdInf;
    bool capped = false;            // a zero-locus coset makes the sup unbounded
    long long flagged_cosets = 0;   // cosets where ord(0) showed up
    bool all_infinite = false;      // term is +inf on every sampled point
};

// Exact min/max of an integer-sort term over the polyball, by enumeration at
// `depth` with a stability test at depth+1.  Cosets meeting the zero locus
// of an inner ord() argument are flagged (they cap the max and contribute
// their finite observations to the min).  A finite value that changes
// between depth and depth+1 is a hard DataError: the depth is too shallow.
ValuationBounds valuation_bounds(const TermPtr& t, std::span<const std::string> vars,
                                 const BallDomain& ball, Ord depth, const Assignment& params,
                                 const Context& ctx);

struct RangeResult {
    std::set<Ord> values;  // kOrdInf may appear when the zero locus is hit
    bool capped = false;
};

RangeResult range_enumerate(const TermPtr& t, std::span<const std::string> vars,
                            const BallDomain& ball, Ord depth, const Assignment& params,
                            const Context& ctx);

// --- polynomial maps K^m -> K^n ------------------------------------------

struct PolyMap {
    std::vector<std::string> vars;  // input variable names, dimension m_in
    std::vector<TermPtr> comps;     // output components, dimension m_out

    size_t m_in() const { return vars.size(); }
    size_t m_out() const { return comps.size(); }

    FieldVec apply(const FieldVec& x, const Context& ctx) const;
    // Component gradients: jac[j][i] = d comps[j] / d vars[i].
    std::vector<std::vector<TermPtr>> jacobian(const Context& ctx) const;

    static PolyMap identity(size_t m);
    static PolyMap translation(const FieldVec& a);
    // Parse components from text, e.g. {"x1^2"} over vars {"x1"}.
    static PolyMap parse(const std::vector<std::string>& comps,
                         const std::vector<std::string>& vars, const Context& ctx);
};

}  // namespace tadic::expr
