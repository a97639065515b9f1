#pragma once

#include <functional>
#include <optional>

#include "tadic/expr.hpp"
#include "tadic/sampling.hpp"
#include "tadic/schwartz.hpp"

namespace tadic {

// A twisted-ball query: the test function 1_{B(c,alpha)} E(. | xi).
struct BallQuery {
    FieldVec center;
    Ord alpha = 0;
    FieldVec freq;

    BallQuery() = default;
    BallQuery(FieldVec c, Ord a, FieldVec f)
        : center(std::move(c)), alpha(a), freq(std::move(f)) {}
    BallQuery(FieldVec c, Ord a) : center(std::move(c)), alpha(a), freq(center.size()) {}

    SBFunction to_sb(const Context& ctx) const;
};

enum class DistKind { Function, Dirac, Graph, FourierOf, ProductBySB, Tensor, Pullback, Custom };

const char* dist_kind_name(DistKind k);

// A definable distribution at desk scale: a pure evaluator from twisted
// ball queries to motivic scalars.  Query values depend only on the
// canonical query data; the wrapper reduces the center modulo t^alpha and
// folds the deep part of the frequency into a phase before dispatching.
// Evaluators are immutable and safe to call concurrently.
class Distribution {
  public:
    using Evaluator = std::function<MotivicScalar(const BallQuery&)>;

    Distribution() = default;
    Distribution(const Context& ctx, size_t m, DistKind kind, Evaluator eval);

    size_t m() const { return m_; }
    DistKind kind() const { return kind_; }
    const Context& ctx() const { return *ctx_; }

    MotivicScalar evaluate_query(const BallQuery& q) const;

    // payloads for closed-form certification routes
    const SBFunction* sb_payload() const { return sb_ ? &*sb_ : nullptr; }
    const expr::PolyMap* graph_payload() const { return map_ ? &*map_ : nullptr; }
    const Distribution* left_payload() const { return left_.get(); }
    const Distribution* right_payload() const { return right_.get(); }

    Distribution with_sb_payload(SBFunction sb) const;
    Distribution with_graph_payload(expr::PolyMap g) const;
    Distribution with_parts(Distribution left, Distribution right) const;

  private:
    const Context* ctx_ = nullptr;
    size_t m_ = 0;
    DistKind kind_ = DistKind::Custom;
    Evaluator eval_;
    std::optional<SBFunction> sb_;
    std::optional<expr::PolyMap> map_;
    std::shared_ptr<const Distribution> left_, right_;
};

// --- builders --------------------------------------------------------------

// The distribution of a locally integrable (here: Schwartz-Bruhat) density:
// <u, T> = integral of phi * T, in closed form for every query.
Distribution from_sb(const SBFunction& phi, const Context& ctx);

Distribution dirac(const FieldVec& x0, const Context& ctx);

// Integration over the graph of a polynomial map g : V_x -> V_y, as a
// distribution on V_x x V_y: <u, T> = integral T(x, g(x)) dx, realized as an
// exact finite sum at a depth where the integrand is constant on cosets.
Distribution graph_distribution(const expr::PolyMap& g, const Context& ctx);

// Reference evaluator for the density psi o f (psi composed with a
// polynomial map), by enumeration; used as the independent side of pullback
// comparisons.
Distribution from_sb_composed(const SBFunction& psi, const expr::PolyMap& f, const Context& ctx);

// <u, phi> through the motivic average formula: the sum over representatives
// z of B_{alpha^-(phi)} mod B_{alpha^+(phi)} of phi(z) <u, 1_{B(z,alpha^+)}>;
// the L^{alpha^+ m} prefactor cancels the coset measure exactly.
MotivicScalar eval_on_sb(const Distribution& u, const SBFunction& phi, const Context& ctx);
// Same with an explicit window a_minus <= alpha^-(phi), a_plus >= alpha^+(phi).
MotivicScalar eval_on_sb_window(const Distribution& u, const SBFunction& phi, Ord a_minus,
                                Ord a_plus, const Context& ctx);

// <F u, T> := <u, F T>.
Distribution fourier_distribution(const Distribution& u, const Context& ctx);

// (phi . u): <phi u, T> = <u, phi T>.
Distribution product_by_sb(const SBFunction& phi, const Distribution& u, const Context& ctx);

struct PaleyWienerResult {
    SBFunction reconstruction;  // u_phi as a function of the covector
    bool ok = false;
    std::string detail;
};

// Reconstructs u_phi(xi) = <u, phi E(.|xi)> on B_{support_bound} at the
// given depth, verifies the claimed support on the shell below it, and
// checks Fbar(u_phi) = (L^{-m} phi) u on a query battery.
PaleyWienerResult paley_wiener_check(const Distribution& u, const SBFunction& phi,
                                     Ord support_bound, Ord depth, const Context& ctx,
                                     size_t battery = 30);

struct FubiniReport {
    bool ok = true;
    std::string witness;
};

// The tensor-existence battery: both iterated evaluations of random product
// Schwartz-Bruhat functions must agree.
FubiniReport fubini_symmetry_check(const Distribution& u, const Distribution& v,
                                   const Context& ctx, size_t samples = 6);

// u (x) v on product queries; throws DataError when the symmetry battery
// fails.
Distribution tensor(const Distribution& u, const Distribution& v, const Context& ctx,
                    size_t battery = 6);

// Bounds for the localized pull-back (Heifetz-style) formula.  R_y is the
// radius of the chi ball around f(x0); R_x bounds the localization radius:
// f(B(x, R_x)) is contained in B(f(x), R_y).  N_delta is the off-conormal
// gradient bound ord(df^T(x) xi) <= N_delta on unit-shell covectors outside
// the smooth set; N_R bounds the Taylor remainder ord(R_f) >= N_R.
// xi_ord_min, when set, overrides the derived lower truncation of the
// covector integral.  verify_shells covector shells below the truncation are
// sampled and must vanish.
struct SmoothData {
    Ord R_y = 0;
    Ord R_x = 0;
    std::optional<Ord> N_delta;
    std::optional<Ord> N_R;
    std::optional<Ord> xi_ord_min;
    int verify_shells = 1;
};

// f^* u by the localization formula, as an exact finite double sum.  For a
// density u = from_sb(psi) this equals L^{-m_x} from_sb(psi o f) on every
// query.
Distribution pullback(const expr::PolyMap& f, const Distribution& u, const SmoothData& data,
                      const Context& ctx);

// u . v = diagonal pull-back of u (x) v.  Rejects (DataError) when sampled
// cancelling covectors (xi, -xi) are not smooth directions of u (x) v.
Distribution diagonal_product(const Distribution& u, const Distribution& v,
                              const SmoothData& data, const Context& ctx);

// --- finite parameter families ----------------------------------------------

struct ParamFamily {
    std::vector<std::string> labels;
    std::vector<Distribution> members;
};

// Reindex along F : W -> W' (F[i] is the index of the image of member i).
ParamFamily param_pullback(const std::vector<size_t>& F, const ParamFamily& fam,
                           std::vector<std::string> labels);
// Fiber sums along F into a family with n_out members.
ParamFamily param_pushforward(const std::vector<size_t>& F, const ParamFamily& fam,
                              size_t n_out, std::vector<std::string> labels,
                              const Context& ctx);

// Re-checks the pull-back/push-forward compatibility identities on a query
// battery; returns an empty string or a witness.
std::string param_compat_check(const std::vector<size_t>& F, const ParamFamily& fam,
                               const ParamFamily& pulled, const ParamFamily& pushed,
                               const Context& ctx, size_t battery = 8);

}  // namespace tadic
