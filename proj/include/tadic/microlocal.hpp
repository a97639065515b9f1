#pragma once

#include "tadic/distribution.hpp"

namespace tadic {

// The multiplicative group Lambda_n = { x : n | ord x and ac x = 1 }, the
// substitute for positive real scalars in cone conditions.
struct LambdaGroup {
    int n = 1;
};

// All lambda = t^{kn}(1 + mu) with mu over representatives of the maximal
// ideal modulo t^{D-kn}; each satisfies ord lambda = kn, ac lambda = 1.
// Requires D >= kn + 1.
std::vector<FieldElement> lambda_reps(const Context& ctx, const LambdaGroup& L, long long k,
                                      Ord D);

// Phase data for the oscillatory-integral bound: the phase g (a valued-field
// polynomial in `vars`, other free variables bound by `params`), its exact
// gradient and Taylor remainder, and valuation bounds verified on the
// support of the test function:
//   ord grad_x g <= N_grad on the support cosets (hypothesis of the bound),
//   ord R >= N_R on the support ball (with a cap sentinel when R == 0).
struct PhaseData {
    expr::TermPtr g;
    std::vector<std::string> vars;
    expr::Assignment params;
    std::vector<expr::TermPtr> grad;
    std::vector<std::vector<expr::TermPtr>> remainder;
    Ord N_grad = 0;        // sup of ord(grad) over the support
    Ord N_grad_floor = 0;  // min of ord(grad) over the support
    Ord N_R = 0;           // min of ord(R); kOrdInf-capped for affine phases
    bool nr_capped = false;
};

// Builds and verifies phase data on the support of phi.  Throws DataError
// with a witness point when the gradient valuation is unbounded there (the
// bound's hypothesis fails, e.g. a critical point inside the support).
PhaseData make_phase_data(const expr::TermPtr& g, std::span<const std::string> vars,
                          const expr::Assignment& params, const SBFunction& phi,
                          const Context& ctx);

// The vanishing threshold -A - N_grad with A = max(N_grad - N_R + 1,
// alpha^+(phi)): the oscillatory integral vanishes for every lambda in
// Lambda_n with ord lambda < the returned value.
Ord oscillatory_bound(const PhaseData& pd, const SBFunction& phi, const Context& ctx);

// I_phi(lambda) = integral phi(x) Psi(lambda g(x)) dx as an exact finite sum
// at a coset depth where the integrand is constant.
MotivicScalar oscillatory_integral(const SBFunction& phi, const PhaseData& pd,
                                   const FieldElement& lambda, const Context& ctx);

enum class WFVerdict { SmoothCertified, SmoothObserved, NotSmooth };
enum class SSVerdict { Smooth, NonSmoothObserved };

const char* wf_verdict_name(WFVerdict v);
const char* ss_verdict_name(SSVerdict v);

struct WFCertificate {
    FieldVec point;
    FieldVec covector;
    Ord r = 0;
    Ord rcheck = 1;
    int n = 1;
    int K = 6;
    WFVerdict verdict = WFVerdict::SmoothObserved;
    std::optional<Ord> threshold;  // vanishing claimed for ord lambda < threshold
    std::optional<std::pair<std::string, std::string>> witness;  // (lambda, value)
    std::string theorem_basis;  // set for smooth-certified
    bool nr_capped = false;
};

// Microlocal smoothness test at (x0, xi0): sweeps lambda over Lambda_n
// shells ord lambda = 0, -n, ..., -Kn and evaluates the localized twisted
// queries.  Verdict not-smooth carries a witness; smooth-certified carries a
// theorem-derived threshold (Schwartz-Bruhat support bound, or the
// oscillatory bound for graph distributions); otherwise smooth-observed.
WFCertificate wf_test(const Distribution& u, const FieldVec& x0, const FieldVec& xi0, Ord r,
                      Ord rcheck, int K, const LambdaGroup& L, const Context& ctx);

struct SSCertificate {
    FieldVec point;
    Ord r = 0;
    int K = 6;
    SSVerdict verdict = SSVerdict::NonSmoothObserved;
    std::optional<SBFunction> representative;  // local Schwartz-Bruhat model
    std::string detail;
};

// Smooth-point test: attempts the Paley-Wiener reconstruction of the
// localized distribution 1_{B(x0,r)} u from a covector sweep of depth K.
SSCertificate ss_test(const Distribution& u, const FieldVec& x0, Ord r, int K,
                      const Context& ctx);

struct ProjectionReport {
    struct Row {
        FieldVec x;
        bool ss_smooth = false;
        bool wf_all_smooth = false;
        bool violation = false;
        std::string note;
    };
    std::vector<Row> rows;
    bool ok = true;
};

// Checks pi(WF) inside SS on sample points: a not-smooth covector above an
// ss-smooth point is a violation.
ProjectionReport projection_property_check(const Distribution& u,
                                           const std::vector<FieldVec>& sample_points, Ord r,
                                           int K, const LambdaGroup& L, const Context& ctx);

}  // namespace tadic
