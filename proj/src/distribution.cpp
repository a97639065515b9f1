#include "tadic/distribution.hpp"

#include <algorithm>
#include <sstream>

namespace tadic {

namespace {

Ord ceil_half(Ord x) { return x >= 0 ? (x + 1) / 2 : x / 2; }

Ord min_ord_or_inf(const FieldVec& v) {
    Ord m = kOrdInf;
    for (const auto& x : v)
        if (!x.is_zero_in_window()) m = std::min(m, x.ord());
    return m;
}

bool vec_in_ball(const FieldVec& x, const FieldVec& c, Ord alpha) {
    for (size_t i = 0; i < x.size(); ++i) {
        FieldElement d = x[i] - c[i];
        if (d.is_zero_in_window()) {
            if (!d.is_exact() && d.prec() < alpha)
                throw PrecisionError("ball membership not certified");
            continue;
        }
        if (d.ord() < alpha) return false;
    }
    return true;
}

// valuation scan that retries with a deeper stability depth
expr::ValuationBounds adaptive_bounds(const expr::TermPtr& t,
                                      std::span<const std::string> vars,
                                      const expr::BallDomain& ball, const Context& ctx) {
    Ord depth = ball.alpha;
    for (int attempt = 0; attempt < 5; ++attempt) {
        try {
            return expr::valuation_bounds(t, vars, ball, depth, {}, ctx);
        } catch (const DataError&) {
            ++depth;
        }
    }
    return expr::valuation_bounds(t, vars, ball, depth, {}, ctx);
}

// min over all entries of ord(jacobian of f) on the ball; kOrdInf when the
// jacobian vanishes identically.
Ord grad_floor(const expr::PolyMap& f, const expr::BallDomain& ball, const Context& ctx) {
    auto jac = f.jacobian(ctx);
    expr::TermPtr combined;
    for (const auto& row : jac)
        for (const auto& e : row) {
            expr::TermPtr o = expr::i_ord(e);
            combined = combined ? expr::i_min(combined, o) : o;
        }
    if (!combined) return kOrdInf;
    auto b = adaptive_bounds(combined, f.vars, ball, ctx);
    return b.all_infinite ? kOrdInf : b.lo;
}

// min over entries of ord(R_j) for the Taylor remainders of all components,
// over (x, y) in ball x B(0, ball.alpha).
Ord remainder_floor(const expr::PolyMap& f, const expr::BallDomain& ball, const Context& ctx) {
    const std::string suffix = "__dy";
    expr::TermPtr combined;
    for (const auto& comp : f.comps) {
        auto R = expr::taylor_remainder(comp, f.vars, ctx, suffix);
        for (const auto& row : R)
            for (const auto& e : row) {
                expr::TermPtr o = expr::i_ord(e);
                combined = combined ? expr::i_min(combined, o) : o;
            }
    }
    if (!combined) return kOrdInf;
    std::vector<std::string> vars = f.vars;
    for (const auto& v : f.vars) vars.push_back(v + suffix);
    expr::BallDomain prod;
    prod.center = ball.center;
    prod.center.resize(vars.size());  // offsets centered at zero
    prod.alpha = ball.alpha;
    auto b = adaptive_bounds(combined, vars, prod, ctx);
    return b.all_infinite ? kOrdInf : b.lo;
}

// Sigma over x in B(c, r) mod t^D of zeta^{chi(<x,xiq> - <f(x),rho>)},
// times the coset measure L^{-m_x D}.
MotivicScalar osc_ball_sum(const FieldVec& c, Ord r, const FieldVec& xiq,
                           const expr::PolyMap& f, const FieldVec& rho, Ord D,
                           const Context& ctx) {
    auto reps = enumerate_coset_reps(ctx.F(), c, r, D, ctx.budget());
    std::vector<long long> counts(ctx.p(), 0);
    for (const auto& x : reps) {
        FieldVec y = f.apply(x, ctx);
        uint32_t k = (inner_product(x, xiq) - inner_product(y, rho)).character_exponent();
        counts[k] += 1;
    }
    MotivicScalar acc = ctx.zero();
    for (uint32_t k = 0; k < ctx.p(); ++k)
        if (counts[k] != 0)
            acc = acc + MotivicScalar::of_cyclotomic(
                            CyclotomicInteger::zeta_pow(ctx.p(), k) * BigInt(counts[k]));
    return acc.times_L_pow(-static_cast<long long>(c.size()) * D);
}

// representatives of the shell {min-ord == s} modulo t^D
std::vector<FieldVec> shell_reps(const Context& ctx, size_t m, Ord s, Ord D) {
    auto all = enumerate_coset_reps(ctx.F(), FieldVec(m), s, D, ctx.budget());
    std::vector<FieldVec> out;
    for (auto& v : all)
        if (min_ord_or_inf(v) == s) out.push_back(std::move(v));
    return out;
}

// lower bound for the covector support of xi |-> <u, chi E(.|xi)> with chi a
// ball of radius Ry, derived from closed-form payloads where possible
std::optional<Ord> xi_support_floor(const Distribution& u, Ord Ry) {
    switch (u.kind()) {
        case DistKind::Function: {
            const SBFunction* sb = u.sb_payload();
            if (!sb) return std::nullopt;
            return 1 - std::max(sb->constancy_bound(), Ry);
        }
        case DistKind::Tensor: {
            const Distribution *l = u.left_payload(), *r = u.right_payload();
            if (!l || !r) return std::nullopt;
            auto fl = xi_support_floor(*l, Ry), fr = xi_support_floor(*r, Ry);
            if (!fl || !fr) return std::nullopt;
            return std::min(*fl, *fr);
        }
        case DistKind::ProductBySB: {
            const Distribution* inner = u.left_payload();
            const SBFunction* sb = u.sb_payload();
            if (!inner || !sb) return std::nullopt;
            auto fi = xi_support_floor(*inner, Ry);
            if (!fi) return std::nullopt;
            return std::min(*fi, 1 - sb->constancy_bound());
        }
        default:
            return std::nullopt;
    }
}

}  // namespace

const char* dist_kind_name(DistKind k) {
    switch (k) {
        case DistKind::Function: return "function";
        case DistKind::Dirac: return "dirac";
        case DistKind::Graph: return "graph";
        case DistKind::FourierOf: return "fourier-of";
        case DistKind::ProductBySB: return "product-by-sb";
        case DistKind::Tensor: return "tensor";
        case DistKind::Pullback: return "pullback";
        case DistKind::Custom: return "custom";
    }
    return "?";
}

SBFunction BallQuery::to_sb(const Context& ctx) const {
    return SBFunction::term(ctx, ctx.one(), center, alpha, freq);
}

Distribution::Distribution(const Context& ctx, size_t m, DistKind kind, Evaluator eval)
    : ctx_(&ctx), m_(m), kind_(kind), eval_(std::move(eval)) {}

MotivicScalar Distribution::evaluate_query(const BallQuery& q) const {
    if (!ctx_) throw InputError("evaluating an empty distribution");
    if (q.center.size() != m_ || q.freq.size() != m_)
        throw InputError("query dimension mismatch");
    BallQuery c;
    c.alpha = q.alpha;
    c.center.reserve(m_);
    for (const auto& x : q.center) c.center.push_back(x.reduced_mod(q.alpha));
    FieldVec lo(m_), hi(m_);
    bool hi_nonzero = false;
    for (size_t i = 0; i < m_; ++i) {
        lo[i] = q.freq[i].reduced_mod(1 - q.alpha);
        hi[i] = q.freq[i] - lo[i];
        hi_nonzero = hi_nonzero || !hi[i].is_zero_in_window();
    }
    c.freq = std::move(lo);
    MotivicScalar v = eval_(c);
    if (hi_nonzero) v = ctx_->psi_of(inner_product(c.center, hi)) * v;
    return v;
}

Distribution Distribution::with_sb_payload(SBFunction sb) const {
    Distribution d = *this;
    d.sb_ = std::move(sb);
    return d;
}

Distribution Distribution::with_graph_payload(expr::PolyMap g) const {
    Distribution d = *this;
    d.map_ = std::move(g);
    return d;
}

Distribution Distribution::with_parts(Distribution left, Distribution right) const {
    Distribution d = *this;
    d.left_ = std::make_shared<Distribution>(std::move(left));
    d.right_ = std::make_shared<Distribution>(std::move(right));
    return d;
}

// --- builders ---------------------------------------------------------------

Distribution from_sb(const SBFunction& phi, const Context& ctx) {
    SBFunction copy = phi;
    const Context* pc = &ctx;
    auto ev = [copy, pc](const BallQuery& q) {
        return integrate(multiply(copy, q.to_sb(*pc), *pc), *pc);
    };
    return Distribution(ctx, phi.m(), DistKind::Function, std::move(ev)).with_sb_payload(phi);
}

Distribution dirac(const FieldVec& x0, const Context& ctx) {
    FieldVec pt = x0;
    const Context* pc = &ctx;
    auto ev = [pt, pc](const BallQuery& q) {
        if (!vec_in_ball(pt, q.center, q.alpha)) return pc->zero();
        return pc->psi_of(inner_product(pt, q.freq));
    };
    return Distribution(ctx, x0.size(), DistKind::Dirac, std::move(ev));
}

Distribution graph_distribution(const expr::PolyMap& g, const Context& ctx) {
    size_t mx = g.m_in(), my = g.m_out();
    expr::PolyMap gc = g;
    const Context* pc = &ctx;
    auto ev = [gc, mx, my, pc](const BallQuery& q) {
        const Context& ctx = *pc;
        FieldVec cx(q.center.begin(), q.center.begin() + mx);
        FieldVec cy(q.center.begin() + mx, q.center.end());
        FieldVec fx(q.freq.begin(), q.freq.begin() + mx);
        FieldVec fy(q.freq.begin() + mx, q.freq.end());
        expr::BallDomain ball{cx, q.alpha};
        Ord ngf = grad_floor(gc, ball, ctx);
        Ord nrf = remainder_floor(gc, ball, ctx);
        Ord D = q.alpha;
        Ord fo = min_ord_or_inf(fx);
        if (!is_inf(fo)) D = std::max(D, 1 - fo);
        Ord eo = min_ord_or_inf(fy);
        if (!is_inf(eo)) {
            if (!is_inf(ngf)) D = std::max(D, 1 - eo - ngf);
            if (!is_inf(nrf)) D = std::max(D, ceil_half(1 - eo - nrf));
        }
        if (!is_inf(ngf)) D = std::max(D, q.alpha - ngf);
        if (!is_inf(nrf)) D = std::max(D, ceil_half(q.alpha - nrf));
        auto reps = enumerate_coset_reps(ctx.F(), cx, q.alpha, D, ctx.budget());
        std::vector<long long> counts(ctx.p(), 0);
        for (const auto& x : reps) {
            FieldVec y = gc.apply(x, ctx);
            if (!vec_in_ball(y, cy, q.alpha)) continue;
            uint32_t k = (inner_product(x, fx) + inner_product(y, fy)).character_exponent();
            counts[k] += 1;
        }
        MotivicScalar acc = ctx.zero();
        for (uint32_t k = 0; k < ctx.p(); ++k)
            if (counts[k] != 0)
                acc = acc + MotivicScalar::of_cyclotomic(
                                CyclotomicInteger::zeta_pow(ctx.p(), k) * BigInt(counts[k]));
        return acc.times_L_pow(-static_cast<long long>(mx) * D);
    };
    return Distribution(ctx, mx + my, DistKind::Graph, std::move(ev)).with_graph_payload(g);
}

Distribution from_sb_composed(const SBFunction& psi, const expr::PolyMap& f, const Context& ctx) {
    if (psi.m() != f.m_out()) throw InputError("composed density: dimension mismatch");
    SBFunction copy = psi;
    expr::PolyMap fc = f;
    const Context* pc = &ctx;
    size_t mx = f.m_in();
    auto ev = [copy, fc, mx, pc](const BallQuery& q) {
        const Context& ctx = *pc;
        expr::BallDomain ball{q.center, q.alpha};
        Ord ngf = grad_floor(fc, ball, ctx);
        Ord nrf = remainder_floor(fc, ball, ctx);
        Ord cb = copy.constancy_bound();
        Ord D = q.alpha;
        Ord fo = min_ord_or_inf(q.freq);
        if (!is_inf(fo)) D = std::max(D, 1 - fo);
        if (!is_inf(ngf)) D = std::max(D, cb - ngf);
        if (!is_inf(nrf)) D = std::max(D, ceil_half(cb - nrf));
        auto reps = enumerate_coset_reps(ctx.F(), q.center, q.alpha, D, ctx.budget());
        MotivicScalar acc = ctx.zero();
        for (const auto& x : reps) {
            MotivicScalar v = evaluate(copy, fc.apply(x, ctx), ctx);
            if (v.is_zero()) continue;
            acc = acc + v * ctx.psi_of(inner_product(x, q.freq));
        }
        return acc.times_L_pow(-static_cast<long long>(mx) * D);
    };
    return Distribution(ctx, mx, DistKind::Custom, std::move(ev));
}

// --- average formula ----------------------------------------------------------

MotivicScalar eval_on_sb_window(const Distribution& u, const SBFunction& phi, Ord a_minus,
                                Ord a_plus, const Context& ctx) {
    if (phi.is_zero()) return ctx.zero();
    if (u.m() != phi.m()) throw InputError("eval_on_sb: dimension mismatch");
    if (a_minus > phi.support_bound() || a_plus < phi.constancy_bound())
        throw InputError("eval_on_sb: window does not contain the function's window");
    auto reps = enumerate_coset_reps(ctx.F(), FieldVec(phi.m()), a_minus, a_plus, ctx.budget());
    MotivicScalar acc = ctx.zero();
    for (const auto& z : reps) {
        MotivicScalar w = evaluate(phi, z, ctx);
        if (w.is_zero()) continue;
        acc = acc + w * u.evaluate_query(BallQuery(z, a_plus));
    }
    return acc;
}

MotivicScalar eval_on_sb(const Distribution& u, const SBFunction& phi, const Context& ctx) {
    if (phi.is_zero()) return ctx.zero();
    return eval_on_sb_window(u, phi, phi.support_bound(),
                             std::max(phi.support_bound(), phi.constancy_bound()), ctx);
}

Distribution fourier_distribution(const Distribution& u, const Context& ctx) {
    Distribution uc = u;
    const Context* pc = &ctx;
    auto ev = [uc, pc](const BallQuery& q) {
        return eval_on_sb(uc, fourier(q.to_sb(*pc), *pc), *pc);
    };
    return Distribution(ctx, u.m(), DistKind::FourierOf, std::move(ev))
        .with_parts(u, Distribution());
}

Distribution product_by_sb(const SBFunction& phi, const Distribution& u, const Context& ctx) {
    if (phi.m() != u.m()) throw InputError("product_by_sb: dimension mismatch");
    SBFunction copy = phi;
    Distribution uc = u;
    const Context* pc = &ctx;
    auto ev = [copy, uc, pc](const BallQuery& q) {
        return eval_on_sb(uc, multiply(copy, q.to_sb(*pc), *pc), *pc);
    };
    return Distribution(ctx, u.m(), DistKind::ProductBySB, std::move(ev))
        .with_sb_payload(phi)
        .with_parts(u, Distribution());
}

// --- Paley-Wiener --------------------------------------------------------------

namespace {

SBFunction twist(const SBFunction& phi, const FieldVec& xi, const Context& ctx) {
    std::vector<SBTerm> ts = phi.terms();
    for (auto& t : ts)
        for (size_t i = 0; i < t.freq.size(); ++i) t.freq[i] = t.freq[i] + xi[i];
    return SBFunction(ctx, phi.m(), std::move(ts));
}

}  // namespace

PaleyWienerResult paley_wiener_check(const Distribution& u, const SBFunction& phi,
                                     Ord support_bound, Ord depth, const Context& ctx,
                                     size_t battery) {
    PaleyWienerResult out;
    size_t m = u.m();
    if (depth < support_bound) throw InputError("paley_wiener_check: depth below support bound");
    auto u_phi = [&](const FieldVec& xi) {
        return eval_on_sb(u, twist(phi, xi, ctx), ctx);
    };
    // reconstruct on B_{support_bound} at the stated depth
    auto reps = enumerate_coset_reps(ctx.F(), FieldVec(m), support_bound, depth, ctx.budget());
    std::vector<SBTerm> terms;
    for (const auto& rho : reps) {
        MotivicScalar v = u_phi(rho);
        // sampled local-constancy check one level deeper
        FieldVec probe = rho;
        probe[0] = probe[0] + ctx.t_pow(depth);
        MotivicScalar v2 = u_phi(probe);
        if (!(v.eval_at_q(ctx.q()) == v2.eval_at_q(ctx.q())))
            throw DataError("paley-wiener: sampled values inconsistent with local constancy at "
                            "depth " + std::to_string(depth) + " near covector " +
                            rho[0].to_text());
        if (v.is_zero()) continue;
        SBTerm t;
        t.coeff = v;
        t.center = rho;
        t.alpha = depth;
        t.freq = FieldVec(m);
        terms.push_back(std::move(t));
    }
    out.reconstruction = SBFunction(ctx, m, std::move(terms));
    // support verdict: the shell just below the claimed bound must vanish
    for (const auto& rho : shell_reps(ctx, m, support_bound - 1, depth)) {
        MotivicScalar v = u_phi(rho);
        if (!v.eval_at_q(ctx.q()).is_zero()) {
            out.ok = false;
            out.detail = "support bound violated at covector ord " +
                         std::to_string(support_bound - 1) + ": value " + v.to_text();
            return out;
        }
    }
    // roundtrip: Fbar(u_phi) = (L^{-m} phi) u on a query battery, where Fbar
    // is the conjugate transform reflect o F (so Fbar o F = L^{-m} id)
    Distribution lhs = from_sb(reflect(fourier(out.reconstruction, ctx), ctx), ctx);
    Distribution rhs = product_by_sb(phi, u, ctx);
    MotivicScalar scale = ctx.L(-static_cast<long long>(m));
    Rng rng(ctx.cfg().seed ^ 0x9A7E);
    auto queries = query_battery(rng, ctx, m, battery, -1, 2);
    for (const auto& spec : queries) {
        BallQuery q{spec.center, spec.alpha, spec.freq};
        CycRational a = lhs.evaluate_query(q).eval_at_q(ctx.q());
        CycRational b = (scale * rhs.evaluate_query(q)).eval_at_q(ctx.q());
        if (!(a == b)) {
            out.ok = false;
            out.detail = "roundtrip mismatch on a query: Fbar(u_phi) " + a.to_text() +
                         " vs L^-m phi u " + b.to_text();
            return out;
        }
    }
    out.ok = true;
    return out;
}

// --- tensor --------------------------------------------------------------------

FubiniReport fubini_symmetry_check(const Distribution& u, const Distribution& v,
                                   const Context& ctx, size_t samples) {
    FubiniReport rep;
    size_t mu = u.m(), mv = v.m();
    Rng rng(ctx.cfg().seed ^ 0xF0B1);
    for (size_t s = 0; s < samples; ++s) {
        SBFunction phi = random_sb_function(rng, ctx, mu + mv, 2, -1, 1, true);
        if (phi.is_zero()) continue;
        Ord D = std::max(phi.constancy_bound(), phi.support_bound());
        SBFunction cells = refine_to_depth(phi, D, ctx);
        std::vector<SBTerm> tx, ty;
        for (const auto& c : cells.terms()) {
            FieldVec cx(c.center.begin(), c.center.begin() + mu);
            FieldVec cy(c.center.begin() + mu, c.center.end());
            SBTerm a;
            a.coeff = c.coeff * v.evaluate_query(BallQuery(cy, D));
            a.center = cx;
            a.alpha = D;
            a.freq = FieldVec(mu);
            tx.push_back(std::move(a));
            SBTerm b;
            b.coeff = c.coeff * u.evaluate_query(BallQuery(cx, D));
            b.center = cy;
            b.alpha = D;
            b.freq = FieldVec(mv);
            ty.push_back(std::move(b));
        }
        MotivicScalar s1 = eval_on_sb(u, SBFunction(ctx, mu, std::move(tx)), ctx);
        MotivicScalar s2 = eval_on_sb(v, SBFunction(ctx, mv, std::move(ty)), ctx);
        if (!(s1.eval_at_q(ctx.q()) == s2.eval_at_q(ctx.q()))) {
            rep.ok = false;
            rep.witness = "iterated evaluations differ on sample " + std::to_string(s) + ": " +
                          s1.to_text() + " vs " + s2.to_text();
            return rep;
        }
    }
    return rep;
}

Distribution tensor(const Distribution& u, const Distribution& v, const Context& ctx,
                    size_t battery) {
    FubiniReport rep = fubini_symmetry_check(u, v, ctx, battery);
    if (!rep.ok) throw DataError("tensor undefined: " + rep.witness);
    size_t mu = u.m(), mv = v.m();
    Distribution uc = u, vc = v;
    auto ev = [uc, vc, mu, mv](const BallQuery& q) {
        FieldVec cx(q.center.begin(), q.center.begin() + mu);
        FieldVec cy(q.center.begin() + mu, q.center.end());
        FieldVec fx(q.freq.begin(), q.freq.begin() + mu);
        FieldVec fy(q.freq.begin() + mu, q.freq.end());
        return uc.evaluate_query(BallQuery(std::move(cx), q.alpha, std::move(fx))) *
               vc.evaluate_query(BallQuery(std::move(cy), q.alpha, std::move(fy)));
    };
    return Distribution(ctx, mu + mv, DistKind::Tensor, std::move(ev)).with_parts(u, v);
}

// --- pull-back -------------------------------------------------------------------

namespace {

struct PullbackCore {
    expr::PolyMap f;
    Distribution u;
    SmoothData data;
    const Context* pc;
    std::optional<Ord> Tu;

    MotivicScalar eval_core(const FieldVec& x0, Ord r, const FieldVec& xiq) const {
        const Context& ctx = *pc;
        size_t mx = f.m_in(), my = f.m_out();
        FieldVec y0 = f.apply(x0, ctx);
        // sampled validation of the R_x/R_y promise on this ball
        for (const auto& chd : enumerate_coset_reps(ctx.F(), x0, r, r + 1, ctx.budget())) {
            FieldVec yy = f.apply(chd, ctx);
            if (!vec_in_ball(yy, y0, data.R_y))
                throw DataError("smooth data violated: f does not map B(x0," + std::to_string(r) +
                                ") into B(f(x0)," + std::to_string(data.R_y) + ") near " +
                                chd[0].to_text());
        }
        Ord beta = std::min(min_ord_or_inf(y0), data.R_y);
        Ord Thigh = 1 - beta;
        Ord aq = r;
        Ord fo = min_ord_or_inf(xiq);
        if (!is_inf(fo)) aq = std::max(aq, 1 - fo);
        std::optional<Ord> Tosc;
        if (data.N_delta && data.N_R)
            Tosc = -(std::max(*data.N_delta - *data.N_R + 1, aq)) - *data.N_delta;
        Ord Tlow = kOrdInf;
        if (data.xi_ord_min) Tlow = std::min(Tlow, *data.xi_ord_min);
        if (Tu) Tlow = std::min(Tlow, *Tu);
        if (Tosc) Tlow = std::min(Tlow, *Tosc);
        if (is_inf(Tlow))
            throw DataError("pullback: no covector truncation bound available (supply "
                            "xi_ord_min or N_delta/N_R, or use a closed-form distribution)");
        Tlow = std::min(Tlow, Thigh);

        // depth of the inner x-sum, uniform over the enumerated covectors
        expr::BallDomain ball{x0, r};
        Ord ngf = grad_floor(f, ball, ctx);
        Ord nrf = data.N_R ? *data.N_R : remainder_floor(f, ball, ctx);
        auto x_depth = [&](Ord rho_min) {
            Ord D = aq;
            if (!is_inf(ngf)) D = std::max(D, 1 - rho_min - ngf);
            if (!is_inf(nrf)) D = std::max(D, ceil_half(1 - rho_min - nrf));
            return std::max(D, r);
        };
        Ord Dx = x_depth(Tlow);

        MotivicScalar acc = ctx.zero();
        auto rhos = enumerate_coset_reps(ctx.F(), FieldVec(my), Tlow, Thigh, ctx.budget());
        for (const auto& rho : rhos) {
            MotivicScalar a = u.evaluate_query(BallQuery(y0, data.R_y, rho));
            if (a.is_zero()) continue;
            MotivicScalar b = osc_ball_sum(x0, r, xiq, f, rho, Dx, ctx);
            if (b.is_zero()) continue;
            acc = acc + a * b;
        }
        MotivicScalar value = acc.times_L_pow(-static_cast<long long>(my) * Thigh);

        // sampled verification of the truncation: shells below Tlow vanish
        for (int sh = 1; sh <= data.verify_shells; ++sh) {
            Ord s = Tlow - sh;
            Ord Ds = x_depth(s);
            for (const auto& rho : shell_reps(ctx, my, s, std::min(Thigh, s + 2))) {
                MotivicScalar a = u.evaluate_query(BallQuery(y0, data.R_y, rho));
                if (a.is_zero()) continue;
                MotivicScalar b = osc_ball_sum(x0, r, xiq, f, rho, Ds, ctx);
                if (!(a * b).eval_at_q(ctx.q()).is_zero())
                    throw DataError("smooth data violated: covector shell ord " +
                                    std::to_string(s) + " contributes a nonzero term near " +
                                    rho[0].to_text());
            }
        }
        // normalization making densities pull back with the L^{-m_x} law
        return value.times_L_pow(static_cast<long long>(my) - static_cast<long long>(mx));
    }

    MotivicScalar operator()(const BallQuery& q) const {
        const Context& ctx = *pc;
        if (q.alpha >= data.R_x) return eval_core(q.center, q.alpha, q.freq);
        MotivicScalar acc = ctx.zero();
        for (const auto& child :
             enumerate_coset_reps(ctx.F(), q.center, q.alpha, data.R_x, ctx.budget()))
            acc = acc + eval_core(child, data.R_x, q.freq);
        return acc;
    }
};

}  // namespace

Distribution pullback(const expr::PolyMap& f, const Distribution& u, const SmoothData& data,
                      const Context& ctx) {
    if (u.m() != f.m_out()) throw InputError("pullback: distribution lives on the target space");
    PullbackCore core{f, u, data, &ctx, xi_support_floor(u, data.R_y)};
    return Distribution(ctx, f.m_in(), DistKind::Pullback, core)
        .with_graph_payload(f)
        .with_parts(u, Distribution());
}

Distribution diagonal_product(const Distribution& u, const Distribution& v,
                              const SmoothData& data, const Context& ctx) {
    if (u.m() != v.m()) throw InputError("product: dimension mismatch");
    size_t m = u.m();
    Distribution uv = tensor(u, v, ctx);
    // sampled cancelling-covector battery: pairs (xi, -xi) must be smooth
    // directions of u (x) v, otherwise the diagonal data cannot exist.
    Rng rng(ctx.cfg().seed ^ 0xD1A6);
    int n = ctx.cfg().lambda_n;
    for (int trial = 0; trial < 3; ++trial) {
        FieldVec xi(m), x0(m);
        for (size_t i = 0; i < m; ++i) {
            xi[i] = random_field_element(rng, ctx, 0, 0, trial == 0 && i > 0);
            if (trial > 0) x0[i] = random_field_element(rng, ctx, 0, 1);
        }
        if (is_inf(min_ord_or_inf(xi))) xi[0] = ctx.fe_one();
        int deep = 3;
        FieldVec lam_xi(2 * m);
        FieldElement lam = ctx.t_pow(-static_cast<Ord>(deep) * n);
        for (size_t i = 0; i < m; ++i) {
            lam_xi[i] = lam * xi[i];
            lam_xi[m + i] = -(lam * xi[i]);
        }
        FieldVec cc(2 * m);
        for (size_t i = 0; i < m; ++i) cc[i] = cc[m + i] = x0[i];
        MotivicScalar val =
            uv.evaluate_query(BallQuery(std::move(cc), data.R_x, std::move(lam_xi)));
        if (!val.eval_at_q(ctx.q()).is_zero())
            throw DataError("product undefined: cancelling covectors (xi, -xi) are not smooth "
                            "for the tensor (witness at ord lambda = " +
                            std::to_string(-deep * n) + ")");
    }
    expr::PolyMap diag = expr::PolyMap::identity(m);
    for (size_t i = 0; i < m; ++i) diag.comps.push_back(diag.comps[i]);
    return pullback(diag, uv, data, ctx);
}

// --- parameter families ------------------------------------------------------

ParamFamily param_pullback(const std::vector<size_t>& F, const ParamFamily& fam,
                           std::vector<std::string> labels) {
    ParamFamily out;
    out.labels = std::move(labels);
    for (size_t i = 0; i < F.size(); ++i) {
        if (F[i] >= fam.members.size()) throw InputError("param_pullback: index out of range");
        out.members.push_back(fam.members[F[i]]);
    }
    if (out.labels.size() != out.members.size())
        throw InputError("param_pullback: label count mismatch");
    return out;
}

ParamFamily param_pushforward(const std::vector<size_t>& F, const ParamFamily& fam,
                              size_t n_out, std::vector<std::string> labels,
                              const Context& ctx) {
    if (F.size() != fam.members.size()) throw InputError("param_pushforward: map size mismatch");
    ParamFamily out;
    out.labels = std::move(labels);
    for (size_t w = 0; w < n_out; ++w) {
        std::vector<Distribution> fiber;
        for (size_t i = 0; i < F.size(); ++i)
            if (F[i] == w) fiber.push_back(fam.members[i]);
        if (fiber.empty()) throw InputError("param_pushforward: empty fiber");
        size_t m = fiber[0].m();
        const Context* pc = &ctx;
        auto ev = [fiber, pc](const BallQuery& q) {
            MotivicScalar acc = pc->zero();
            for (const auto& d : fiber) acc = acc + d.evaluate_query(q);
            return acc;
        };
        out.members.push_back(Distribution(ctx, m, DistKind::Custom, std::move(ev)));
    }
    if (out.labels.size() != out.members.size())
        throw InputError("param_pushforward: label count mismatch");
    return out;
}

std::string param_compat_check(const std::vector<size_t>& F, const ParamFamily& fam,
                               const ParamFamily& pulled, const ParamFamily& pushed,
                               const Context& ctx, size_t battery) {
    Rng rng(ctx.cfg().seed ^ 0x9998);
    size_t m = fam.members.empty() ? 1 : fam.members[0].m();
    auto queries = query_battery(rng, ctx, m, battery, -1, 1);
    for (const auto& spec : queries) {
        BallQuery q{spec.center, spec.alpha, spec.freq};
        for (size_t i = 0; i < pulled.members.size(); ++i) {
            CycRational a = pulled.members[i].evaluate_query(q).eval_at_q(ctx.q());
            CycRational b = fam.members[F[i]].evaluate_query(q).eval_at_q(ctx.q());
            if (!(a == b)) return "pull-back compatibility fails at member " + std::to_string(i);
        }
        for (size_t w = 0; w < pushed.members.size(); ++w) {
            CycRational a = pushed.members[w].evaluate_query(q).eval_at_q(ctx.q());
            CycRational b = CycRational::zero(ctx.p());
            for (size_t i = 0; i < F.size(); ++i)
                if (F[i] == w) b = b + fam.members[i].evaluate_query(q).eval_at_q(ctx.q());
            if (!(a == b)) return "push-forward compatibility fails at fiber " + std::to_string(w);
        }
    }
    return {};
}

}  // namespace tadic
