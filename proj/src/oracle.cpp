#include "tadic/oracle.hpp"

namespace tadic {

namespace {

// q^k as an exact rational (k may be negative).
CycRational q_pow(const Context& ctx, long long k) {
    BigInt num = 1, den = 1;
    for (long long i = 0; i < (k >= 0 ? k : -k); ++i) (k >= 0 ? num : den) *= ctx.q();
    return CycRational(CyclotomicInteger::of_int(ctx.p(), num), den);
}

CycRational zeta_q(const Context& ctx, uint32_t k) {
    return CycRational(CyclotomicInteger::zeta_pow(ctx.p(), k));
}

bool in_ball(const FieldVec& x, const FieldVec& c, Ord alpha) {
    for (size_t i = 0; i < x.size(); ++i) {
        FieldElement d = x[i] - c[i];
        if (d.is_zero_in_window()) {
            if (!d.is_exact() && d.prec() < alpha)
                throw PrecisionError("oracle: ball membership not certified");
            continue;
        }
        if (d.ord() < alpha) return false;
    }
    return true;
}

}  // namespace

CycRational evaluate_at_q(const SBFunction& phi, const FieldVec& x, const Context& ctx) {
    CycRational acc = CycRational::zero(ctx.p());
    for (const auto& t : phi.terms()) {
        if (!in_ball(x, t.center, t.alpha)) continue;
        uint32_t k = inner_product(x, t.freq).character_exponent();
        acc = acc + t.coeff.eval_at_q(ctx.q()) * zeta_q(ctx, k);
    }
    return acc;
}

CycRational brute_fourier_value(const SBFunction& phi, const FieldVec& y, const Context& ctx) {
    long long m = static_cast<long long>(phi.m());
    if (phi.is_zero()) return CycRational::zero(ctx.p());
    Ord lo = phi.support_bound();
    Ord D = phi.constancy_bound();
    for (const auto& yi : y)
        if (!yi.is_zero_in_window()) D = std::max(D, 1 - yi.ord());
    D = std::max(D, lo);
    auto reps = enumerate_coset_reps(ctx.F(), FieldVec(phi.m()), lo, D, ctx.budget());
    // per-term coefficient values are independent of x; count zeta-power
    // classes per term with plain integers, then combine.
    std::vector<std::vector<long long>> counts(phi.terms().size(),
                                               std::vector<long long>(ctx.p(), 0));
    for (const auto& x : reps) {
        uint32_t ky = inner_product(x, y).character_exponent();
        for (size_t ti = 0; ti < phi.terms().size(); ++ti) {
            const auto& t = phi.terms()[ti];
            if (!in_ball(x, t.center, t.alpha)) continue;
            uint32_t kt = inner_product(x, t.freq).character_exponent();
            counts[ti][(kt + ky) % ctx.p()] += 1;
        }
    }
    CycRational acc = CycRational::zero(ctx.p());
    for (size_t ti = 0; ti < phi.terms().size(); ++ti) {
        CyclotomicInteger sum(ctx.p());
        for (uint32_t k = 0; k < ctx.p(); ++k) {
            if (counts[ti][k] == 0) continue;
            sum = sum + CyclotomicInteger::zeta_pow(ctx.p(), k) * BigInt(counts[ti][k]);
        }
        acc = acc + phi.terms()[ti].coeff.eval_at_q(ctx.q()) * CycRational(sum);
    }
    return acc * q_pow(ctx, -m * D);
}

CycRational brute_integral(const SBFunction& phi, const Context& ctx) {
    if (phi.is_zero()) return CycRational::zero(ctx.p());
    long long m = static_cast<long long>(phi.m());
    Ord lo = phi.support_bound();
    Ord D = std::max(phi.constancy_bound(), lo);
    auto reps = enumerate_coset_reps(ctx.F(), FieldVec(phi.m()), lo, D, ctx.budget());
    CycRational acc = CycRational::zero(ctx.p());
    for (const auto& x : reps) acc = acc + evaluate_at_q(phi, x, ctx);
    return acc * q_pow(ctx, -m * D);
}

CycRational brute_convolution_value(const SBFunction& phi, const SBFunction& psi,
                                    const FieldVec& z, const Context& ctx) {
    if (phi.is_zero() || psi.is_zero()) return CycRational::zero(ctx.p());
    long long m = static_cast<long long>(phi.m());
    Ord lo = phi.support_bound();
    Ord D = std::max({phi.constancy_bound(), psi.constancy_bound(), lo});
    auto reps = enumerate_coset_reps(ctx.F(), FieldVec(phi.m()), lo, D, ctx.budget());
    CycRational acc = CycRational::zero(ctx.p());
    for (const auto& x : reps) {
        CycRational vx = evaluate_at_q(phi, x, ctx);
        if (vx.is_zero()) continue;
        FieldVec zx(z.size());
        for (size_t i = 0; i < z.size(); ++i) zx[i] = z[i] - x[i];
        acc = acc + vx * evaluate_at_q(psi, zx, ctx);
    }
    return acc * q_pow(ctx, -m * D);
}

OracleReport oracle_compare_fourier(const SBFunction& phi, const std::vector<FieldVec>& covectors,
                                    const Context& ctx, bool inject_error) {
    OracleReport rep;
    SBFunction sym = fourier(phi, ctx);
    if (inject_error) sym = sym.scaled(ctx.L(1), ctx);
    for (const auto& y : covectors) {
        CycRational symbolic = evaluate_at_q(sym, y, ctx);
        CycRational brute = brute_fourier_value(phi, y, ctx);
        ++rep.checked;
        if (!(symbolic == brute)) {
            rep.ok = false;
            rep.mismatch = "fourier mismatch at covector (" +
                           (y.empty() ? std::string() : y[0].to_text()) + ", ...): symbolic " +
                           symbolic.to_text() + " vs brute " + brute.to_text();
            return rep;
        }
    }
    return rep;
}

}  // namespace tadic
