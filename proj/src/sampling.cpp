#include "tadic/sampling.hpp"

namespace tadic {

FieldElement random_field_element(Rng& rng, const Context& ctx, Ord ord_lo, Ord ord_hi,
                                  bool allow_zero) {
    if (allow_zero && draw(rng, 0, 4) == 0) return FieldElement();
    Ord o = draw(rng, ord_lo, ord_hi);
    Ord span = draw(rng, 1, 3);
    std::vector<ResidueElement> cs;
    cs.push_back(ResidueElement(&ctx.F(), static_cast<uint32_t>(draw(rng, 1, ctx.q() - 1))));
    for (Ord k = 1; k < span; ++k)
        cs.push_back(ResidueElement(&ctx.F(), static_cast<uint32_t>(draw(rng, 0, ctx.q() - 1))));
    return FieldElement::from_coeffs(ctx.F(), o, std::move(cs));
}

MotivicScalar random_scalar(Rng& rng, const Context& ctx) {
    CyclotomicInteger z = CyclotomicInteger::of_int(ctx.p(), draw(rng, -2, 2));
    if (ctx.p() > 2 && draw(rng, 0, 1) == 0)
        z = z + CyclotomicInteger::zeta_pow(ctx.p(), 1) * BigInt(draw(rng, 1, 2));
    if (z.is_zero()) z = CyclotomicInteger::of_int(ctx.p(), 1);
    MotivicScalar s = MotivicScalar::of_cyclotomic(z).times_L_pow(draw(rng, -2, 2));
    if (draw(rng, 0, 3) == 0) s = s * MotivicScalar::inv_one_minus_L_neg(ctx.p(), draw(rng, 1, 2));
    return s;
}

SBFunction random_sb_function(Rng& rng, const Context& ctx, size_t m, size_t max_terms,
                              Ord ord_lo, Ord ord_hi, bool with_freq) {
    size_t nterms = static_cast<size_t>(draw(rng, 1, static_cast<long long>(max_terms)));
    std::vector<SBTerm> terms;
    for (size_t k = 0; k < nterms; ++k) {
        SBTerm t;
        t.coeff = random_scalar(rng, ctx);
        t.alpha = draw(rng, ord_lo, ord_hi);
        for (size_t i = 0; i < m; ++i)
            t.center.push_back(random_field_element(rng, ctx, ord_lo, ord_hi));
        for (size_t i = 0; i < m; ++i) {
            bool tw = with_freq && draw(rng, 0, 1) == 0;
            t.freq.push_back(tw ? random_field_element(rng, ctx, ord_lo, ord_hi)
                                : FieldElement());
        }
        terms.push_back(std::move(t));
    }
    return SBFunction(ctx, m, std::move(terms));
}

std::vector<BallQuerySpec> query_battery(Rng& rng, const Context& ctx, size_t m, size_t count,
                                         Ord ord_lo, Ord ord_hi) {
    std::vector<BallQuerySpec> out;
    for (size_t k = 0; k < count; ++k) {
        BallQuerySpec q;
        q.alpha = draw(rng, ord_lo, ord_hi + 1);
        for (size_t i = 0; i < m; ++i)
            q.center.push_back(random_field_element(rng, ctx, ord_lo, ord_hi));
        bool tw = draw(rng, 0, 1) == 0;
        for (size_t i = 0; i < m; ++i)
            q.freq.push_back(tw ? random_field_element(rng, ctx, -ord_hi, ord_hi)
                                : FieldElement());
        out.push_back(std::move(q));
    }
    return out;
}

}  // namespace tadic
