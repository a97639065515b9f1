#include "tadic/schwartz.hpp"

#include <algorithm>
#include <sstream>

namespace tadic {

namespace {

// Canonicalize one term in place; returns false when the coefficient died.
bool canonicalize_term(SBTerm& t, const Context& ctx) {
    size_t m = t.center.size();
    if (t.freq.size() != m) throw InputError("term with mismatched center/frequency dimension");
    // center modulo t^alpha
    for (auto& c : t.center) c = c.reduced_mod(t.alpha);
    // split the frequency at conductor 1-alpha and fold the dropped phase
    FieldVec lo(m), hi(m);
    for (size_t i = 0; i < m; ++i) {
        lo[i] = t.freq[i].reduced_mod(1 - t.alpha);
        hi[i] = t.freq[i] - lo[i];
    }
    bool hi_nonzero = false;
    for (const auto& h : hi) hi_nonzero = hi_nonzero || !h.is_zero_in_window();
    if (hi_nonzero) {
        FieldElement phase = inner_product(t.center, hi);
        t.coeff = t.coeff * ctx.psi_of(phase);
    }
    t.freq = std::move(lo);
    // exactness of the canonical data is guaranteed by reduced_mod
    return !t.coeff.is_zero();
}

// canonical key for merging and deterministic order
int compare_vec(const FieldVec& a, const FieldVec& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        int c = FieldElement::compare(a[i], b[i]);
        if (c != 0) return c;
    }
    return 0;
}

int compare_key(const SBTerm& a, const SBTerm& b) {
    if (a.alpha != b.alpha) return a.alpha < b.alpha ? -1 : 1;
    int c = compare_vec(a.center, b.center);
    if (c != 0) return c;
    return compare_vec(a.freq, b.freq);
}

}  // namespace

SBFunction::SBFunction(const Context& ctx, size_t m, std::vector<SBTerm> terms) : m_(m) {
    std::vector<SBTerm> canon;
    for (auto& t : terms) {
        if (t.center.size() != m) throw InputError("term dimension differs from function dimension");
        if (canonicalize_term(t, ctx)) canon.push_back(std::move(t));
    }
    std::sort(canon.begin(), canon.end(),
              [](const SBTerm& a, const SBTerm& b) { return compare_key(a, b) < 0; });
    for (auto& t : canon) {
        if (!terms_.empty() && compare_key(terms_.back(), t) == 0) {
            terms_.back().coeff = terms_.back().coeff + t.coeff;
            if (terms_.back().coeff.is_zero()) terms_.pop_back();
        } else {
            terms_.push_back(std::move(t));
        }
    }
}

SBFunction SBFunction::ball(const Context& ctx, size_t m, Ord alpha) {
    return term(ctx, ctx.one(), FieldVec(m), alpha, FieldVec(m));
}

SBFunction SBFunction::term(const Context& ctx, MotivicScalar coeff, FieldVec c, Ord alpha,
                            FieldVec xi) {
    size_t m = c.size();
    SBTerm t{std::move(coeff), std::move(c), alpha, std::move(xi)};
    return SBFunction(ctx, m, {std::move(t)});
}

Ord SBFunction::support_bound() const {
    if (terms_.empty()) return 0;
    Ord b = kOrdInf;
    for (const auto& t : terms_) {
        Ord c = t.alpha;
        for (const auto& ci : t.center)
            if (!ci.is_zero_in_window()) c = std::min(c, ci.ord());
        b = std::min(b, c);
    }
    return b;
}

Ord SBFunction::constancy_bound() const {
    if (terms_.empty()) return 0;
    Ord b = -kOrdInf;
    for (const auto& t : terms_) {
        Ord c = t.alpha;
        for (const auto& xi : t.freq)
            if (!xi.is_zero_in_window()) c = std::max(c, 1 - xi.ord());
        b = std::max(b, c);
    }
    return b;
}

bool SBFunction::equals(const SBFunction& o) const {
    if (m_ != o.m_ || terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i) {
        if (compare_key(terms_[i], o.terms_[i]) != 0) return false;
        if (!terms_[i].coeff.equals(o.terms_[i].coeff)) return false;
    }
    return true;
}

SBFunction SBFunction::scaled(const MotivicScalar& s, const Context& ctx) const {
    std::vector<SBTerm> ts = terms_;
    for (auto& t : ts) t.coeff = t.coeff * s;
    return SBFunction(ctx, m_, std::move(ts));
}

SBFunction SBFunction::plus(const SBFunction& o, const Context& ctx) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (m_ != o.m_) throw InputError("adding functions of different dimension");
    std::vector<SBTerm> ts = terms_;
    ts.insert(ts.end(), o.terms_.begin(), o.terms_.end());
    return SBFunction(ctx, m_, std::move(ts));
}

std::string SBFunction::to_text() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) os << "  +  ";
        first = false;
        os << '[' << t.coeff.to_text() << "] * 1_B((";
        for (size_t i = 0; i < t.center.size(); ++i) {
            if (i) os << "; ";
            os << t.center[i].to_text();
        }
        os << "), " << t.alpha << ")";
        bool tw = false;
        for (const auto& x : t.freq) tw = tw || !x.is_zero_in_window();
        if (tw) {
            os << " * E(x | (";
            for (size_t i = 0; i < t.freq.size(); ++i) {
                if (i) os << "; ";
                os << t.freq[i].to_text();
            }
            os << "))";
        }
    }
    return os.str();
}

MotivicScalar evaluate(const SBFunction& f, const FieldVec& x, const Context& ctx) {
    if (x.size() != f.m()) throw InputError("evaluate: point dimension mismatch");
    MotivicScalar acc = ctx.zero();
    for (const auto& t : f.terms()) {
        bool inside = true;
        for (size_t i = 0; i < x.size() && inside; ++i) {
            FieldElement d = x[i] - t.center[i];
            if (d.is_zero_in_window()) {
                if (!d.is_exact() && d.prec() < t.alpha)
                    throw PrecisionError("membership in the ball cannot be certified");
            } else {
                inside = d.ord() >= t.alpha;
            }
        }
        if (!inside) continue;
        MotivicScalar v = t.coeff;
        FieldElement phase = inner_product(x, t.freq);
        acc = acc + v * ctx.psi_of(phase);
    }
    return acc;
}

SBFunction fourier(const SBFunction& f, const Context& ctx) {
    long long m = static_cast<long long>(f.m());
    std::vector<SBTerm> out;
    for (const auto& t : f.terms()) {
        SBTerm r;
        r.coeff = t.coeff * ctx.psi_of(inner_product(t.center, t.freq));
        r.coeff = r.coeff.times_L_pow(-m * t.alpha);
        r.alpha = 1 - t.alpha;
        r.center.reserve(t.freq.size());
        for (const auto& xi : t.freq) r.center.push_back(-xi);
        r.freq = t.center;
        out.push_back(std::move(r));
    }
    return SBFunction(ctx, f.m(), std::move(out));
}

SBFunction reflect(const SBFunction& f, const Context& ctx) {
    std::vector<SBTerm> out;
    for (const auto& t : f.terms()) {
        SBTerm r = t;
        for (auto& c : r.center) c = -c;
        for (auto& x : r.freq) x = -x;
        out.push_back(std::move(r));
    }
    return SBFunction(ctx, f.m(), std::move(out));
}

SBFunction fourier_inverse(const SBFunction& f, const Context& ctx) {
    long long m = static_cast<long long>(f.m());
    return fourier(reflect(f, ctx), ctx).scaled(ctx.L(m), ctx);
}

SBFunction multiply(const SBFunction& f, const SBFunction& g, const Context& ctx) {
    if (f.m() != g.m()) throw InputError("multiply: dimension mismatch");
    std::vector<SBTerm> out;
    for (const auto& a : f.terms()) {
        for (const auto& b : g.terms()) {
            const SBTerm& small = a.alpha <= b.alpha ? a : b;  // bigger ball
            const SBTerm& large = a.alpha <= b.alpha ? b : a;  // smaller ball
            bool meet = true;
            for (size_t i = 0; i < f.m() && meet; ++i) {
                FieldElement d = large.center[i] - small.center[i];
                if (!d.is_zero_in_window()) meet = d.ord() >= small.alpha;
            }
            if (!meet) continue;
            SBTerm r;
            r.coeff = a.coeff * b.coeff;
            r.center = large.center;
            r.alpha = large.alpha;
            r.freq.reserve(f.m());
            for (size_t i = 0; i < f.m(); ++i) r.freq.push_back(a.freq[i] + b.freq[i]);
            out.push_back(std::move(r));
        }
    }
    return SBFunction(ctx, f.m(), std::move(out));
}

MotivicScalar integrate(const SBFunction& f, const Context& ctx) {
    long long m = static_cast<long long>(f.m());
    MotivicScalar acc = ctx.zero();
    for (const auto& t : f.terms()) {
        bool flat = true;
        for (const auto& xi : t.freq)
            if (!xi.is_zero_in_window()) flat = flat && xi.ord() >= 1 - t.alpha;
        if (!flat) continue;
        MotivicScalar v = t.coeff * ctx.psi_of(inner_product(t.center, t.freq));
        acc = acc + v.times_L_pow(-m * t.alpha);
    }
    return acc;
}

SBFunction convolve(const SBFunction& f, const SBFunction& g, const Context& ctx) {
    if (f.m() != g.m()) throw InputError("convolve: dimension mismatch");
    return fourier_inverse(multiply(fourier(f, ctx), fourier(g, ctx), ctx), ctx);
}

SBFunction translate(const SBFunction& f, const FieldVec& a, const Context& ctx) {
    if (a.size() != f.m()) throw InputError("translate: dimension mismatch");
    std::vector<SBTerm> out;
    for (const auto& t : f.terms()) {
        SBTerm r = t;
        for (size_t i = 0; i < a.size(); ++i) r.center[i] = r.center[i] + a[i];
        FieldElement phase = inner_product(a, t.freq);
        r.coeff = r.coeff * ctx.psi_of(-phase);
        out.push_back(std::move(r));
    }
    return SBFunction(ctx, f.m(), std::move(out));
}

SBFunction refine_to_depth(const SBFunction& f, Ord D, const Context& ctx) {
    if (f.is_zero()) return f;
    if (D < f.constancy_bound())
        throw InputError("refine_to_depth: depth is above the constancy bound");
    std::vector<SBTerm> out;
    for (const auto& t : f.terms()) {
        auto reps = enumerate_coset_reps(ctx.F(), t.center, t.alpha, D, ctx.budget());
        for (const auto& rep : reps) {
            SBTerm r;
            r.coeff = t.coeff * ctx.psi_of(inner_product(rep, t.freq));
            r.center = rep;
            r.alpha = D;
            r.freq = FieldVec(f.m());
            out.push_back(std::move(r));
        }
    }
    return SBFunction(ctx, f.m(), std::move(out));
}

}  // namespace tadic
