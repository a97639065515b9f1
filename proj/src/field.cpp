#include "tadic/field.hpp"

#include <algorithm>
#include <sstream>

namespace tadic {

const ResidueField* FieldElement::field_ptr() const {
    for (const auto& c : coeffs_)
        return &c.field();
    return nullptr;
}

const ResidueField& FieldElement::field() const {
    const ResidueField* f = field_ptr();
    if (!f) throw InputError("field element without stored coefficients has no field handle");
    return *f;
}

FieldElement FieldElement::zero(const ResidueField&) { return FieldElement(); }

FieldElement FieldElement::t_pow_scaled(const ResidueField& F, Ord k, long long c) {
    FieldElement x;
    ResidueElement r = ResidueElement::of_int(F, c);
    if (!r.is_zero()) {
        x.lead_ = k;
        x.coeffs_ = {r};
    }
    return x;
}

FieldElement FieldElement::from_coeffs(const ResidueField& F, Ord lead,
                                       std::vector<ResidueElement> coeffs, Ord prec) {
    FieldElement x;
    x.lead_ = lead;
    x.coeffs_ = std::move(coeffs);
    x.prec_ = prec;
    for (auto& c : x.coeffs_)
        if (c == ResidueElement()) c = ResidueElement::zero(F);
    x.strip();
    return x;
}

void FieldElement::strip() {
    size_t a = 0;
    while (a < coeffs_.size() && coeffs_[a].is_zero()) ++a;
    size_t b = coeffs_.size();
    while (b > a && coeffs_[b - 1].is_zero()) --b;
    if (a > 0 || b < coeffs_.size()) {
        coeffs_ = std::vector<ResidueElement>(coeffs_.begin() + a, coeffs_.begin() + b);
        lead_ += static_cast<Ord>(a);
    }
    if (coeffs_.empty()) lead_ = 0;
}

Ord FieldElement::ord() const {
    if (!coeffs_.empty()) return lead_;
    if (is_exact()) return kOrdInf;
    throw PrecisionError("ord cannot be certified: element is zero to precision " +
                         std::to_string(prec_) + " only");
}

Ord FieldElement::top_exp() const {
    if (coeffs_.empty()) throw InputError("top_exp of a zero element");
    return lead_ + static_cast<Ord>(coeffs_.size()) - 1;
}

ResidueElement FieldElement::ac() const {
    if (!coeffs_.empty()) return coeffs_.front();
    if (is_exact()) return ResidueElement();  // ac(0) = 0; caller-side zero
    throw PrecisionError("ac cannot be certified: element is zero to its window only");
}

ResidueElement FieldElement::coeff_at(Ord e) const {
    if (e >= prec_)
        throw PrecisionError("coefficient at exponent " + std::to_string(e) +
                             " is outside the precision window");
    if (coeffs_.empty() || e < lead_ || e >= lead_ + static_cast<Ord>(coeffs_.size()))
        return coeffs_.empty() ? ResidueElement() : ResidueElement::zero(field());
    return coeffs_[static_cast<size_t>(e - lead_)];
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    Ord prec = std::min(prec_, o.prec_);
    if (coeffs_.empty() && o.coeffs_.empty()) {
        FieldElement r;
        r.prec_ = prec;
        return r;
    }
    const ResidueField& F = coeffs_.empty() ? o.field() : field();
    Ord lo = kOrdInf, hi = -kOrdInf;
    if (!coeffs_.empty()) {
        lo = std::min(lo, lead_);
        hi = std::max(hi, lead_ + static_cast<Ord>(coeffs_.size()));
    }
    if (!o.coeffs_.empty()) {
        lo = std::min(lo, o.lead_);
        hi = std::max(hi, o.lead_ + static_cast<Ord>(o.coeffs_.size()));
    }
    hi = std::min(hi, prec);
    if (hi <= lo) {
        FieldElement r;
        r.prec_ = prec;
        return r;
    }
    std::vector<ResidueElement> cs(static_cast<size_t>(hi - lo), ResidueElement::zero(F));
    auto acc = [&](const FieldElement& x, bool negate) {
        for (size_t i = 0; i < x.coeffs_.size(); ++i) {
            Ord e = x.lead_ + static_cast<Ord>(i);
            if (e < lo || e >= hi) continue;
            ResidueElement v = negate ? -x.coeffs_[i] : x.coeffs_[i];
            cs[static_cast<size_t>(e - lo)] = cs[static_cast<size_t>(e - lo)] + v;
        }
    };
    acc(*this, false);
    acc(o, false);
    return from_coeffs(F, lo, std::move(cs), prec);
}

FieldElement FieldElement::operator-() const {
    FieldElement r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::operator*(const FieldElement& o) const {
    if (is_exact_zero() || o.is_exact_zero()) return FieldElement();
    // resulting window: min(ord_x + prec_y, ord_y + prec_x); a window-zero
    // contributes its prec as the ord lower bound.
    Ord orda = coeffs_.empty() ? prec_ : lead_;
    Ord ordb = o.coeffs_.empty() ? o.prec_ : o.lead_;
    Ord prec = std::min(ord_add(orda, o.prec_), ord_add(ordb, prec_));
    if (coeffs_.empty() || o.coeffs_.empty()) {
        FieldElement r;
        r.prec_ = prec;
        return r;
    }
    const ResidueField& F = field();
    size_t n = coeffs_.size(), m = o.coeffs_.size();
    Ord lo = lead_ + o.lead_;
    Ord hi = std::min(lo + static_cast<Ord>(n + m - 1), prec);
    if (hi <= lo) {
        FieldElement r;
        r.prec_ = prec;
        return r;
    }
    std::vector<ResidueElement> cs(static_cast<size_t>(hi - lo), ResidueElement::zero(F));
    for (size_t i = 0; i < n; ++i) {
        if (coeffs_[i].is_zero()) continue;
        for (size_t j = 0; j < m; ++j) {
            Ord e = lo + static_cast<Ord>(i + j);
            if (e >= hi) break;
            cs[static_cast<size_t>(e - lo)] =
                cs[static_cast<size_t>(e - lo)] + coeffs_[i] * o.coeffs_[j];
        }
    }
    return from_coeffs(F, lo, std::move(cs), prec);
}

FieldElement FieldElement::times_t_pow(Ord k) const {
    FieldElement r = *this;
    if (!r.coeffs_.empty()) r.lead_ += k;
    if (!is_inf(r.prec_)) r.prec_ += k;
    return r;
}

FieldElement FieldElement::reduced_mod(Ord N) const {
    if (prec_ < N)
        throw PrecisionError("cannot reduce modulo t^" + std::to_string(N) +
                             ": window ends at " + std::to_string(prec_));
    FieldElement r;
    if (!coeffs_.empty()) {
        const ResidueField& F = field();
        std::vector<ResidueElement> cs;
        for (size_t i = 0; i < coeffs_.size(); ++i) {
            Ord e = lead_ + static_cast<Ord>(i);
            if (e < N) cs.push_back(coeffs_[i]);
        }
        return from_coeffs(F, lead_, std::move(cs), kOrdInf);
    }
    return r;  // exact zero representative
}

FieldElement FieldElement::with_precision(Ord N) const {
    FieldElement r;
    r.prec_ = N;
    if (!coeffs_.empty()) {
        const ResidueField& F = field();
        std::vector<ResidueElement> cs;
        for (size_t i = 0; i < coeffs_.size(); ++i) {
            Ord e = lead_ + static_cast<Ord>(i);
            if (e < N) cs.push_back(coeffs_[i]);
        }
        return from_coeffs(F, lead_, std::move(cs), N);
    }
    return r;
}

bool FieldElement::same_exact(const FieldElement& o) const {
    if (!is_exact() || !o.is_exact())
        throw PrecisionError("structural equality requires exact elements");
    if (coeffs_.empty() || o.coeffs_.empty()) return coeffs_.empty() && o.coeffs_.empty();
    return lead_ == o.lead_ &&
           std::equal(coeffs_.begin(), coeffs_.end(), o.coeffs_.begin(), o.coeffs_.end());
}

int FieldElement::compare(const FieldElement& a, const FieldElement& b) {
    bool za = a.coeffs_.empty(), zb = b.coeffs_.empty();
    if (za || zb) return za && zb ? 0 : (za ? -1 : 1);
    if (a.lead_ != b.lead_) return a.lead_ < b.lead_ ? -1 : 1;
    size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
    for (size_t i = 0; i < n; ++i) {
        uint32_t ca = i < a.coeffs_.size() ? a.coeffs_[i].index() : 0;
        uint32_t cb = i < b.coeffs_.size() ? b.coeffs_[i].index() : 0;
        if (ca != cb) return ca < cb ? -1 : 1;
    }
    return 0;
}

uint32_t FieldElement::character_exponent() const {
    if (prec_ < 1)
        throw PrecisionError("character exponent needs the coefficient at t^0 certified");
    if (coeffs_.empty()) return 0;
    ResidueElement a0 = coeff_at(0);
    return a0.is_zero() ? 0 : a0.trace();
}

std::string FieldElement::to_text() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "t^" << (lead_ + static_cast<Ord>(i)) << '*' << coeffs_[i].to_text();
    }
    if (first) return "0";
    return os.str();
}

FieldElement FieldElement::parse(const ResidueField& F, const std::string& text) {
    size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto integer = [&]() -> long long {
        skip();
        size_t s = i;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
        size_t d = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == d) throw InputError("field parse: expected integer at " + std::to_string(i));
        return std::stoll(text.substr(s, i - s));
    };
    skip();
    if (text.compare(i, 1, "0") == 0 && (i + 1 >= text.size() ||
        text.find_first_not_of(" \t", i + 1) == std::string::npos))
        return FieldElement();
    FieldElement acc;
    bool any = false;
    while (true) {
        skip();
        if (text.compare(i, 2, "t^") != 0) throw InputError("field parse: expected t^ term");
        i += 2;
        Ord e = integer();
        skip();
        if (i >= text.size() || text[i] != '*') throw InputError("field parse: expected '*['");
        ++i;
        skip();
        if (i >= text.size() || text[i] != '[') throw InputError("field parse: expected '['");
        ++i;
        std::vector<uint32_t> coords;
        while (true) {
            long long v = integer();
            long long pm = static_cast<long long>(F.p());
            coords.push_back(static_cast<uint32_t>(((v % pm) + pm) % pm));
            skip();
            if (i < text.size() && text[i] == ',') {
                ++i;
                continue;
            }
            break;
        }
        skip();
        if (i >= text.size() || text[i] != ']') throw InputError("field parse: expected ']'");
        ++i;
        FieldElement term = from_coeffs(F, e, {ResidueElement(&F, F.from_coords(coords))});
        acc = any ? acc + term : term;
        any = true;
        skip();
        if (i < text.size() && text[i] == '+') {
            ++i;
            continue;
        }
        break;
    }
    skip();
    if (i != text.size()) throw InputError("field parse: trailing input");
    return acc;
}

FieldElement inner_product(std::span<const FieldElement> x, std::span<const FieldElement> xi) {
    if (x.size() != xi.size()) throw InputError("inner product: dimension mismatch");
    FieldElement acc;
    for (size_t i = 0; i < x.size(); ++i) acc = acc + x[i] * xi[i];
    return acc;
}

MotivicScalar psi(const ResidueField& F, const FieldElement& x) {
    return MotivicScalar::zeta_pow(F.p(), x.character_exponent());
}

Ord min_ord(std::span<const FieldElement> v) {
    Ord m = kOrdInf;
    for (const auto& x : v) m = std::min(m, x.ord());
    return m;
}

std::vector<FieldVec> enumerate_coset_reps(const ResidueField& F, const FieldVec& c, Ord alpha,
                                           Ord D, long long budget) {
    if (D < alpha) throw InputError("enumerate_coset_reps: D must be >= alpha");
    size_t m = c.size();
    long long digits = static_cast<long long>(m) * (D - alpha);
    long long count = 1;
    for (long long k = 0; k < digits; ++k) {
        count *= F.q();
        if (count > budget)
            throw BudgetError("coset enumeration of q^" + std::to_string(digits) +
                              " representatives exceeds budget " + std::to_string(budget));
    }
    std::vector<FieldVec> reps;
    reps.reserve(static_cast<size_t>(count));
    FieldVec base(m);
    for (size_t i = 0; i < m; ++i) base[i] = c[i].reduced_mod(alpha);
    // odometer over digits: coordinate-major, then exponent alpha..D-1
    std::vector<uint32_t> digit(static_cast<size_t>(digits), 0);
    size_t span = static_cast<size_t>(D - alpha);
    while (true) {
        FieldVec rep(m);
        for (size_t i = 0; i < m; ++i) {
            std::vector<ResidueElement> cs(span, ResidueElement::zero(F));
            for (size_t k = 0; k < span; ++k)
                cs[k] = ResidueElement(&F, digit[i * span + k]);
            FieldElement offs = FieldElement::from_coeffs(F, alpha, std::move(cs));
            rep[i] = base[i] + offs;
        }
        reps.push_back(std::move(rep));
        // increment (last digit fastest keeps lexicographic order)
        size_t k = digit.size();
        while (k > 0) {
            --k;
            if (++digit[k] < F.q()) break;
            digit[k] = 0;
            if (k == 0) return reps;
        }
        if (digit.empty()) return reps;
    }
}

}  // namespace tadic
