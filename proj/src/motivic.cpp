#include "tadic/motivic.hpp"

#include <cctype>
#include <sstream>

#include "tadic/residue.hpp"

namespace tadic {

LaurentPoly LaurentPoly::monomial(uint32_t p, long long exp, CyclotomicInteger coeff) {
    LaurentPoly r(p);
    r.add_term(exp, coeff);
    return r;
}

long long LaurentPoly::min_exp() const {
    if (terms_.empty()) throw InputError("min_exp of zero polynomial");
    return terms_.begin()->first;
}

long long LaurentPoly::max_exp() const {
    if (terms_.empty()) throw InputError("max_exp of zero polynomial");
    return terms_.rbegin()->first;
}

void LaurentPoly::add_term(long long exp, const CyclotomicInteger& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(exp);
    if (it == terms_.end()) {
        terms_.emplace(exp, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r(p_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    LaurentPoly r(p_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) r.add_term(e1 + e2, c1 * c2);
    return r;
}

LaurentPoly LaurentPoly::shifted(long long k) const {
    LaurentPoly r(p_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e + k, c);
    return r;
}

bool LaurentPoly::divide_exact_by_cyclo_factor(long long i, LaurentPoly* quotient) const {
    if (is_zero()) {
        *quotient = LaurentPoly(p_);
        return true;
    }
    // Shift to a plain polynomial and run long division by (L^i - 1) from the
    // top.  Remainder must vanish.
    long long base = min_exp();
    std::map<long long, CyclotomicInteger> work;
    for (const auto& [e, c] : terms_) work.emplace(e - base, c);
    LaurentPoly q(p_);
    while (!work.empty()) {
        auto top = work.rbegin();
        long long e = top->first;
        CyclotomicInteger c = top->second;
        if (e < i) return false;  // nonzero remainder of degree < i
        q.add_term(e - i + base, c);
        work.erase(std::prev(work.end()));
        // subtract c * (L^{e-i})(L^i - 1) => cancels top, adds c at e-i
        auto it = work.find(e - i);
        if (it == work.end()) {
            work.emplace(e - i, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) work.erase(it);
        }
    }
    *quotient = q;
    return true;
}

CycRational LaurentPoly::eval_at(long long q) const {
    if (is_zero()) return CycRational::zero(p_);
    long long lo = min_exp();
    long long shift = lo < 0 ? -lo : 0;
    CyclotomicInteger acc(p_);
    BigInt qb(q);
    for (const auto& [e, c] : terms_) {
        BigInt scale = 1;
        for (long long k = 0; k < e + shift; ++k) scale *= qb;
        acc = acc + c * scale;
    }
    BigInt den = 1;
    for (long long k = 0; k < shift; ++k) den *= qb;
    return CycRational(acc, den);
}

MotivicScalar::MotivicScalar(LaurentPoly num, std::map<long long, int> denom_factors,
                             long long denom_Lpow)
    : num_(std::move(num)), denom_(std::move(denom_factors)), denom_Lpow_(denom_Lpow) {
    normalize();
}

MotivicScalar MotivicScalar::of_int(uint32_t p, const BigInt& n) {
    return MotivicScalar(LaurentPoly::monomial(p, 0, CyclotomicInteger::of_int(p, n)), {}, 0);
}

MotivicScalar MotivicScalar::of_cyclotomic(CyclotomicInteger z) {
    uint32_t p = z.p();
    return MotivicScalar(LaurentPoly::monomial(p, 0, std::move(z)), {}, 0);
}

MotivicScalar MotivicScalar::L_pow(uint32_t p, long long k) {
    return MotivicScalar(LaurentPoly::monomial(p, k, CyclotomicInteger::of_int(p, 1)), {}, 0);
}

MotivicScalar MotivicScalar::zeta_pow(uint32_t p, long long k) {
    return of_cyclotomic(CyclotomicInteger::zeta_pow(p, k));
}

MotivicScalar MotivicScalar::inv_one_minus_L_neg(uint32_t p, long long i) {
    if (i <= 0) throw InputError("inv_one_minus_L_neg needs i > 0");
    return MotivicScalar(LaurentPoly::monomial(p, i, CyclotomicInteger::of_int(p, 1)),
                         {{i, 1}}, 0);
}

void MotivicScalar::normalize() {
    // Fold the denominator L-power into the (Laurent) numerator: L is a unit.
    if (denom_Lpow_ != 0) {
        num_ = num_.shifted(-denom_Lpow_);
        denom_Lpow_ = 0;
    }
    if (num_.is_zero()) {
        denom_.clear();
        return;
    }
    // Strip (L^i - 1) factors that divide the numerator exactly.
    for (auto it = denom_.begin(); it != denom_.end();) {
        while (it->second > 0) {
            LaurentPoly q(num_.p());
            if (!num_.divide_exact_by_cyclo_factor(it->first, &q)) break;
            num_ = q;
            --it->second;
        }
        it = it->second == 0 ? denom_.erase(it) : std::next(it);
    }
}

LaurentPoly MotivicScalar::denominator_poly() const {
    LaurentPoly d = LaurentPoly::monomial(p(), denom_Lpow_, CyclotomicInteger::of_int(p(), 1));
    for (const auto& [i, mult] : denom_) {
        LaurentPoly f = LaurentPoly::monomial(p(), i, CyclotomicInteger::of_int(p(), 1));
        f.add_term(0, CyclotomicInteger::of_int(p(), -1));
        for (int k = 0; k < mult; ++k) d = d * f;
    }
    return d;
}

MotivicScalar MotivicScalar::operator+(const MotivicScalar& o) const {
    if (p() != o.p()) throw InputError("motivic scalars with mismatched p");
    // common denominator: pointwise max multiplicity per factor
    std::map<long long, int> denom;
    for (const auto& [i, m] : denom_) denom[i] = m;
    for (const auto& [i, m] : o.denom_) denom[i] = std::max(denom[i], m);
    auto missing = [&](const std::map<long long, int>& have) {
        LaurentPoly scale = LaurentPoly::monomial(p(), 0, CyclotomicInteger::of_int(p(), 1));
        for (const auto& [i, m] : denom) {
            int extra = m - (have.count(i) ? have.at(i) : 0);
            LaurentPoly f = LaurentPoly::monomial(p(), i, CyclotomicInteger::of_int(p(), 1));
            f.add_term(0, CyclotomicInteger::of_int(p(), -1));
            for (int k = 0; k < extra; ++k) scale = scale * f;
        }
        return scale;
    };
    LaurentPoly n = num_ * missing(denom_) + o.num_ * missing(o.denom_);
    return MotivicScalar(std::move(n), std::move(denom), 0);
}

MotivicScalar MotivicScalar::operator-(const MotivicScalar& o) const { return *this + (-o); }

MotivicScalar MotivicScalar::operator-() const {
    MotivicScalar r = *this;
    r.num_ = -r.num_;
    return r;
}

MotivicScalar MotivicScalar::operator*(const MotivicScalar& o) const {
    if (p() != o.p()) throw InputError("motivic scalars with mismatched p");
    std::map<long long, int> denom = denom_;
    for (const auto& [i, m] : o.denom_) denom[i] += m;
    return MotivicScalar(num_ * o.num_, std::move(denom), 0);
}

MotivicScalar MotivicScalar::times_L_pow(long long k) const {
    MotivicScalar r = *this;
    r.num_ = r.num_.shifted(k);
    return r;
}

bool MotivicScalar::equals(const MotivicScalar& o) const {
    if (p() != o.p()) return false;
    return num_ * o.denominator_poly() == o.num_ * denominator_poly();
}

CycRational MotivicScalar::eval_at_q(long long q) const {
    if (q < 2) throw InputError("eval_at_q requires q >= 2");
    CycRational v = num_.eval_at(q);
    BigInt den = 1;
    BigInt qb(q);
    for (const auto& [i, mult] : denom_) {
        BigInt qi = 1;
        for (long long k = 0; k < i; ++k) qi *= qb;
        BigInt f = qi - 1;
        if (f == 0) throw InputError("denominator factor vanishes at q");
        for (int k = 0; k < mult; ++k) den *= f;
    }
    return v * CycRational(CyclotomicInteger::of_int(p(), 1), den);
}

std::string MotivicScalar::to_text() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    // descending exponent order
    const auto& ts = num_.terms();
    for (auto it = ts.rbegin(); it != ts.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        os << '(' << it->second.to_text() << ')';
        if (it->first != 0) os << "*L^" << it->first;
    }
    for (const auto& [i, mult] : denom_)
        for (int k = 0; k < mult; ++k) os << " / (L^" << i << "-1)";
    return os.str();
}

// ---------------------------------------------------------------------------
// Parser for the canonical text form.  Grammar (whitespace-insensitive):
//   scalar   := term ( '+' term )* ( '/' dfactor )*
//   term     := cycfac ( '*' 'L^' INT )?  |  'L^' INT  |  cycfac
//   cycfac   := '(' cyc ')' | INT
//   cyc      := [+-]? catom ( [+-] catom )*
//   catom    := INT ( '*' 'z^' INT )? | 'z^' INT
//   dfactor  := '(' 'L^' INT '-' '1' ')' | 'L^' INT
// ---------------------------------------------------------------------------
namespace {

struct Cursor {
    const std::string& s;
    size_t i = 0;
    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    bool eat_str(const char* t) {
        skip();
        size_t n = std::string(t).size();
        if (s.compare(i, n, t) == 0) {
            i += n;
            return true;
        }
        return false;
    }
    bool peek(char c) {
        skip();
        return i < s.size() && s[i] == c;
    }
    bool done() {
        skip();
        return i >= s.size();
    }
    [[noreturn]] void fail(const std::string& what) {
        throw InputError("scalar parse error at position " + std::to_string(i) + ": " + what);
    }
    long long integer() {
        skip();
        size_t start = i;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
        size_t digits = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == digits) fail("expected integer");
        return std::stoll(s.substr(start, i - start));
    }
};

CyclotomicInteger parse_cyc(uint32_t p, Cursor& c) {
    CyclotomicInteger acc(p);
    bool first = true;
    while (true) {
        c.skip();
        long long sign = 1;
        if (c.eat('+')) {
        } else if (c.eat('-')) {
            sign = -1;
        } else if (!first) {
            break;
        }
        first = false;
        c.skip();
        BigInt mag = 1;
        bool had_num = false;
        if (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) {
            mag = c.integer();
            had_num = true;
        }
        long long zexp = 0;
        bool had_z = false;
        size_t save = c.i;
        if ((had_num && c.eat('*')) || !had_num) {
            if (c.eat_str("z^")) {
                zexp = c.integer();
                had_z = true;
            } else {
                c.i = save;
            }
        }
        if (!had_num && !had_z) c.fail("expected coefficient atom");
        CyclotomicInteger atom =
            had_z ? CyclotomicInteger::zeta_pow(p, zexp) : CyclotomicInteger::of_int(p, 1);
        acc = acc + atom * (BigInt(sign) * mag);
        if (!(c.peek('+') || c.peek('-'))) break;
    }
    return acc;
}

}  // namespace

MotivicScalar MotivicScalar::parse(uint32_t p, const std::string& text) {
    Cursor c{text};
    LaurentPoly num(p);
    // numerator terms
    while (true) {
        CyclotomicInteger coeff(p);
        bool have_coeff = false;
        if (c.peek('(')) {
            c.eat('(');
            coeff = parse_cyc(p, c);
            if (!c.eat(')')) c.fail("expected ')'");
            have_coeff = true;
        }
        long long lexp = 0;
        bool have_L = false;
        size_t save = c.i;
        if ((have_coeff && c.eat('*')) || !have_coeff) {
            if (c.eat_str("L^")) {
                lexp = c.integer();
                have_L = true;
            } else {
                c.i = save;
            }
        }
        if (!have_coeff && !have_L) {
            coeff = parse_cyc(p, c);  // bare integer / cyclotomic sum
            have_coeff = true;
            save = c.i;
            if (c.eat('*')) {
                if (c.eat_str("L^")) {
                    lexp = c.integer();
                } else {
                    c.i = save;
                }
            }
        }
        if (!have_coeff) coeff = CyclotomicInteger::of_int(p, 1);
        num.add_term(lexp, coeff);
        if (!c.eat('+')) break;
    }
    // denominator factors
    std::map<long long, int> denom;
    long long dlpow = 0;
    while (c.eat('/')) {
        if (c.eat('(')) {
            if (!c.eat_str("L^")) c.fail("expected L^ in denominator factor");
            long long i = c.integer();
            if (!c.eat('-')) c.fail("expected '-' in denominator factor");
            if (c.integer() != 1) c.fail("denominator factor must be (L^i-1)");
            if (!c.eat(')')) c.fail("expected ')'");
            if (i <= 0) c.fail("denominator factor exponent must be positive");
            denom[i] += 1;
        } else if (c.eat_str("L^")) {
            dlpow += c.integer();
        } else {
            c.fail("expected denominator factor");
        }
    }
    if (!c.done()) c.fail("trailing input");
    return MotivicScalar(std::move(num), std::move(denom), dlpow);
}

MotivicScalar char_sum_over_residue_line(const ResidueElement& r) {
    const ResidueField& F = r.field();
    if (r.is_zero()) return MotivicScalar::of_int(F.p(), BigInt(F.q()));
    return MotivicScalar::zero(F.p());
}

}  // namespace tadic
