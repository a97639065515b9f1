#include "tadic/residue.hpp"

#include <algorithm>
#include <sstream>

namespace tadic {

namespace {

bool is_prime(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Polynomial arithmetic over F_p on coefficient vectors (low degree first).
using Poly = std::vector<uint32_t>;

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& modulus, uint32_t p) {
    Poly prod(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    // reduce by the monic modulus of degree f
    size_t f = modulus.size() - 1;
    for (size_t d = prod.size(); d-- > f;) {
        uint32_t c = prod[d];
        if (c == 0) continue;
        prod[d] = 0;
        for (size_t k = 0; k < f; ++k) {
            uint32_t sub = (c * modulus[k]) % p;
            prod[d - f + k] = (prod[d - f + k] + p - sub) % p;
        }
    }
    prod.resize(f, 0);
    return prod;
}

bool poly_is_zero(const Poly& a) {
    return std::all_of(a.begin(), a.end(), [](uint32_t c) { return c == 0; });
}

// Irreducibility over F_p by trial division with all monic polynomials of
// degree <= f/2.  Fine at table-building scale.
bool is_irreducible(const Poly& modulus, uint32_t p) {
    size_t f = modulus.size() - 1;
    if (f == 0) return false;
    if (f == 1) return true;
    for (size_t d = 1; 2 * d <= f; ++d) {
        // enumerate monic divisor candidates of degree d
        uint64_t count = 1;
        for (size_t i = 0; i < d; ++i) count *= p;
        for (uint64_t code = 0; code < count; ++code) {
            Poly div(d + 1, 0);
            uint64_t c = code;
            for (size_t i = 0; i < d; ++i) {
                div[i] = static_cast<uint32_t>(c % p);
                c /= p;
            }
            div[d] = 1;
            // long division remainder of modulus by div
            Poly rem = modulus;
            for (size_t top = rem.size(); top-- > d;) {
                uint32_t lead = rem[top];
                if (lead == 0) continue;
                rem[top] = 0;
                for (size_t k = 0; k < d; ++k) {
                    uint32_t sub = (lead * div[k]) % p;
                    rem[top - d + k] = (rem[top - d + k] + p - sub) % p;
                }
            }
            if (poly_is_zero(rem)) return false;
        }
    }
    return true;
}

}  // namespace

ResidueField::ResidueField(uint32_t p, uint32_t f, std::vector<uint32_t> modulus)
    : p_(p), f_(f), modulus_(std::move(modulus)) {
    if (!is_prime(p_)) throw InputError("residue field: p = " + std::to_string(p_) + " is not prime");
    if (f_ == 0) throw InputError("residue field: f must be >= 1");
    if (modulus_.size() != f_ + 1 || modulus_.back() != 1)
        throw InputError("residue field: modulus must be monic of degree f");
    for (auto& c : modulus_) c %= p_;
    modulus_.back() = 1;
    if (!is_irreducible(modulus_, p_))
        throw InputError("residue field: modulus is reducible over F_p");

    q_ = 1;
    for (uint32_t i = 0; i < f_; ++i) q_ *= p_;

    auto coords_of = [&](uint32_t a) {
        Poly c(f_, 0);
        for (uint32_t i = 0; i < f_; ++i) {
            c[i] = a % p_;
            a /= p_;
        }
        return c;
    };
    auto index_of = [&](const Poly& c) {
        uint32_t a = 0;
        for (uint32_t i = f_; i-- > 0;) a = a * p_ + c[i];
        return a;
    };

    add_.resize(size_t(q_) * q_);
    mul_.resize(size_t(q_) * q_);
    neg_.resize(q_);
    trace_.resize(q_);
    for (uint32_t a = 0; a < q_; ++a) {
        Poly ca = coords_of(a);
        Poly na(f_);
        for (uint32_t i = 0; i < f_; ++i) na[i] = (p_ - ca[i]) % p_;
        neg_[a] = index_of(na);
        for (uint32_t b = 0; b < q_; ++b) {
            Poly cb = coords_of(b);
            Poly s(f_);
            for (uint32_t i = 0; i < f_; ++i) s[i] = (ca[i] + cb[i]) % p_;
            add_[size_t(a) * q_ + b] = index_of(s);
            mul_[size_t(a) * q_ + b] = index_of(poly_mul_mod(ca, cb, modulus_, p_));
        }
    }
    // tr(a) = a + a^p + ... + a^{p^{f-1}}, a constant polynomial in F_p.
    for (uint32_t a = 0; a < q_; ++a) {
        uint32_t acc = 0;
        uint32_t x = a;
        for (uint32_t i = 0; i < f_; ++i) {
            acc = add_[size_t(acc) * q_ + x];
            uint32_t y = x;
            for (uint32_t e = 1; e < p_; ++e) y = mul_[size_t(y) * q_ + x];
            x = y;  // x^p
        }
        trace_[a] = coords_of(acc)[0];
    }
}

std::shared_ptr<const ResidueField> ResidueField::make_default(uint32_t q) {
    switch (q) {
        case 2: return std::make_shared<ResidueField>(2, 1, Poly{0, 1});
        case 3: return std::make_shared<ResidueField>(3, 1, Poly{0, 1});
        case 4: return std::make_shared<ResidueField>(2, 2, Poly{1, 1, 1});
        case 5: return std::make_shared<ResidueField>(5, 1, Poly{0, 1});
        case 7: return std::make_shared<ResidueField>(7, 1, Poly{0, 1});
        case 8: return std::make_shared<ResidueField>(2, 3, Poly{1, 1, 0, 1});
        case 9: return std::make_shared<ResidueField>(3, 2, Poly{1, 0, 1});
        default:
            throw InputError("no shipped residue field default for q = " + std::to_string(q));
    }
}

uint32_t ResidueField::from_int(long long n) const {
    long long r = n % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return static_cast<uint32_t>(r);  // constant polynomial c_0 = r
}

std::vector<uint32_t> ResidueField::coords(uint32_t a) const {
    std::vector<uint32_t> c(f_, 0);
    for (uint32_t i = 0; i < f_; ++i) {
        c[i] = a % p_;
        a /= p_;
    }
    return c;
}

uint32_t ResidueField::from_coords(const std::vector<uint32_t>& c) const {
    if (c.size() > f_) throw InputError("residue coords longer than f");
    uint32_t a = 0;
    for (size_t i = c.size(); i-- > 0;) a = a * p_ + (c[i] % p_);
    return a;
}

const ResidueField& ResidueElement::field() const {
    if (!field_) throw InputError("residue element without a field");
    return *field_;
}

ResidueElement ResidueElement::operator+(const ResidueElement& o) const {
    return {&field(), field().add(idx_, o.idx_)};
}
ResidueElement ResidueElement::operator-(const ResidueElement& o) const {
    return {&field(), field().sub(idx_, o.idx_)};
}
ResidueElement ResidueElement::operator*(const ResidueElement& o) const {
    return {&field(), field().mul(idx_, o.idx_)};
}
ResidueElement ResidueElement::operator-() const { return {&field(), field().neg(idx_)}; }

bool ResidueElement::operator==(const ResidueElement& o) const {
    if (field_ == nullptr || o.field_ == nullptr) return idx_ == o.idx_ && field_ == o.field_;
    return field().same_field(o.field()) && idx_ == o.idx_;
}

uint32_t ResidueElement::trace() const { return field().trace(idx_); }

std::string ResidueElement::to_text() const {
    std::ostringstream os;
    os << '[';
    auto c = field().coords(idx_);
    for (size_t i = 0; i < c.size(); ++i) {
        if (i) os << ',';
        os << c[i];
    }
    os << ']';
    return os.str();
}

}  // namespace tadic
