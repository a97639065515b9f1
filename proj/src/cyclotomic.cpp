#include "tadic/cyclotomic.hpp"

#include <sstream>

namespace tadic {

namespace mp = boost::multiprecision;

void CyclotomicInteger::check_compatible(const CyclotomicInteger& o) const {
    if (p_ != o.p_) throw InputError("cyclotomic integers with mismatched p");
}

CyclotomicInteger CyclotomicInteger::zeta_pow(uint32_t p, long long k) {
    long long r = k % static_cast<long long>(p);
    if (r < 0) r += p;
    CyclotomicInteger z(p);
    if (r == static_cast<long long>(p) - 1) {
        for (auto& c : z.c_) c = -1;
    } else {
        z.c_[static_cast<size_t>(r)] = 1;
    }
    return z;
}

bool CyclotomicInteger::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

CyclotomicInteger CyclotomicInteger::operator+(const CyclotomicInteger& o) const {
    check_compatible(o);
    CyclotomicInteger r(p_);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
}

CyclotomicInteger CyclotomicInteger::operator-(const CyclotomicInteger& o) const {
    check_compatible(o);
    CyclotomicInteger r(p_);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] - o.c_[i];
    return r;
}

CyclotomicInteger CyclotomicInteger::operator-() const {
    CyclotomicInteger r(p_);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = -c_[i];
    return r;
}

CyclotomicInteger CyclotomicInteger::operator*(const CyclotomicInteger& o) const {
    check_compatible(o);
    // convolution in exponents 0..2p-4, fold zeta^p = 1, then zeta^{p-1}.
    std::vector<BigInt> acc(p_, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j] == 0) continue;
            size_t e = (i + j) % p_;
            acc[e] += c_[i] * o.c_[j];
        }
    }
    CyclotomicInteger r(p_);
    for (size_t e = 0; e + 1 < p_; ++e) r.c_[e] = acc[e];
    const BigInt& top = acc[p_ - 1];
    if (top != 0)
        for (auto& x : r.c_) x -= top;
    return r;
}

CyclotomicInteger CyclotomicInteger::operator*(const BigInt& n) const {
    CyclotomicInteger r(p_);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] * n;
    return r;
}

BigInt CyclotomicInteger::content() const {
    BigInt g = 0;
    for (const auto& x : c_) g = mp::gcd(g, x);
    return g < 0 ? BigInt(-g) : g;
}

CyclotomicInteger CyclotomicInteger::divided_by(const BigInt& d) const {
    if (d == 0) throw InputError("cyclotomic division by zero");
    CyclotomicInteger r(p_);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] % d != 0) throw InputError("cyclotomic division not exact");
        r.c_[i] = c_[i] / d;
    }
    return r;
}

std::string CyclotomicInteger::to_text() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        BigInt a = c_[i];
        if (first) {
            if (a < 0) { os << '-'; a = -a; }
        } else {
            os << (a < 0 ? '-' : '+');
            if (a < 0) a = -a;
        }
        first = false;
        if (i == 0) {
            os << a.str();
        } else {
            if (a != 1) os << a.str() << '*';
            os << "z^" << i;
        }
    }
    if (first) os << '0';
    return os.str();
}

CycRational::CycRational(CyclotomicInteger num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) throw InputError("rational with zero denominator");
    if (den_ < 0) {
        den_ = -den_;
        num_ = -num_;
    }
    reduce();
}

void CycRational::reduce() {
    if (num_.is_zero()) {
        den_ = 1;
        return;
    }
    BigInt g = mp::gcd(num_.content(), den_);
    if (g > 1) {
        num_ = num_.divided_by(g);
        den_ /= g;
    }
}

CycRational CycRational::operator+(const CycRational& o) const {
    return CycRational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}
CycRational CycRational::operator-(const CycRational& o) const {
    return CycRational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}
CycRational CycRational::operator*(const CycRational& o) const {
    return CycRational(num_ * o.num_, den_ * o.den_);
}

bool CycRational::operator==(const CycRational& o) const {
    return num_ * o.den_ == o.num_ * den_;
}

std::string CycRational::to_text() const {
    std::string s = num_.to_text();
    if (den_ != 1) {
        bool atom = s.find_first_of("+-", 1) == std::string::npos;
        if (!atom) s = "(" + s + ")";
        s += "/" + den_.str();
    }
    return s;
}

}  // namespace tadic
