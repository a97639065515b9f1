#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tadic/common.hpp"

namespace tadic {

using BigInt = boost::multiprecision::cpp_int;

// An element of Z[zeta_p] in the reduced basis zeta^0 .. zeta^{p-2}
// (reduction modulo the p-th cyclotomic polynomial 1 + x + ... + x^{p-1}).
// The representation is unique, so equality is coordinate-wise.
class CyclotomicInteger {
  public:
    CyclotomicInteger() : p_(0) {}
    explicit CyclotomicInteger(uint32_t p) : p_(p), c_(p - 1) {}

    static CyclotomicInteger of_int(uint32_t p, const BigInt& n) {
        CyclotomicInteger r(p);
        r.c_[0] = n;
        return r;
    }
    // zeta_p^k; k taken mod p.  zeta^{p-1} folds to -(1 + zeta + ... + zeta^{p-2}).
    static CyclotomicInteger zeta_pow(uint32_t p, long long k);

    uint32_t p() const { return p_; }
    const std::vector<BigInt>& coords() const { return c_; }
    BigInt& coord(size_t i) { return c_[i]; }
    const BigInt& coord(size_t i) const { return c_[i]; }

    bool is_zero() const;
    bool operator==(const CyclotomicInteger& o) const { return p_ == o.p_ && c_ == o.c_; }
    bool operator!=(const CyclotomicInteger& o) const { return !(*this == o); }

    CyclotomicInteger operator+(const CyclotomicInteger& o) const;
    CyclotomicInteger operator-(const CyclotomicInteger& o) const;
    CyclotomicInteger operator-() const;
    CyclotomicInteger operator*(const CyclotomicInteger& o) const;
    CyclotomicInteger operator*(const BigInt& n) const;

    // gcd of all coordinates (non-negative; 0 for the zero element).
    BigInt content() const;
    // Exact division of every coordinate by d; d must divide the content.
    CyclotomicInteger divided_by(const BigInt& d) const;

    // Text form: an integer when the element is rational, otherwise a sum
    // like "2+z^1-z^3" in the reduced basis.
    std::string to_text() const;

  private:
    void check_compatible(const CyclotomicInteger& o) const;
    uint32_t p_;
    std::vector<BigInt> c_;
};

// An exact element of Q(zeta_p): numerator in Z[zeta_p] over a positive
// integer denominator, reduced so gcd(content(num), den) = 1.
class CycRational {
  public:
    CycRational() = default;
    explicit CycRational(CyclotomicInteger num, BigInt den = 1);

    static CycRational zero(uint32_t p) { return CycRational(CyclotomicInteger(p)); }

    const CyclotomicInteger& num() const { return num_; }
    const BigInt& den() const { return den_; }
    uint32_t p() const { return num_.p(); }
    bool is_zero() const { return num_.is_zero(); }

    CycRational operator+(const CycRational& o) const;
    CycRational operator-(const CycRational& o) const;
    CycRational operator*(const CycRational& o) const;
    bool operator==(const CycRational& o) const;
    bool operator!=(const CycRational& o) const { return !(*this == o); }

    std::string to_text() const;

  private:
    void reduce();
    CyclotomicInteger num_;
    BigInt den_ = 1;
};

}  // namespace tadic
