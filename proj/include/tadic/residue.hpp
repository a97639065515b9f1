#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "tadic/common.hpp"

namespace tadic {

// The residue field F_q, q = p^f, realized as F_p[x] / (modulus).  All q^2
// operation tables are precomputed at construction; elements are indices
// into the table.  Index encoding: idx = sum_i c_i p^i where (c_0..c_{f-1})
// are the coordinates of the polynomial representative.
class ResidueField {
  public:
    // modulus: monic polynomial coefficients c_0..c_f (c_f == 1), degree f.
    // Throws InputError if p is not prime or the modulus is not irreducible.
    ResidueField(uint32_t p, uint32_t f, std::vector<uint32_t> modulus);

    // Shipped default modulus for q in {2,3,4,5,7,8,9}.
    static std::shared_ptr<const ResidueField> make_default(uint32_t q);

    uint32_t p() const { return p_; }
    uint32_t f() const { return f_; }
    uint32_t q() const { return q_; }
    const std::vector<uint32_t>& modulus() const { return modulus_; }

    uint32_t add(uint32_t a, uint32_t b) const { return add_[a * q_ + b]; }
    uint32_t sub(uint32_t a, uint32_t b) const { return add_[a * q_ + neg_[b]]; }
    uint32_t mul(uint32_t a, uint32_t b) const { return mul_[a * q_ + b]; }
    uint32_t neg(uint32_t a) const { return neg_[a]; }
    // trace F_q -> F_p, returned as an integer in [0, p).
    uint32_t trace(uint32_t a) const { return trace_[a]; }

    // Constant embedding of an integer (reduced mod p).
    uint32_t from_int(long long n) const;

    // Coordinates c_0..c_{f-1} of an element index.
    std::vector<uint32_t> coords(uint32_t a) const;
    uint32_t from_coords(const std::vector<uint32_t>& c) const;

    bool same_field(const ResidueField& o) const {
        return p_ == o.p_ && f_ == o.f_ && modulus_ == o.modulus_;
    }

  private:
    uint32_t p_, f_, q_;
    std::vector<uint32_t> modulus_;
    std::vector<uint32_t> add_, mul_, neg_, trace_;
};

// A residue-field element: a field pointer plus a table index.  The field
// object must outlive the element (fields are built once per context).
class ResidueElement {
  public:
    ResidueElement() : field_(nullptr), idx_(0) {}
    ResidueElement(const ResidueField* field, uint32_t idx) : field_(field), idx_(idx) {}

    static ResidueElement zero(const ResidueField& f) { return {&f, 0}; }
    static ResidueElement one(const ResidueField& f) { return {&f, 1}; }
    static ResidueElement of_int(const ResidueField& f, long long n) {
        return {&f, f.from_int(n)};
    }

    const ResidueField& field() const;
    uint32_t index() const { return idx_; }
    bool is_zero() const { return idx_ == 0; }

    ResidueElement operator+(const ResidueElement& o) const;
    ResidueElement operator-(const ResidueElement& o) const;
    ResidueElement operator*(const ResidueElement& o) const;
    ResidueElement operator-() const;
    bool operator==(const ResidueElement& o) const;
    bool operator!=(const ResidueElement& o) const { return !(*this == o); }

    // tr_{F_q/F_p}, as an integer in [0, p).
    uint32_t trace() const;

    // Bracketed coordinate form, e.g. "[2]" or "[1,0,2]".
    std::string to_text() const;

  private:
    const ResidueField* field_;
    uint32_t idx_;
};

}  // namespace tadic
