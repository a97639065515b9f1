#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "tadic/field.hpp"

namespace tadic {

struct Config {
    uint32_t p = 3;
    uint32_t f = 1;
    std::vector<uint32_t> modulus;  // empty: shipped default for q = p^f
    Ord v_min = -16;                // default precision window
    Ord v_max = 16;
    long long budget = 4'000'000;   // enumeration budget per operation
    int sweep_K = 6;                // lambda sweep depth
    int lambda_n = 1;               // n for Lambda_n
    uint64_t seed = 20240801;       // pinned seed for property suites

    static Config for_q(uint32_t q);
};

// One immutable computation context: the residue field plus configuration.
// Everything downstream borrows the ResidueField by pointer, so a Context
// must outlive the values built from it.
class Context {
  public:
    explicit Context(Config cfg);

    const Config& cfg() const { return cfg_; }
    const ResidueField& F() const { return *F_; }
    uint32_t p() const { return F_->p(); }
    uint32_t q() const { return F_->q(); }
    long long budget() const { return cfg_.budget; }

    MotivicScalar zero() const { return MotivicScalar::zero(p()); }
    MotivicScalar one() const { return MotivicScalar::one(p()); }
    MotivicScalar L(Ord k) const { return MotivicScalar::L_pow(p(), k); }
    MotivicScalar zeta(long long k) const { return MotivicScalar::zeta_pow(p(), k); }
    MotivicScalar psi_of(const FieldElement& x) const { return psi(F(), x); }

    FieldElement fe_zero() const { return FieldElement::zero(F()); }
    FieldElement fe_one() const { return FieldElement::one(F()); }
    FieldElement t_pow(Ord k) const { return FieldElement::t_pow_scaled(F(), k, 1); }

  private:
    Config cfg_;
    std::shared_ptr<const ResidueField> F_;
};

}  // namespace tadic
