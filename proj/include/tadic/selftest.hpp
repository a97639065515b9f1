#pragma once

#include "tadic/microlocal.hpp"
#include "tadic/oracle.hpp"

namespace tadic {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

// Runs the full acceptance suite under the given configuration.  Criteria
// that pin their own field (the closed-form Fourier table, the oscillatory
// sweep at q = 3) build their own contexts; everything else runs under cfg.
std::vector<CriterionResult> run_acceptance(const Config& cfg);

}  // namespace tadic
