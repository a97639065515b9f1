#include "tadic/context.hpp"

namespace tadic {

Config Config::for_q(uint32_t q) {
    Config c;
    switch (q) {
        case 2: c.p = 2; c.f = 1; break;
        case 3: c.p = 3; c.f = 1; break;
        case 4: c.p = 2; c.f = 2; break;
        case 5: c.p = 5; c.f = 1; break;
        case 7: c.p = 7; c.f = 1; break;
        case 8: c.p = 2; c.f = 3; break;
        case 9: c.p = 3; c.f = 2; break;
        default: throw InputError("no shipped default for q = " + std::to_string(q));
    }
    return c;
}

Context::Context(Config cfg) : cfg_(std::move(cfg)) {
    if (cfg_.budget <= 0) throw InputError("budget must be positive");
    uint32_t q = 1;
    for (uint32_t i = 0; i < cfg_.f; ++i) q *= cfg_.p;
    if (cfg_.modulus.empty()) {
        F_ = ResidueField::make_default(q);
    } else {
        F_ = std::make_shared<ResidueField>(cfg_.p, cfg_.f, cfg_.modulus);
    }
}

}  // namespace tadic
