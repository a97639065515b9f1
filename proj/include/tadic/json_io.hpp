#pragma once

#include <json.hpp>

#include "tadic/microlocal.hpp"

namespace tadic {

using Json = nlohmann::ordered_json;

// Config: {"p":3,"f":1,"modulus":[0,1],"v_min":-16,"v_max":16,"budget":...,
//          "K":6,"n":1,"seed":...}; every key optional, "q" accepted as a
// shorthand for the shipped default field.
Config config_from_json(const Json& j);
Json config_to_json(const Config& c);

Json scalar_to_json(const MotivicScalar& s, const Context& ctx);

Json sb_to_json(const SBFunction& f);
SBFunction sb_from_json(const Json& j, const Context& ctx);

Json query_to_json(const BallQuery& q);
BallQuery query_from_json(const Json& j, const Context& ctx);
std::vector<BallQuery> queries_from_json(const Json& j, const Context& ctx);

// {"kind":"dirac","point":[...]}, {"kind":"function","sb":{...}},
// {"kind":"graph","vars":[...],"map":[...]},
// {"kind":"fourier","of":{...}}, {"kind":"product-by-sb","sb":...,"of":...},
// {"kind":"tensor","left":...,"right":...},
// {"kind":"pullback","vars":...,"map":...,"of":...,"data":{...}}
Distribution distribution_from_json(const Json& j, const Context& ctx);

SmoothData smooth_data_from_json(const Json& j);

Json wf_certificate_to_json(const WFCertificate& c, const Context& ctx);
Json ss_certificate_to_json(const SSCertificate& c, const Context& ctx);

Json field_vec_to_json(const FieldVec& v);
FieldVec field_vec_from_json(const Json& j, const Context& ctx);
// Parses one element and applies the configured precision window.
FieldElement field_from_text(const std::string& text, const Context& ctx);

}  // namespace tadic
