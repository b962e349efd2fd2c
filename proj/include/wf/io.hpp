#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "wf/biquadratic.hpp"
#include "wf/decomposable.hpp"
#include "wf/realform.hpp"

namespace wf {

using json = nlohmann::ordered_json;

// {"na", "nb", "re": [[...]], "im": [[...]]}, row-major N x N
json witness_to_json(const HermitianOp& a);
HermitianOp witness_from_json(const json& j);

// Witness plus a "decomposition" block {"rho": {re, im}, "sigma": {re, im}}.
json decomp_to_json(const DecompWitness& w);
std::optional<std::pair<HermitianOp, HermitianOp>> decomposition_from_json(const json& j);

// {"kind": "real", "na", "nb" (source dims), "matrix": [[...]]}
json real_to_json(const RealWitness& w);
RealWitness real_from_json(const json& j);

json vector_to_json(const CVec& v);  // {"re": [...], "im": [...]}
CVec vector_from_json(const json& j);

json point_to_json(const ProductVector& p);
ProductVector point_from_json(const json& j);
json zero_to_json(const Zero& z);

// {"na", "nb", "zeros": [{"phi": {...}, "chi": {...}, ...}]}
json zeros_to_json(Dims d, const std::vector<Zero>& zs);
std::vector<ProductVector> points_from_json(const json& j);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

} // namespace wf
