#pragma once

// JSON and CSV views of library results. Objects are built with sorted keys
// and doubles use round-trip formatting, so equal inputs give equal bytes.

#include <string>
#include <vector>

#include <json.hpp>

#include "qnr/bounds.hpp"
#include "qnr/qrange.hpp"
#include "qnr/radii.hpp"
#include "qnr/structure.hpp"

namespace qnr::cli {

using nlohmann::json;

json complex_json(Complex z);
json vector_json(const CVec& v);
json matrix_json(const CMat& m);

json to_json(const BoundReport& r);
json to_json(const TheoremReport& r);
json to_json(const OmegaEstimate& e);
json to_json(const RadiusResult& r);

std::string bounds_csv(const std::vector<BoundReport>& rows);
std::string support_csv(const ConvexRange& r);
std::string theorem_csv(const TheoremReport& r);

/// Two-space indented dump with a trailing newline.
std::string dump(const json& j);

}  // namespace qnr::cli
