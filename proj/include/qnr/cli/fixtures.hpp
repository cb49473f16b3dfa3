#pragma once

// Regression set of published worked examples. Each fixture recomputes a
// quantity and compares it with the published value; disagreements are kept
// as findings rather than errors, because several published numbers are
// known to be wrong.

#include <string>
#include <vector>

#include <json.hpp>

#include "qnr/qrange.hpp"

namespace qnr::cli {

enum class Relation {
    Equal,    // |computed - reference| <= tol
    AtLeast,  // computed >= reference - tol
};

struct Fixture {
    std::string id;
    std::string description;
    double computed = 0.0;
    double reference = 0.0;  // published or claimed value
    double tol = 0.0;
    Relation relation = Relation::Equal;
    bool agrees = false;
};

std::vector<Fixture> run_fixtures(const SphereOptions& sphere = {});

/// {"fixtures": [...], "findings": [ids of disagreeing fixtures], "summary"}.
nlohmann::json fixtures_json(const std::vector<Fixture>& fx);

}  // namespace qnr::cli
