#pragma once
// Catalog of named identity checks over the series families: each check
// recomputes both sides of one identity to explicit (w-degree, q-order)
// bounds and reports exact agreement or the first mismatching coefficient.
// Together they form the regression surface for everything the library
// constructs.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qeis/eisenstein.hpp"

namespace qeis {

struct CheckReport {
    std::string name;
    std::string params;  // the (Z, N, k-range, ...) actually used
    bool pass = false;
    bool gating = true;  // non-gating checks report but do not fail a suite
    // On pass: the bounds to which equality was established.  On fail: the
    // first mismatching (w-degree, q-exponent) and both coefficient values.
    std::string detail;
    double elapsed_seconds = 0.0;
};

struct CheckOptions {
    std::optional<long long> order;  // q-order override
    std::optional<int> max_weight;   // w-degree / index-range override
};

// Check names in fixed catalog order (also the suite output order).
const std::vector<std::string>& check_catalog();

bool is_known_check(const std::string& name);
bool check_is_gating(const std::string& name);

// Runs one catalog entry.  Throws std::invalid_argument for an unknown name
// or out-of-bounds parameters.
CheckReport run_check(const std::string& name, SeriesCache& cache,
                      const CheckOptions& options = {});

// Runs several checks (in parallel when asked); reports come back in the
// order the names were given regardless of completion order.
std::vector<CheckReport> run_checks(const std::vector<std::string>& names, SeriesCache& cache,
                                    const CheckOptions& options = {}, bool parallel = true);

// True when every gating check passed (non-gating failures don't count).
bool all_pass(const std::vector<CheckReport>& reports);

nlohmann::json report_to_json(const CheckReport& r);
std::string report_to_text(const CheckReport& r);

}  // namespace qeis
