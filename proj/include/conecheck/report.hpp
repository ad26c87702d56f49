#pragma once
// Deterministic verification reports: run a scenario's pipeline (expression
// checks, declared tables, the assembled cone verdict), compare every
// expectation, and render the outcome. The JSON document is the report; the
// text rendering is generated from the same document, so the two agree on
// every number.

#include <string>

#include <json.hpp>

#include "conecheck/scenario.hpp"

namespace conecheck {

struct ReportOptions {
    i64 nmax = 0;             // sweep depth override; 0 keeps the scenario's value
    std::string format = "text";  // "text" or "json"
    std::string only_check;   // run a single named step ("" = all)
    std::string explain;      // extra expression whose certificate tree to append
};

struct ReportResult {
    int exit_code = 0;  // 0 all expectations met, 1 failed expectation, 2 error
    nlohmann::ordered_json doc;
    std::string rendered;  // in the requested format
};

// Never throws for pipeline failures (they become exit code 1); scenario-level
// evaluation errors surface as exit code 2 with the diagnostic in `rendered`.
ReportResult run_verify(const Scenario& sc, const ReportOptions& opt = {});

}  // namespace conecheck
