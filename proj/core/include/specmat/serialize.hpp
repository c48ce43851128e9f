#pragma once

#include <string>

#include "specmat/completion.hpp"
#include "specmat/model.hpp"
#include "specmat/region.hpp"
#include "specmat/theorems.hpp"
#include "specmat/tuples.hpp"

namespace specmat {

/// Deterministic JSON text: fixed key order, compact (no whitespace),
/// rationals as "p/q" strings, complex scalars in complex_to_string form,
/// infinite counts as the string "inf". Equal values serialize to
/// byte-identical text.
std::string region_json(const RegionExpr& r);
std::string fredholm_json(const FredholmData& d);
std::string theorem_report_json(const TheoremReport& r);
std::string check_report_json(const CheckReport& r);
/// Includes a capped sample of each block's explicit unit entries
/// (materialized below row/column 8).
std::string plan_json(const DiagonalTuple& t, const CompletionPlan& p,
                      const CQ& lambda);
std::string verification_json(const VerificationReport& r);

}  // namespace specmat
