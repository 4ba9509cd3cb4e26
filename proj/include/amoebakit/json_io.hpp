#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "amoebakit/amoeba.hpp"
#include "amoebakit/coam.hpp"
#include "amoebakit/deform.hpp"
#include "amoebakit/puiseux.hpp"
#include "amoebakit/spine.hpp"
#include "amoebakit/trop.hpp"

namespace amoebakit {

using json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.3.0";

/// 16 lowercase hex digits.
std::string hex64(std::uint64_t h);

/// {"version", "config_hash", "polynomial_hash"}; polynomial text may be empty.
json provenance(const std::string& config_text, const std::string& polynomial_text);

json to_json(const LaurentPolynomial& f);
json to_json(const TropicalPolynomial& g);
json to_json(const TropicalCurve& curve);
json to_json(const DualSubdivision& sub);
json to_json(const BalancingReport& report);
json to_json(const Window& window);
/// Components and counts; the per-pixel labels are left to the PGM output.
json to_json(const ComponentReport& report);
json to_json(const SpineModel& spine);
json to_json(const PRFunction& nu);
json to_json(const DeformationFamily& fam);
json to_json(const ConvergenceTrace& trace);
json to_json(const LocalizationResult& result);
json to_json(const StandardCoamoebaModel& model);
json to_json(const ExtraPieceReport& report);
json to_json(const PuiseuxScalar& a);

/// Inverse of to_json(PuiseuxScalar): {"order": number|null, "terms": [[e, re, im], ...]}.
PuiseuxScalar puiseux_from_json(const json& j);

/// Columns t,h,d_H,bounded_cell_mass,solid,components,coefficient_spread,error.
std::string trace_csv(const ConvergenceTrace& trace);

/// Fixed-format number text (17 significant digits) used by CSV output.
std::string format_number(double x);

}  // namespace amoebakit
