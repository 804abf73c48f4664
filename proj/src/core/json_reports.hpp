#pragma once

#include <nlohmann/json_fwd.hpp>

#include "bounds.hpp"
#include "function_classes.hpp"
#include "oracle.hpp"
#include "weight_regimes.hpp"

namespace devbound {

// All emitters produce objects with sorted keys and a schema_version
// field at the top level, so identical inputs serialize byte-identically.
inline constexpr int kSchemaVersion = 1;

nlohmann::json bound_to_json(const BoundReport& rep);
nlohmann::json verification_to_json(const VerificationReport& rep);
nlohmann::json witness_to_json(const WitnessCase& wc);
nlohmann::json fuzz_to_json(const FuzzReport& rep, const FuzzConfig& config);
nlohmann::json weights_report_to_json(std::span<const double> weights,
                                      double tol);

// Witness files round-trip: {values, weights, window or k, r, ...}.
std::pair<std::vector<double>, std::vector<double>> sample_from_witness_json(
    const nlohmann::json& j);

}  // namespace devbound
