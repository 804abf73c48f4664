#include "json_reports.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace devbound {

using nlohmann::json;

json bound_to_json(const BoundReport& rep) {
    json j;
    j["bound"] = rep.bound;
    j["numerator"] = rep.numerator;
    const bool degenerate = !std::isfinite(rep.denominator);
    j["degenerate"] = degenerate;
    j["denominator"] = degenerate ? json() : json(rep.denominator);
    j["regime"] = regime_name(rep.regime);
    j["chain"] = chain_name(rep.chain);
    j["r_or_p"] = rep.r_or_p;
    j["window_mass"] = rep.window_mass;
    if (rep.window) {
        j["window"] = {{"k", rep.window->first}, {"j", rep.window->last}};
    } else {
        j["window"] = json();
    }
    j["t_constant"] = rep.t_constant ? json(*rep.t_constant) : json();
    j["alpha0"] = rep.alpha0 ? json(*rep.alpha0) : json();
    return j;
}

json verification_to_json(const VerificationReport& rep) {
    json checks = json::array();
    for (const auto& row : rep.checks) {
        checks.push_back({{"inequality", row.inequality},
                          {"where", row.where},
                          {"lhs", row.lhs},
                          {"rhs", row.rhs},
                          {"slack", row.slack},
                          {"pass", row.pass}});
    }
    return json{{"schema_version", kSchemaVersion},
                {"regime", regime_name(rep.regime)},
                {"all_pass", rep.all_pass},
                {"worst_slack", rep.worst_slack},
                {"checks", std::move(checks)}};
}

json witness_to_json(const WitnessCase& wc) {
    json j;
    j["values"] = wc.values;
    j["weights"] = wc.weights;
    j["inequality"] = wc.inequality;
    j["where"] = wc.where;
    j["r"] = wc.r;
    j["lhs"] = wc.lhs;
    j["rhs"] = wc.rhs;
    j["trial"] = wc.trial;
    if (wc.window)
        j["window"] = {{"k", wc.window->first}, {"j", wc.window->last}};
    if (wc.split_k) j["k"] = *wc.split_k;
    return j;
}

json fuzz_to_json(const FuzzReport& rep, const FuzzConfig& config) {
    json violations = json::array();
    for (const auto& v : rep.violations) violations.push_back(witness_to_json(v));
    json j;
    j["schema_version"] = kSchemaVersion;
    j["config"] = {{"seed", config.master_seed},
                   {"trials", config.trials},
                   {"n_min", config.n_min},
                   {"n_max", config.n_max},
                   {"r_set", config.r_set},
                   {"regime", regime_name(config.regime)},
                   {"distribution", distribution_name(config.distribution)}};
    j["trials_run"] = rep.trials_run;
    j["best_tightness"] = rep.best_tightness;
    j["tightest_witness"] = rep.tightest_witness
                                ? witness_to_json(*rep.tightest_witness)
                                : json();
    j["violations"] = std::move(violations);
    return j;
}

json weights_report_to_json(std::span<const double> weights, double tol) {
    const auto simplex = validate_positive_simplex(weights, tol);
    const auto steffensen = validate_steffensen(weights, tol);
    const auto splits = admissible_split_indices(weights, tol);

    json violations = json::array();
    for (const auto& v : steffensen.violations) {
        violations.push_back(
            {{"condition", v.condition}, {"index", v.index}, {"slack", v.slack}});
    }
    json split_rows = json::array();
    json admissible = json::array();
    for (const auto& s : splits) {
        split_rows.push_back({{"k", s.k},
                              {"holds", s.holds},
                              {"failed_condition",
                               s.holds ? json() : json(split_failure_name(s.failed))}});
        if (s.holds) admissible.push_back(s.k);
    }
    return json{{"schema_version", kSchemaVersion},
                {"prefix_sums", steffensen.prefix_sums},
                {"tail_sums", steffensen.tail_sums},
                {"positive_simplex", simplex.is_positive_simplex},
                {"steffensen", steffensen.is_steffensen},
                {"violations", std::move(violations)},
                {"admissible_k", std::move(admissible)},
                {"splits", std::move(split_rows)}};
}

std::pair<std::vector<double>, std::vector<double>> sample_from_witness_json(
    const json& j) {
    if (!j.contains("values") || !j.contains("weights"))
        throw InvalidInputError("witness JSON needs 'values' and 'weights'");
    return {j.at("values").get<std::vector<double>>(),
            j.at("weights").get<std::vector<double>>()};
}

}  // namespace devbound
