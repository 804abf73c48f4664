#include "devbound/devbound.h"

#include <cstring>
#include <exception>
#include <string>

#include <nlohmann/json.hpp>

#include "../core/bounds.hpp"
#include "../core/errors.hpp"
#include "../core/function_classes.hpp"
#include "../core/json_reports.hpp"
#include "../core/oracle.hpp"
#include "../core/sample.hpp"
#include "../core/weight_regimes.hpp"

using nlohmann::json;

namespace {

thread_local std::string g_last_error;

devbound_status to_status(const std::exception& e) {
    g_last_error = e.what();
    if (dynamic_cast<const devbound::InvalidInputError*>(&e))
        return DEVBOUND_ERR_INVALID_INPUT;
    if (dynamic_cast<const devbound::DomainError*>(&e))
        return DEVBOUND_ERR_DOMAIN;
    if (dynamic_cast<const devbound::RegimeError*>(&e))
        return DEVBOUND_ERR_REGIME;
    if (dynamic_cast<const devbound::DegenerateWindowError*>(&e))
        return DEVBOUND_ERR_DEGENERATE_WINDOW;
    if (dynamic_cast<const devbound::OrderError*>(&e))
        return DEVBOUND_ERR_ORDER;
    if (dynamic_cast<const devbound::ConfigError*>(&e))
        return DEVBOUND_ERR_CONFIG;
    if (dynamic_cast<const nlohmann::json::exception*>(&e))
        return DEVBOUND_ERR_CONFIG;
    return DEVBOUND_ERR_INTERNAL;
}

template <typename Fn>
devbound_status wrap(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return DEVBOUND_OK;
    } catch (const std::exception& e) {
        return to_status(e);
    } catch (...) {
        g_last_error = "unknown failure";
        return DEVBOUND_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

const devbound::WeightedSample& impl(const devbound_sample* s);

std::vector<double> parse_r_list(const json& j, const char* key,
                                 std::vector<double> fallback) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (v.is_number()) return {v.get<double>()};
    return v.get<std::vector<double>>();
}

json detect_regime_json(const devbound::WeightedSample& s) {
    const double tol = s.tol().eps_sum;
    if (devbound::is_equal_weights(s.weights(), tol)) return "equal";
    if (devbound::validate_positive_simplex(s.weights(), tol)
            .is_positive_simplex)
        return "simplex";
    if (devbound::validate_steffensen(s.weights(), tol).is_steffensen)
        return "steffensen";
    return "none";
}

json run_bound_request(const devbound::WeightedSample& sample,
                       const json& req) {
    using namespace devbound;
    const int theorem = req.value("theorem", 6);
    json bounds = json::array();

    switch (theorem) {
        case 1:
            bounds.push_back(bound_to_json(samuelson_bound(sample)));
            break;
        case 2:
            bounds.push_back(bound_to_json(
                weighted_power_bound(sample, req.value("p", 2.0))));
            break;
        case 4: {
            const std::string fname = req.value("function", "power:2");
            const RegistryEntry entry = lookup_function(fname);
            double m;
            if (req.contains("m"))
                m = req.at("m").get<double>();
            else if (entry.strong_convexity_scale)
                m = *entry.strong_convexity_scale;
            else if (fname == "power:2")
                m = 1.0;  // x^2 is strongly convex with m = 1
            else
                throw ConfigError("theorem 4 needs an explicit 'm' for " +
                                  fname);
            const double p = req.value("p", 2.0);
            const auto pair = uniform_convex_gap_bound(sample, entry.f, m, p);
            json moment = bound_to_json(pair.moment_form);
            moment["form"] = "moment";
            json gap = bound_to_json(pair.gap_form);
            gap["form"] = "gap";
            bounds.push_back(std::move(moment));
            bounds.push_back(std::move(gap));
            break;
        }
        case 5: {
            const RegistryEntry entry =
                lookup_function(req.value("function", "power:2"));
            const ModulusSpec phi =
                lookup_modulus(req.value("modulus", "power:2"));
            const auto rep = modulus_gap_bound(sample, entry.f, phi);
            json j;
            j["factor"] = rep.factor;
            j["gap"] = rep.gap;
            j["bound_on_modulus"] = rep.bound;
            j["mid_bound"] = rep.mid_bound;
            j["inverted_bound"] =
                rep.inverted_bound ? json(*rep.inverted_bound) : json();
            bounds.push_back(std::move(j));
            break;
        }
        case 6: {
            const Chain chain =
                parse_chain(req.value("chain", std::string("raw_moment")));
            std::optional<FunctionSpec> f;
            if (req.contains("function"))
                f = lookup_function(req.at("function").get<std::string>()).f;
            if (chain == Chain::function_gap && !f)
                throw ConfigError("function_gap chain needs 'function'");
            const auto rs = parse_r_list(req, "r", {1.0});

            std::vector<Window> windows;
            const std::string wspec = req.value("window", std::string("all"));
            if (wspec == "all") {
                for (std::size_t k = 1; k <= sample.size(); ++k)
                    for (std::size_t j = k; j <= sample.size(); ++j)
                        windows.push_back({k, j});
            } else {
                std::size_t k = 0, j = 0;
                if (std::sscanf(wspec.c_str(), "%zu:%zu", &k, &j) != 2)
                    throw ConfigError("bad window spec '" + wspec +
                                      "', expected 'k:j' or 'all'");
                windows.push_back({k, j});
            }
            for (const Window& w : windows)
                for (double r : rs)
                    bounds.push_back(bound_to_json(window_bound(
                        sample, w, r, chain, f ? &*f : nullptr)));
            break;
        }
        case 7: {
            const auto rs = parse_r_list(req, "r", {1.0});
            std::vector<std::size_t> ks;
            if (!req.contains("k") || req.at("k") == "auto") {
                for (const auto& s : admissible_split_indices(
                         sample.weights(), sample.tol().eps_sum))
                    if (s.holds) ks.push_back(s.k);
                if (ks.empty())
                    throw RegimeError("no admissible split index k");
            } else {
                ks.push_back(req.at("k").get<std::size_t>());
            }
            for (std::size_t k : ks) {
                for (double r : rs) {
                    json j = bound_to_json(js_prefix_bound(sample, k, r));
                    j["k"] = k;
                    j["prefix_deviation"] = js_prefix_deviation(sample, k);
                    bounds.push_back(std::move(j));
                }
            }
            break;
        }
        default:
            throw ConfigError("unknown theorem " + std::to_string(theorem) +
                              "; expected 1, 2, 4, 5, 6 or 7");
    }

    return json{{"schema_version", kSchemaVersion},
                {"input_digest", req.value("digest", std::string())},
                {"theorem", theorem},
                {"regime", detect_regime_json(sample)},
                {"bounds", std::move(bounds)}};
}

}  // namespace

struct devbound_sample {
    devbound::WeightedSample impl;
};

namespace {
const devbound::WeightedSample& impl(const devbound_sample* s) {
    if (s == nullptr) throw devbound::InvalidInputError("null sample handle");
    return s->impl;
}
}  // namespace

extern "C" {

devbound_status devbound_sample_create(const double* values,
                                       const double* weights, size_t n,
                                       devbound_sample** out_sample) {
    return devbound_sample_create_tol(values, weights, n, 1e-9, 1e-9, 1e-12,
                                      out_sample);
}

devbound_status devbound_sample_create_tol(const double* values,
                                           const double* weights, size_t n,
                                           double eps_sum, double eps_ineq_rel,
                                           double eps_ineq_abs,
                                           devbound_sample** out_sample) {
    return wrap([&] {
        if (values == nullptr || weights == nullptr || out_sample == nullptr)
            throw devbound::InvalidInputError("null pointer argument");
        devbound::Tolerances tol{eps_sum, eps_ineq_rel, eps_ineq_abs};
        *out_sample = new devbound_sample{devbound::WeightedSample(
            {values, values + n}, {weights, weights + n}, tol)};
    });
}

void devbound_sample_free(devbound_sample* sample) { delete sample; }

const char* devbound_last_error(void) { return g_last_error.c_str(); }

void devbound_string_free(char* s) { delete[] s; }

devbound_status devbound_weighted_mean(const devbound_sample* sample,
                                       double* out) {
    return wrap([&] { *out = devbound::weighted_mean(impl(sample)); });
}

devbound_status devbound_central_power_moment(const devbound_sample* sample,
                                              double two_r, double* out) {
    return wrap(
        [&] { *out = devbound::central_power_moment(impl(sample), two_r); });
}

devbound_status devbound_samuelson_bound(const devbound_sample* sample,
                                         double* out) {
    return wrap([&] { *out = devbound::samuelson_bound(impl(sample)).bound; });
}

devbound_status devbound_t_constant(double alpha0, double p, double* out) {
    return wrap([&] { *out = devbound::t_constant(alpha0, p); });
}

devbound_status devbound_weighted_power_bound(const devbound_sample* sample,
                                              double p, double* out) {
    return wrap(
        [&] { *out = devbound::weighted_power_bound(impl(sample), p).bound; });
}

devbound_status devbound_window_bound(const devbound_sample* sample, size_t k,
                                      size_t j, double r, const char* chain,
                                      const char* function_name, double* out) {
    return wrap([&] {
        const devbound::Chain c =
            devbound::parse_chain(chain == nullptr ? "raw_moment" : chain);
        std::optional<devbound::FunctionSpec> f;
        if (function_name != nullptr && *function_name != '\0')
            f = devbound::lookup_function(function_name).f;
        *out = devbound::window_bound(impl(sample), devbound::Window{k, j}, r,
                                      c, f ? &*f : nullptr)
                   .bound;
    });
}

devbound_status devbound_js_prefix_bound(const devbound_sample* sample,
                                         size_t k, double r, double* out) {
    return wrap(
        [&] { *out = devbound::js_prefix_bound(impl(sample), k, r).bound; });
}

devbound_status devbound_exact_max_deviation(const devbound_sample* sample,
                                             double* out_value,
                                             size_t* out_index) {
    return wrap([&] {
        const auto [value, index] = devbound::exact_max_deviation(impl(sample));
        if (out_value != nullptr) *out_value = value;
        if (out_index != nullptr) *out_index = index;
    });
}

devbound_status devbound_bound_report_json(const devbound_sample* sample,
                                           const char* request_json,
                                           char** out_json) {
    return wrap([&] {
        json req = json::object();
        if (request_json != nullptr && *request_json != '\0')
            req = json::parse(request_json);
        *out_json = dup_string(run_bound_request(impl(sample), req).dump());
    });
}

devbound_status devbound_verify_json(const devbound_sample* sample,
                                     const char* request_json, char** out_json,
                                     int* out_all_pass) {
    return wrap([&] {
        json req = json::object();
        if (request_json != nullptr && *request_json != '\0')
            req = json::parse(request_json);
        const auto rs = parse_r_list(req, "r", {1.0, 2.0});
        const auto rep = devbound::verify_dataset(impl(sample), rs);
        json j = devbound::verification_to_json(rep);
        if (req.contains("digest")) j["input_digest"] = req.at("digest");
        *out_json = dup_string(j.dump());
        if (out_all_pass != nullptr) *out_all_pass = rep.all_pass ? 1 : 0;
    });
}

devbound_status devbound_fuzz_json(const char* config_json, char** out_json,
                                   int* out_violation_count) {
    return wrap([&] {
        json req = json::object();
        if (config_json != nullptr && *config_json != '\0')
            req = json::parse(config_json);
        devbound::FuzzConfig config;
        config.master_seed = req.value("seed", config.master_seed);
        config.trials = req.value("trials", config.trials);
        config.n_min = req.value("n_min", config.n_min);
        config.n_max = req.value("n_max", config.n_max);
        config.r_set = parse_r_list(req, "r_set", config.r_set);
        if (req.contains("regime"))
            config.regime =
                devbound::parse_regime(req.at("regime").get<std::string>());
        if (req.contains("distribution"))
            config.distribution = devbound::parse_distribution(
                req.at("distribution").get<std::string>());
        if (req.contains("eps_ineq_rel"))
            config.tol.eps_ineq_rel = req.at("eps_ineq_rel").get<double>();
        const auto rep = devbound::fuzz_tightness(config);
        *out_json = dup_string(devbound::fuzz_to_json(rep, config).dump());
        if (out_violation_count != nullptr)
            *out_violation_count = static_cast<int>(rep.violations.size());
    });
}

devbound_status devbound_check_weights_json(const double* weights, size_t n,
                                            char** out_json) {
    return wrap([&] {
        if (weights == nullptr) throw devbound::InvalidInputError("null weights");
        std::span<const double> w{weights, n};
        *out_json =
            dup_string(devbound::weights_report_to_json(w, 1e-9).dump());
    });
}

devbound_status devbound_check_function_json(const char* function_name,
                                             const char* class_name,
                                             const char* modulus_name,
                                             unsigned grid_size,
                                             char** out_json) {
    return wrap([&] {
        using namespace devbound;
        if (function_name == nullptr || class_name == nullptr)
            throw ConfigError("function and class names are required");
        const std::size_t grid = grid_size == 0 ? 64 : grid_size;
        const std::string cls = class_name;
        json j;
        j["schema_version"] = kSchemaVersion;
        j["function"] = function_name;
        j["class"] = cls;
        j["grid_size"] = grid;

        auto witness_json = [](const ClassWitness& w) {
            return json{{"x", w.x},       {"y", w.y},   {"t", w.t},
                        {"lhs", w.lhs},   {"rhs", w.rhs},
                        {"slack", w.slack}};
        };

        if (cls == "superquadratic") {
            const auto cert =
                check_superquadratic(lookup_function(function_name).f, grid);
            j["verdict"] = class_verdict_name(cert.verdict);
            j["witness"] =
                cert.witness ? witness_json(*cert.witness) : json();
        } else if (cls == "uniform_convex") {
            if (modulus_name == nullptr)
                throw ConfigError("uniform_convex check needs a modulus");
            const auto cert = check_uniform_convexity(
                lookup_function(function_name).f, lookup_modulus(modulus_name),
                grid);
            j["modulus"] = modulus_name;
            j["verdict"] = class_verdict_name(cert.verdict);
            j["witness"] =
                cert.witness ? witness_json(*cert.witness) : json();
            j["min_slack"] = cert.min_slack;
            j["max_slack"] = cert.max_slack;
        } else if (cls == "modulus") {
            const auto flags =
                check_modulus_properties(lookup_modulus(function_name), grid);
            j["flags"] = {
                {"increasing", property_flag_name(flags.increasing)},
                {"zero_at_zero", property_flag_name(flags.zero_at_zero)},
                {"convex", property_flag_name(flags.convex)},
                {"submultiplicative",
                 property_flag_name(flags.submultiplicative)}};
        } else {
            throw ConfigError("unknown class '" + cls +
                              "'; expected superquadratic, uniform_convex or "
                              "modulus");
        }
        *out_json = dup_string(j.dump());
    });
}

}  // extern "C"
