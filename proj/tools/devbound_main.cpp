// devbound CLI: CSV/witness ingestion, bound computation, verification,
// fuzzing and class/weight checks with machine-readable JSON reports.
//
// Exit codes: 0 success / all checks pass, 1 inequality violation found,
// 2 invalid input or configuration.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "devbound/devbound.h"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInvalid = 2;

struct Dataset {
    std::vector<double> values;
    std::vector<double> weights;
    std::string digest;
};

[[noreturn]] void fail(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    std::exit(kExitInvalid);
}

void check_status(devbound_status status) {
    if (status != DEVBOUND_OK) fail(devbound_last_error());
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string fnv1a_digest(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
}

bool parse_double(const std::string& text, double& out) {
    // locale-independent: strtod with the C locale assumption (dot only)
    const char* s = text.c_str();
    char* end = nullptr;
    out = std::strtod(s, &end);
    while (end != nullptr && (*end == ' ' || *end == '\t' || *end == '\r'))
        ++end;
    return end != nullptr && *end == '\0' && end != s;
}

// CSV with two columns value,weight; a non-numeric first row is treated
// as a header.
Dataset load_csv(const std::string& path) {
    const std::string bytes = read_file(path);
    Dataset ds;
    ds.digest = fnv1a_digest(bytes);
    std::istringstream in(bytes);
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string trimmed = line;
        trimmed.erase(0, trimmed.find_first_not_of(" \t"));
        if (trimmed.empty()) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            fail(path + ": row " + std::to_string(row) +
                 ": expected 'value,weight'");
        double v = 0.0, w = 0.0;
        const bool ok = parse_double(line.substr(0, comma), v) &&
                        parse_double(line.substr(comma + 1), w);
        if (!ok) {
            if (row == 1 && ds.values.empty()) continue;  // header row
            fail(path + ": row " + std::to_string(row) + ": not numeric");
        }
        ds.values.push_back(v);
        ds.weights.push_back(w);
    }
    if (ds.values.empty()) fail(path + ": no data rows");
    return ds;
}

Dataset load_witness_json(const std::string& path) {
    const std::string bytes = read_file(path);
    Dataset ds;
    ds.digest = fnv1a_digest(bytes);
    json j;
    try {
        j = json::parse(bytes);
        ds.values = j.at("values").get<std::vector<double>>();
        ds.weights = j.at("weights").get<std::vector<double>>();
    } catch (const json::exception& e) {
        fail(path + ": " + e.what());
    }
    return ds;
}

Dataset load_dataset(const std::string& path) {
    if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0)
        return load_witness_json(path);
    return load_csv(path);
}

std::optional<double> tolerance_override() {
    const char* env = std::getenv("DEVBOUND_TOLERANCE");
    if (env == nullptr || *env == '\0') return std::nullopt;
    double v = 0.0;
    if (!parse_double(env, v) || !(v > 0.0))
        fail("DEVBOUND_TOLERANCE must be a positive number");
    return v;
}

devbound_sample* make_sample(const Dataset& ds) {
    devbound_sample* sample = nullptr;
    const double rel = tolerance_override().value_or(1e-9);
    check_status(devbound_sample_create_tol(ds.values.data(),
                                            ds.weights.data(),
                                            ds.values.size(), 1e-9, rel,
                                            1e-12, &sample));
    return sample;
}

void emit(const char* report_json, const std::string& output_path) {
    std::string text(report_json);
    text += '\n';
    if (output_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output_path, std::ios::binary);
        if (!out) fail("cannot write '" + output_path + "'");
        out << text;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified deviation-from-mean bounds"};
    app.require_subcommand(1);

    std::string input, output, window = "all", k_spec = "auto";
    std::string chain = "raw_moment", function_name, modulus_name, class_name;
    std::string regime = "simplex", distribution = "uniform";
    std::vector<double> r_list;
    int theorem = 6;
    double p = 2.0;
    std::optional<double> m_override;
    std::uint64_t seed = 1;
    std::size_t trials = 100, n_min = 2, n_max = 8;
    unsigned grid = 64;

    auto* bound = app.add_subcommand("bound", "compute certified bounds");
    bound->add_option("--input", input, "CSV file (value,weight)")->required();
    bound->add_option("--theorem", theorem, "1, 2, 4, 5, 6 or 7")->required();
    bound->add_option("--r", r_list, "exponent r (repeatable)");
    bound->add_option("--p", p, "exponent p");
    bound->add_option("--window", window, "'all' or 'k:j' (1-based)");
    bound->add_option("--k", k_spec, "'auto' or a split index");
    bound->add_option("--chain", chain,
                      "raw_moment | power_jensen_gap | function_gap");
    bound->add_option("--function", function_name, "registry function name");
    bound->add_option("--modulus", modulus_name, "registry modulus name");
    bound->add_option("--m", m_override, "modulus scale for theorem 4");
    bound->add_option("--output", output, "write the report here");

    auto* verify = app.add_subcommand("verify",
                                      "verify every applicable inequality");
    verify->add_option("--input", input, "CSV file or witness JSON")
        ->required();
    verify->add_option("--r", r_list, "exponent r (repeatable)");
    verify->add_option("--output", output, "write the report here");

    auto* fuzz = app.add_subcommand("fuzz", "randomized tightness search");
    fuzz->add_option("--seed", seed, "master seed");
    fuzz->add_option("--trials", trials, "number of trials");
    fuzz->add_option("--regime", regime, "simplex | equal | steffensen");
    fuzz->add_option("--n-min", n_min, "smallest sample size");
    fuzz->add_option("--n-max", n_max, "largest sample size");
    fuzz->add_option("--r", r_list, "exponent r (repeatable)");
    fuzz->add_option("--distribution", distribution,
                     "uniform | heavy_tail | clustered");
    fuzz->add_option("--output", output, "write the report here");

    auto* check_weights =
        app.add_subcommand("check-weights", "classify a weight vector");
    check_weights->add_option("--input", input, "CSV file (value,weight)")
        ->required();
    check_weights->add_option("--output", output, "write the report here");

    auto* check_function =
        app.add_subcommand("check-function", "grid function-class checker");
    check_function->add_option("name", function_name, "registry name")
        ->required();
    check_function
        ->add_option("--class", class_name,
                     "superquadratic | uniform_convex | modulus")
        ->required();
    check_function->add_option("--modulus", modulus_name,
                               "modulus for uniform_convex");
    check_function->add_option("--grid", grid, "grid points per axis");
    check_function->add_option("--output", output, "write the report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    char* report = nullptr;

    if (bound->parsed()) {
        const Dataset ds = load_dataset(input);
        devbound_sample* sample = make_sample(ds);
        json req;
        req["theorem"] = theorem;
        req["digest"] = ds.digest;
        if (!r_list.empty()) req["r"] = r_list;
        req["p"] = p;
        req["window"] = window;
        if (k_spec == "auto")
            req["k"] = "auto";
        else
            req["k"] = static_cast<std::size_t>(std::stoul(k_spec));
        req["chain"] = chain;
        if (!function_name.empty()) req["function"] = function_name;
        if (!modulus_name.empty()) req["modulus"] = modulus_name;
        if (m_override) req["m"] = *m_override;
        check_status(
            devbound_bound_report_json(sample, req.dump().c_str(), &report));
        emit(report, output);
        devbound_string_free(report);
        devbound_sample_free(sample);
        return kExitOk;
    }

    if (verify->parsed()) {
        const Dataset ds = load_dataset(input);
        devbound_sample* sample = make_sample(ds);
        json req;
        req["digest"] = ds.digest;
        if (!r_list.empty()) req["r"] = r_list;
        int all_pass = 0;
        check_status(devbound_verify_json(sample, req.dump().c_str(), &report,
                                          &all_pass));
        emit(report, output);
        devbound_string_free(report);
        devbound_sample_free(sample);
        return all_pass ? kExitOk : kExitViolation;
    }

    if (fuzz->parsed()) {
        json req;
        req["seed"] = seed;
        req["trials"] = trials;
        req["n_min"] = n_min;
        req["n_max"] = n_max;
        if (!r_list.empty()) req["r_set"] = r_list;
        req["regime"] = regime;
        req["distribution"] = distribution;
        if (auto tol = tolerance_override()) req["eps_ineq_rel"] = *tol;
        int violations = 0;
        check_status(
            devbound_fuzz_json(req.dump().c_str(), &report, &violations));
        emit(report, output);
        devbound_string_free(report);
        return violations == 0 ? kExitOk : kExitViolation;
    }

    if (check_weights->parsed()) {
        const Dataset ds = load_dataset(input);
        check_status(devbound_check_weights_json(ds.weights.data(),
                                                 ds.weights.size(), &report));
        emit(report, output);
        devbound_string_free(report);
        return kExitOk;
    }

    if (check_function->parsed()) {
        check_status(devbound_check_function_json(
            function_name.c_str(), class_name.c_str(),
            modulus_name.empty() ? nullptr : modulus_name.c_str(), grid,
            &report));
        emit(report, output);
        devbound_string_free(report);
        return kExitOk;
    }

    return kExitInvalid;
}
