#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bounds.hpp"
#include "sample.hpp"

namespace devbound {

struct CheckRow {
    std::string inequality;
    std::string where;  // window/index/parameter description
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  // rhs - lhs
    bool pass = true;
};

struct VerificationReport {
    Regime regime = Regime::simplex;
    std::vector<CheckRow> checks;
    bool all_pass = true;
    double worst_slack = 0.0;
};

// Exhaustive max of |x_k - mean|; ties break to the first index (1-based).
std::pair<double, std::size_t> exact_max_deviation(const WeightedSample& sample);

// Runs every bound applicable to the sample's weight regime, for every
// window / split index / r, against exhaustively computed left sides.
// Failures become report rows, never exceptions.
VerificationReport verify_dataset(const WeightedSample& sample,
                                  std::span<const double> r_set);

enum class ValueDistribution { uniform, heavy_tail, clustered };

ValueDistribution parse_distribution(const std::string& name);
const char* distribution_name(ValueDistribution d);
Regime parse_regime(const std::string& name);

struct FuzzConfig {
    std::uint64_t master_seed = 1;
    std::size_t trials = 100;
    std::size_t n_min = 2;
    std::size_t n_max = 8;
    std::vector<double> r_set{1.0, 2.0};
    Regime regime = Regime::simplex;
    ValueDistribution distribution = ValueDistribution::uniform;
    Tolerances tol;
};

// A concrete (sample, inequality) instance; doubles as the violation
// witness and the tightest-case record.
struct WitnessCase {
    std::vector<double> values;
    std::vector<double> weights;
    std::string inequality;
    std::string where;
    std::optional<Window> window;       // for windowed checks
    std::optional<std::size_t> split_k; // for prefix (split-index) checks
    double r = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    std::size_t trial = 0;
};

struct FuzzReport {
    std::size_t trials_run = 0;
    double best_tightness = 0.0;  // max lhs/rhs over informative rows
    std::optional<WitnessCase> tightest_witness;
    std::vector<WitnessCase> violations;  // non-empty means a finding
};

// Seeded random search for tight cases: per trial, draw a sample in the
// configured regime, verify it, then hill-climb the tightest witness.
// Deterministic for a fixed master_seed (per-trial seeds, max-reduction).
FuzzReport fuzz_tightness(const FuzzConfig& config);

// Weight generators, exposed for the fuzzer's self-checks and tests.
std::vector<double> generate_simplex_weights(std::size_t n, class Rng& rng);
std::vector<double> generate_steffensen_weights(std::size_t n, class Rng& rng);

}  // namespace devbound
