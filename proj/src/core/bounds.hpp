#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "function_classes.hpp"
#include "sample.hpp"

namespace devbound {

enum class Regime { simplex, equal, steffensen };
enum class Chain { raw_moment, power_jensen_gap, function_gap };

const char* regime_name(Regime r);
const char* chain_name(Chain c);
Chain parse_chain(const std::string& name);  // throws ConfigError

// A computed bound with the pieces it was assembled from.
struct BoundReport {
    double bound = 0.0;
    double numerator = 0.0;
    double denominator = 1.0;  // +infinity sentinel in the degenerate case
    Regime regime = Regime::simplex;
    std::optional<Window> window;
    double r_or_p = 2.0;
    double window_mass = 1.0;  // S
    std::optional<double> t_constant;
    std::optional<double> alpha0;
    Chain chain = Chain::raw_moment;
};

// sqrt((n-1)(b - a^2)) for equal weights.
BoundReport samuelson_bound(const WeightedSample& sample);

// T = (1-a0)^{1-1/p} / (a0^{1/p} (a0^{p-1} + (1-a0)^{p-1})^{1/p}).
double t_constant(double alpha0, double p);

// max|x_k - a| <= T (c - a^p)^{1/p}; needs positive values and p >= 2.
BoundReport weighted_power_bound(const WeightedSample& sample, double p);

struct GapBoundPair {
    BoundReport moment_form;  // T (sum alpha_i |x_i - a|^p)^{1/p}
    BoundReport gap_form;     // T m^{-1/p} (c - f(a))^{1/p}
};

// For f uniformly convex with modulus m x^p on the data's interval.
GapBoundPair uniform_convex_gap_bound(const WeightedSample& sample,
                                      const FunctionSpec& f, double m,
                                      double p);

struct ModulusBoundReport {
    double factor = 0.0;     // Phi(n-1) n / (n-1 + Phi(n-1))
    double gap = 0.0;        // d - f(a)
    double bound = 0.0;      // on max_k Phi(|x_k - a|)
    double mid_bound = 0.0;  // factor * (1/n) sum Phi(|x_i - a|)
    std::optional<double> inverted_bound;  // on max|x_k - a|
};

// Equal weights; phi convex, increasing, zero at zero, submultiplicative
// (run check_modulus_properties beforehand for generic moduli).
ModulusBoundReport modulus_gap_bound(const WeightedSample& sample,
                                     const FunctionSpec& f,
                                     const ModulusSpec& phi);

// Windowed-mean bound (N/D)^{1/2r} with D = S + S^{2r}(1-S)^{1-2r} and
// the numerator picked by the chain.  f is required for function_gap;
// power_jensen_gap needs nonnegative values.
BoundReport window_bound(const WeightedSample& sample, Window w, double r,
                         Chain chain = Chain::raw_moment,
                         const FunctionSpec* f = nullptr);

struct PrefixProfileRow {
    std::size_t j = 1;
    double prefix_mean = 0.0;  // x_{1,j}
    double bound = 0.0;        // mean + windowed bound on (1, j)
};

// Equal weights, values sorted nonincreasing; the x_{1,j} sequence is
// checked to be nonincreasing.
std::vector<PrefixProfileRow> prefix_means_profile(const WeightedSample& sample,
                                                   double r);

// Jensen-Steffensen prefix bound for an admissible split index k.
// Values must be sorted nondecreasing after centering.
BoundReport js_prefix_bound(const WeightedSample& sample, std::size_t k,
                            double r);

// |sum_{i=1}^{k} t_i y_i| / P_k on the centered sample; the quantity the
// prefix bound dominates.
double js_prefix_deviation(const WeightedSample& sample, std::size_t k);

}  // namespace devbound
