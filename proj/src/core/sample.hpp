#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace devbound {

struct Tolerances {
    double eps_sum = 1e-9;        // weight-sum slack
    double eps_ineq_rel = 1e-9;   // relative inequality slack
    double eps_ineq_abs = 1e-12;  // absolute inequality slack
};

// 1-based inclusive index window [first, last].
struct Window {
    std::size_t first = 1;
    std::size_t last = 1;
};

// Ordered values x_1..x_n with signed weights t_1..t_n summing to one.
// Weight sign constraints are checked by the regime validators, not here.
class WeightedSample {
public:
    WeightedSample(std::vector<double> values, std::vector<double> weights,
                   Tolerances tol = {});

    std::size_t size() const { return values_.size(); }
    std::span<const double> values() const { return values_; }
    std::span<const double> weights() const { return weights_; }
    double value(std::size_t i1) const { return values_[i1 - 1]; }    // 1-based
    double weight(std::size_t i1) const { return weights_[i1 - 1]; }  // 1-based
    const Tolerances& tol() const { return tol_; }

private:
    std::vector<double> values_;
    std::vector<double> weights_;
    Tolerances tol_;
};

struct CenteredSample {
    WeightedSample sample;  // values are y_i = x_i - mean
    double origin_mean;     // the subtracted mean
};

// Scalar statistics a, b, c, d, g_{2r}.
struct MomentSummary {
    double mean = 0.0;            // a
    double square_moment = 0.0;   // b
    double power_moment = 0.0;    // c, for exponent p
    double p = 2.0;
    double central_moment = 0.0;  // g_{2r}
    double two_r = 2.0;
    std::optional<double> function_mean;  // d
    std::string function_label;
};

double weighted_mean(const WeightedSample& sample);
CenteredSample center(const WeightedSample& sample);

// Sum t_i |x_i - mean|^{2r}, rescaled by max|y_i| against overflow.
// Requires two_r >= 2 (r >= 1).
double central_power_moment(const WeightedSample& sample, double two_r);

double window_mass(const WeightedSample& sample, Window w);

// Weight-normalized window mean; throws DegenerateWindowError when the
// window mass is within eps_sum of zero.
double window_mean(const WeightedSample& sample, Window w);

MomentSummary summarize(const WeightedSample& sample, double p, double two_r);

void validate_window(const WeightedSample& sample, Window w);

}  // namespace devbound
