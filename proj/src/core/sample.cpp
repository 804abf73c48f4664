#include "sample.hpp"

#include <algorithm>
#include <cmath>

#include "summation.hpp"

namespace devbound {

namespace {

std::string at_index(const char* what, std::size_t i1) {
    return std::string(what) + " at index " + std::to_string(i1);
}

}  // namespace

WeightedSample::WeightedSample(std::vector<double> values,
                               std::vector<double> weights, Tolerances tol)
    : values_(std::move(values)), weights_(std::move(weights)), tol_(tol) {
    if (tol_.eps_sum <= 0 || tol_.eps_ineq_rel <= 0 || tol_.eps_ineq_abs <= 0)
        throw InvalidInputError("tolerances must be strictly positive");
    if (values_.size() != weights_.size())
        throw InvalidInputError("values and weights differ in length");
    if (values_.size() < 2)
        throw InvalidInputError("need at least two points");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i]))
            throw InvalidInputError(at_index("non-finite value", i + 1));
        if (!std::isfinite(weights_[i]))
            throw InvalidInputError(at_index("non-finite weight", i + 1));
    }
    const double total = compensated_total(weights_);
    if (std::abs(total - 1.0) > tol_.eps_sum)
        throw InvalidInputError("weights sum to " + std::to_string(total) +
                                ", expected 1");
}

double weighted_mean(const WeightedSample& sample) {
    CompensatedSum s;
    for (std::size_t i = 0; i < sample.size(); ++i)
        s.add(sample.weights()[i] * sample.values()[i]);
    return s.value();
}

CenteredSample center(const WeightedSample& sample) {
    const double mean = weighted_mean(sample);
    std::vector<double> y(sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i)
        y[i] = sample.values()[i] - mean;
    WeightedSample centered(std::move(y),
                            {sample.weights().begin(), sample.weights().end()},
                            sample.tol());
    return CenteredSample{std::move(centered), mean};
}

double central_power_moment(const WeightedSample& sample, double two_r) {
    if (!(two_r >= 2.0))
        throw DomainError("central_power_moment requires 2r >= 2");
    const double mean = weighted_mean(sample);
    double m = 0.0;
    for (double x : sample.values()) m = std::max(m, std::abs(x - mean));
    if (m == 0.0) return 0.0;
    CompensatedSum s;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double u = std::abs(sample.values()[i] - mean) / m;
        s.add(sample.weights()[i] * std::pow(u, two_r));
    }
    return std::pow(m, two_r) * s.value();
}

void validate_window(const WeightedSample& sample, Window w) {
    if (w.first < 1 || w.first > w.last || w.last > sample.size())
        throw InvalidInputError("window " + std::to_string(w.first) + ":" +
                                std::to_string(w.last) +
                                " out of range for n = " +
                                std::to_string(sample.size()));
}

double window_mass(const WeightedSample& sample, Window w) {
    validate_window(sample, w);
    CompensatedSum s;
    for (std::size_t i = w.first; i <= w.last; ++i) s.add(sample.weight(i));
    return s.value();
}

double window_mean(const WeightedSample& sample, Window w) {
    const double mass = window_mass(sample, w);
    if (std::abs(mass) <= sample.tol().eps_sum)
        throw DegenerateWindowError("window " + std::to_string(w.first) + ":" +
                                    std::to_string(w.last) +
                                    " has vanishing mass");
    CompensatedSum s;
    for (std::size_t i = w.first; i <= w.last; ++i)
        s.add(sample.weight(i) * sample.value(i));
    return s.value() / mass;
}

MomentSummary summarize(const WeightedSample& sample, double p, double two_r) {
    MomentSummary ms;
    ms.mean = weighted_mean(sample);
    CompensatedSum sq, pw;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double x = sample.values()[i];
        const double t = sample.weights()[i];
        sq.add(t * x * x);
        pw.add(t * std::pow(x, p));
    }
    ms.square_moment = sq.value();
    ms.power_moment = pw.value();
    ms.p = p;
    ms.central_moment = central_power_moment(sample, two_r);
    ms.two_r = two_r;
    return ms;
}

}  // namespace devbound
