#include "bounds.hpp"

#include <algorithm>
#include <cmath>

#include "summation.hpp"
#include "weight_regimes.hpp"

namespace devbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_simplex(const WeightedSample& sample, const char* who) {
    const auto report =
        validate_positive_simplex(sample.weights(), sample.tol().eps_sum);
    if (!report.is_positive_simplex) {
        std::string msg = std::string(who) + " requires t_i > 0, sum t_i = 1";
        if (!report.violations.empty())
            msg += " (" + report.violations.front().condition + " fails at index " +
                   std::to_string(report.violations.front().index) + ")";
        throw RegimeError(msg);
    }
}

void require_equal_weights(const WeightedSample& sample, const char* who) {
    if (!is_equal_weights(sample.weights(), sample.tol().eps_sum))
        throw RegimeError(std::string(who) + " requires equal weights 1/n");
}

double min_weight(const WeightedSample& sample) {
    return *std::min_element(sample.weights().begin(), sample.weights().end());
}

// Clamp a numerically-negative gap to zero; a gap negative beyond the
// combined tolerance falsifies the declared function class.
double clamp_gap(double gap, double scale, const Tolerances& tol,
                 const char* what) {
    const double slack = tol.eps_ineq_rel * std::abs(scale) + tol.eps_ineq_abs;
    if (gap < -slack)
        throw DomainError(std::string(what) + " is negative (" +
                          std::to_string(gap) + "); hypotheses do not hold");
    return std::max(gap, 0.0);
}

// sum alpha_i |x_i - a|^p with max-rescaling, valid for any p >= 1.
double absolute_central_moment(const WeightedSample& sample, double p) {
    const double mean = weighted_mean(sample);
    double m = 0.0;
    for (double x : sample.values()) m = std::max(m, std::abs(x - mean));
    if (m == 0.0) return 0.0;
    CompensatedSum s;
    for (std::size_t i = 0; i < sample.size(); ++i)
        s.add(sample.weights()[i] *
              std::pow(std::abs(sample.values()[i] - mean) / m, p));
    return std::pow(m, p) * s.value();
}

// sum t_i x_i^p - a^p for nonnegative data, computed per term as
// a^p expm1(p log(x/a)) so near-constant samples do not cancel the gap
// away.  For p = 2 the gap is identically the central second moment.
double power_jensen_gap(const WeightedSample& sample, double p) {
    if (p == 2.0) return central_power_moment(sample, 2.0);
    const double a = weighted_mean(sample);
    if (a == 0.0) return 0.0;  // nonnegative data, zero mean: all zero
    const double ap = std::pow(a, p);
    CompensatedSum s;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double x = sample.values()[i];
        const double term =
            x == 0.0 ? -ap : ap * std::expm1(p * std::log(x / a));
        s.add(sample.weights()[i] * term);
    }
    return std::max(s.value(), 0.0);
}

void require_sorted(std::span<const double> v, bool nondecreasing,
                    const Tolerances& tol, const char* who) {
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        const double slack =
            tol.eps_ineq_rel * std::abs(v[i]) + tol.eps_ineq_abs;
        const bool ok = nondecreasing ? v[i + 1] >= v[i] - slack
                                      : v[i + 1] <= v[i] + slack;
        if (!ok)
            throw OrderError(std::string(who) + " requires values sorted " +
                             (nondecreasing ? "nondecreasing" : "nonincreasing") +
                             "; order breaks at index " + std::to_string(i + 2));
    }
}

}  // namespace

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::simplex: return "simplex";
        case Regime::equal: return "equal";
        case Regime::steffensen: return "steffensen";
    }
    return "?";
}

const char* chain_name(Chain c) {
    switch (c) {
        case Chain::raw_moment: return "raw_moment";
        case Chain::power_jensen_gap: return "power_jensen_gap";
        case Chain::function_gap: return "function_gap";
    }
    return "?";
}

Chain parse_chain(const std::string& name) {
    if (name == "raw_moment") return Chain::raw_moment;
    if (name == "power_jensen_gap") return Chain::power_jensen_gap;
    if (name == "function_gap") return Chain::function_gap;
    throw ConfigError("unknown chain '" + name + "'");
}

BoundReport samuelson_bound(const WeightedSample& sample) {
    require_equal_weights(sample, "samuelson_bound");
    // b - a^2 computed as the central second moment, which is the same
    // quantity without the cancellation
    const double variance = central_power_moment(sample, 2.0);
    const double n = static_cast<double>(sample.size());
    BoundReport rep;
    rep.regime = Regime::equal;
    rep.r_or_p = 2.0;
    rep.numerator = (n - 1.0) * variance;
    rep.denominator = 1.0;
    rep.bound = std::sqrt(rep.numerator);
    return rep;
}

double t_constant(double alpha0, double p) {
    if (!(alpha0 > 0.0 && alpha0 < 1.0))
        throw DomainError("t_constant needs alpha0 in (0, 1)");
    if (!(p >= 1.0)) throw DomainError("t_constant needs p >= 1");
    const double q = 1.0 - alpha0;
    return std::pow(q, 1.0 - 1.0 / p) /
           (std::pow(alpha0, 1.0 / p) *
            std::pow(std::pow(alpha0, p - 1.0) + std::pow(q, p - 1.0),
                     1.0 / p));
}

BoundReport weighted_power_bound(const WeightedSample& sample, double p) {
    require_simplex(sample, "weighted_power_bound");
    if (!(p >= 2.0)) throw DomainError("weighted_power_bound needs p >= 2");
    for (std::size_t i = 0; i < sample.size(); ++i)
        if (!(sample.values()[i] > 0.0))
            throw DomainError("weighted_power_bound needs x_i > 0: index " +
                              std::to_string(i + 1));
    const double num = power_jensen_gap(sample, p);
    const double a0 = min_weight(sample);
    BoundReport rep;
    rep.regime = is_equal_weights(sample.weights(), sample.tol().eps_sum)
                     ? Regime::equal
                     : Regime::simplex;
    rep.r_or_p = p;
    rep.alpha0 = a0;
    rep.t_constant = t_constant(a0, p);
    rep.numerator = num;
    rep.denominator = 1.0;
    rep.bound = *rep.t_constant * std::pow(num, 1.0 / p);
    return rep;
}

GapBoundPair uniform_convex_gap_bound(const WeightedSample& sample,
                                      const FunctionSpec& f, double m,
                                      double p) {
    require_simplex(sample, "uniform_convex_gap_bound");
    if (!(m > 0.0)) throw DomainError("modulus scale m must be positive");
    if (!(p >= 1.0)) throw DomainError("modulus exponent p must be >= 1");
    const double a = weighted_mean(sample);
    const double a0 = min_weight(sample);
    const double t_const = t_constant(a0, p);
    const Regime regime =
        is_equal_weights(sample.weights(), sample.tol().eps_sum)
            ? Regime::equal
            : Regime::simplex;

    GapBoundPair pair;
    pair.moment_form.regime = pair.gap_form.regime = regime;
    pair.moment_form.r_or_p = pair.gap_form.r_or_p = p;
    pair.moment_form.alpha0 = pair.gap_form.alpha0 = a0;
    pair.moment_form.t_constant = pair.gap_form.t_constant = t_const;

    pair.moment_form.numerator = absolute_central_moment(sample, p);
    pair.moment_form.bound =
        t_const * std::pow(pair.moment_form.numerator, 1.0 / p);

    CompensatedSum cs;
    for (std::size_t i = 0; i < sample.size(); ++i)
        cs.add(sample.weights()[i] * f(sample.values()[i]));
    const double c = cs.value();
    const double fa = f(a);
    // Uniform convexity certifies c - f(a) >= m sum alpha |x - a|^p.  The
    // moment side is computed without cancellation, so when the direct
    // subtraction falls below it by no more than the rounding scale of
    // c - f(a), snap the gap up to the certified floor; a larger deficit
    // falsifies the declared modulus.
    const double certified = m * pair.moment_form.numerator;
    const double slack =
        sample.tol().eps_ineq_rel * (std::abs(c) + std::abs(fa)) +
        sample.tol().eps_ineq_abs;
    if (c - fa < certified - slack)
        throw DomainError(
            "Jensen gap c - f(a) falls short of m sum alpha |x - a|^p; f is "
            "not uniformly convex with modulus m x^p on this data");
    pair.gap_form.numerator = std::max(c - fa, certified);
    pair.gap_form.bound = t_const * std::pow(m, -1.0 / p) *
                          std::pow(pair.gap_form.numerator, 1.0 / p);
    pair.gap_form.bound = std::max(pair.gap_form.bound, pair.moment_form.bound);
    return pair;
}

ModulusBoundReport modulus_gap_bound(const WeightedSample& sample,
                                     const FunctionSpec& f,
                                     const ModulusSpec& phi) {
    require_equal_weights(sample, "modulus_gap_bound");
    const double n = static_cast<double>(sample.size());
    const double a = weighted_mean(sample);
    const double phi_n1 = phi.eval(n - 1.0);

    ModulusBoundReport rep;
    rep.factor = phi_n1 * n / (n - 1.0 + phi_n1);

    CompensatedSum fs, ps;
    double span = 0.0;
    for (double x : sample.values()) {
        fs.add(f(x) / n);
        ps.add(phi.eval(std::abs(x - a)) / n);
        span = std::max(span, std::abs(x - a));
    }
    const double d = fs.value();
    const double fa = f(a);
    // The theorem's middle inequality certifies (1/n) sum phi(|x - a|)
    // <= d - f(a); use it as a cancellation floor for the subtraction,
    // as in uniform_convex_gap_bound.
    const double certified = ps.value();
    const double slack =
        sample.tol().eps_ineq_rel * (std::abs(d) + std::abs(fa)) +
        sample.tol().eps_ineq_abs;
    if (d - fa < certified - slack)
        throw DomainError(
            "Jensen gap d - f(a) falls short of the mean modulus; the "
            "superquadraticity hypotheses do not hold on this data");
    rep.gap = std::max({d - fa, certified, 0.0});
    rep.bound = rep.factor * rep.gap;
    rep.mid_bound = rep.factor * certified;

    const bool invertible = phi.power_form
                                ? true
                                : phi.increasing == PropertyFlag::checked_true;
    if (invertible) {
        // Phi is increasing, so bisection inverts it on [0, data span];
        // max|x_k - a| never exceeds the span, which caps the root.
        double lo = 0.0, hi = std::max(span, 1e-300);
        if (phi.eval(hi) <= rep.bound) {
            rep.inverted_bound = hi;
        } else {
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (phi.eval(mid) < rep.bound)
                    lo = mid;
                else
                    hi = mid;
            }
            rep.inverted_bound = 0.5 * (lo + hi);
        }
    }
    return rep;
}

BoundReport window_bound(const WeightedSample& sample, Window w, double r,
                         Chain chain, const FunctionSpec* f) {
    require_simplex(sample, "window_bound");
    validate_window(sample, w);
    if (!(r >= 1.0)) throw DomainError("window_bound needs r >= 1");
    const Tolerances& tol = sample.tol();
    const double s = window_mass(sample, w);
    if (s <= tol.eps_sum)
        throw DegenerateWindowError("window mass " + std::to_string(s) +
                                    " vanishes");
    const double two_r = 2.0 * r;

    BoundReport rep;
    rep.regime = is_equal_weights(sample.weights(), tol.eps_sum)
                     ? Regime::equal
                     : Regime::simplex;
    rep.window = w;
    rep.r_or_p = r;
    rep.window_mass = s;
    rep.chain = chain;

    switch (chain) {
        case Chain::raw_moment:
            rep.numerator = central_power_moment(sample, two_r);
            break;
        case Chain::power_jensen_gap: {
            for (std::size_t i = 0; i < sample.size(); ++i)
                if (sample.values()[i] < 0.0)
                    throw DomainError(
                        "power_jensen_gap needs x_i >= 0: index " +
                        std::to_string(i + 1));
            rep.numerator = power_jensen_gap(sample, two_r);
            break;
        }
        case Chain::function_gap: {
            if (f == nullptr)
                throw ConfigError("function_gap chain needs a function");
            for (std::size_t i = 0; i < sample.size(); ++i) {
                const double x = sample.values()[i];
                if (x < f->domain_low || x >= f->domain_high)
                    throw DomainError("value outside the domain of " +
                                      f->label + ": index " +
                                      std::to_string(i + 1));
            }
            if (f->power_form && f->domain_low >= 0.0) {
                // scale (sum t x^q - a^q), cancellation-free
                rep.numerator = f->power_form->scale *
                                power_jensen_gap(sample, f->power_form->exponent);
                break;
            }
            CompensatedSum cs;
            for (std::size_t i = 0; i < sample.size(); ++i)
                cs.add(sample.weights()[i] * (*f)(sample.values()[i]));
            const double c = cs.value();
            const double fa = (*f)(weighted_mean(sample));
            const std::string what = "Jensen gap of " + f->label;
            rep.numerator = clamp_gap(c - fa, std::abs(c) + std::abs(fa), tol,
                                      what.c_str());
            break;
        }
    }

    if (1.0 - s <= tol.eps_sum) {
        // full window: the bound collapses to the exact deviation 0
        rep.denominator = kInf;
        rep.bound = 0.0;
        return rep;
    }
    rep.denominator =
        s + std::pow(s, two_r) * std::pow(1.0 - s, 1.0 - two_r);
    rep.bound = std::pow(rep.numerator / rep.denominator, 1.0 / two_r);
    return rep;
}

std::vector<PrefixProfileRow> prefix_means_profile(const WeightedSample& sample,
                                                   double r) {
    require_equal_weights(sample, "prefix_means_profile");
    require_sorted(sample.values(), /*nondecreasing=*/false, sample.tol(),
                   "prefix_means_profile");
    const double mean = weighted_mean(sample);
    std::vector<PrefixProfileRow> out;
    out.reserve(sample.size());
    for (std::size_t j = 1; j <= sample.size(); ++j) {
        PrefixProfileRow row;
        row.j = j;
        row.prefix_mean = window_mean(sample, Window{1, j});
        row.bound =
            mean + window_bound(sample, Window{1, j}, r, Chain::raw_moment).bound;
        out.push_back(row);
    }
    for (std::size_t i = 0; i + 1 < out.size(); ++i) {
        const double slack =
            sample.tol().eps_ineq_rel * std::abs(out[i].prefix_mean) +
            sample.tol().eps_ineq_abs;
        if (out[i + 1].prefix_mean > out[i].prefix_mean + slack)
            throw OrderError("prefix means are not nonincreasing at j = " +
                             std::to_string(i + 2));
    }
    return out;
}

BoundReport js_prefix_bound(const WeightedSample& sample, std::size_t k,
                            double r) {
    if (!(r >= 1.0)) throw DomainError("js_prefix_bound needs r >= 1");
    if (k < 1 || k >= sample.size())
        throw InvalidInputError("split index k must satisfy 1 <= k <= n-1");
    const Tolerances& tol = sample.tol();
    const CenteredSample centered = center(sample);
    require_sorted(centered.sample.values(), /*nondecreasing=*/true, tol,
                   "js_prefix_bound");

    const auto splits = admissible_split_indices(sample.weights(), tol.eps_sum);
    const auto& split = splits[k - 1];
    if (!split.holds)
        throw RegimeError("split index k = " + std::to_string(k) +
                          " is not admissible: " +
                          split_failure_name(split.failed) + " fails");

    const double pk = window_mass(sample, Window{1, k});
    if (pk <= tol.eps_sum)
        throw DegenerateWindowError("prefix mass P_k vanishes at k = " +
                                    std::to_string(k));
    const double tail = window_mass(sample, Window{k + 1, sample.size()});
    const double two_r = 2.0 * r;

    BoundReport rep;
    rep.regime = Regime::steffensen;
    rep.window = Window{1, k};
    rep.r_or_p = r;
    rep.window_mass = pk;
    rep.numerator = central_power_moment(sample, two_r);
    if (tail <= tol.eps_sum) {
        rep.denominator = kInf;
        rep.bound = 0.0;
        return rep;
    }
    rep.denominator =
        pk + std::pow(pk, two_r) * std::pow(tail, 1.0 - two_r);
    rep.bound = std::pow(rep.numerator / rep.denominator, 1.0 / two_r);
    return rep;
}

double js_prefix_deviation(const WeightedSample& sample, std::size_t k) {
    if (k < 1 || k >= sample.size())
        throw InvalidInputError("split index k must satisfy 1 <= k <= n-1");
    const CenteredSample centered = center(sample);
    const double pk = window_mass(sample, Window{1, k});
    if (std::abs(pk) <= sample.tol().eps_sum)
        throw DegenerateWindowError("prefix mass P_k vanishes at k = " +
                                    std::to_string(k));
    CompensatedSum s;
    for (std::size_t i = 1; i <= k; ++i)
        s.add(centered.sample.weight(i) * centered.sample.value(i));
    return std::abs(s.value() / pk);
}

}  // namespace devbound
