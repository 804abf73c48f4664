#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "rng.hpp"
#include "summation.hpp"
#include "weight_regimes.hpp"

namespace devbound {

namespace {

std::string fmt_window(std::size_t k, std::size_t j, double r) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "window=%zu:%zu r=%g", k, j, r);
    return buf;
}

std::string fmt_scalar(const char* label, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s=%g", label, v);
    return buf;
}

std::string fmt_split(std::size_t k, double r) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "k=%zu r=%g", k, r);
    return buf;
}

bool is_sorted_dir(std::span<const double> v, bool nondecreasing) {
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        if (nondecreasing ? v[i + 1] < v[i] : v[i + 1] > v[i]) return false;
    }
    return true;
}

class ReportBuilder {
public:
    explicit ReportBuilder(const Tolerances& tol) : tol_(tol) {}

    void add(std::string inequality, std::string where, double lhs,
             double rhs) {
        CheckRow row;
        row.inequality = std::move(inequality);
        row.where = std::move(where);
        row.lhs = lhs;
        row.rhs = rhs;
        row.slack = rhs - lhs;
        row.pass =
            row.slack >= -(tol_.eps_ineq_rel * std::abs(rhs) + tol_.eps_ineq_abs);
        rows_.push_back(std::move(row));
    }

    VerificationReport finish(Regime regime) {
        VerificationReport rep;
        rep.regime = regime;
        rep.checks = std::move(rows_);
        rep.all_pass = true;
        rep.worst_slack = std::numeric_limits<double>::infinity();
        for (const auto& row : rep.checks) {
            rep.all_pass = rep.all_pass && row.pass;
            rep.worst_slack = std::min(rep.worst_slack, row.slack);
        }
        if (rep.checks.empty()) rep.worst_slack = 0.0;
        return rep;
    }

private:
    Tolerances tol_;
    std::vector<CheckRow> rows_;
};

void add_simplex_checks(const WeightedSample& sample,
                        std::span<const double> r_set, ReportBuilder& out) {
    const Tolerances& tol = sample.tol();
    const bool equal = is_equal_weights(sample.weights(), tol.eps_sum);
    const auto [max_dev, max_idx] = exact_max_deviation(sample);
    const double mean = weighted_mean(sample);
    bool positive = true, nonnegative = true;
    for (double x : sample.values()) {
        positive = positive && x > 0.0;
        nonnegative = nonnegative && x >= 0.0;
    }

    if (equal) {
        out.add("theorem1", "", max_dev, samuelson_bound(sample).bound);

        const auto f_sq = make_power_function(2.0);
        const auto phi_sq = ModulusSpec::power(1.0, 2.0);
        const auto th5 = modulus_gap_bound(sample, f_sq, phi_sq);
        out.add("theorem5", "", max_dev * max_dev, th5.bound);
        out.add("theorem5_mid", "", max_dev * max_dev, th5.mid_bound);
        if (th5.inverted_bound)
            out.add("theorem5_inverted", "", max_dev, *th5.inverted_bound);
    }

    if (positive) {
        std::vector<double> ps;
        for (double r : r_set) ps.push_back(2.0 * r);
        std::sort(ps.begin(), ps.end());
        ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
        for (double p : ps) {
            out.add("theorem2", fmt_scalar("p", p), max_dev,
                    weighted_power_bound(sample, p).bound);
        }
    }

    {
        // x^2 is uniformly convex with modulus x^2 on all of R
        const auto f_sq = make_power_function(2.0);
        FunctionSpec f = f_sq;
        f.domain_low = -std::numeric_limits<double>::infinity();
        const auto th4 = uniform_convex_gap_bound(sample, f, 1.0, 2.0);
        out.add("theorem4_moment", "", max_dev, th4.moment_form.bound);
        out.add("theorem4_gap", "", max_dev, th4.gap_form.bound);
    }

    for (std::size_t k = 1; k <= sample.size(); ++k) {
        for (std::size_t j = k; j <= sample.size(); ++j) {
            const Window w{k, j};
            const double lhs = std::abs(window_mean(sample, w) - mean);
            for (double r : r_set) {
                const auto raw = window_bound(sample, w, r, Chain::raw_moment);
                out.add("theorem6", fmt_window(k, j, r), lhs, raw.bound);
                if (nonnegative) {
                    const auto pjg =
                        window_bound(sample, w, r, Chain::power_jensen_gap);
                    out.add("corollary1_chain", fmt_window(k, j, r), raw.bound,
                            pjg.bound);
                }
            }
        }
    }
}

void add_steffensen_checks(const WeightedSample& sample,
                           std::span<const double> r_set,
                           ReportBuilder& out) {
    const Tolerances& tol = sample.tol();
    const CenteredSample centered = center(sample);
    const bool sorted_centered =
        is_sorted_dir(centered.sample.values(), /*nondecreasing=*/true);

    if (sorted_centered) {
        const auto splits =
            admissible_split_indices(sample.weights(), tol.eps_sum);
        for (const auto& split : splits) {
            if (!split.holds) continue;
            const double pk = window_mass(sample, Window{1, split.k});
            const double tail =
                window_mass(sample, Window{split.k + 1, sample.size()});
            if (pk <= tol.eps_sum || tail <= tol.eps_sum) continue;
            for (double r : r_set) {
                out.add("theorem7", fmt_split(split.k, r),
                        js_prefix_deviation(sample, split.k),
                        js_prefix_bound(sample, split.k, r).bound);
            }
        }
    }

    // Jensen-Steffensen gap for phi(x) = x^{2r}: phi' = 2r x^{2r-1} is
    // superadditive on R+, so the refined Jensen bound applies to any
    // monotone nonnegative data under Steffensen weights.
    bool nonnegative = true;
    for (double x : sample.values()) nonnegative = nonnegative && x >= 0.0;
    const bool monotone = is_sorted_dir(sample.values(), true) ||
                          is_sorted_dir(sample.values(), false);
    if (nonnegative && monotone) {
        const double zbar = weighted_mean(sample);
        for (double r : r_set) {
            const double two_r = 2.0 * r;
            CompensatedSum lhs_dev, rhs_sum;
            for (std::size_t i = 0; i < sample.size(); ++i) {
                const double z = sample.values()[i];
                const double t = sample.weights()[i];
                lhs_dev.add(t * std::pow(std::abs(z - zbar), two_r));
                rhs_sum.add(t * std::pow(z, two_r));
            }
            out.add("js_superquadratic_gap", fmt_scalar("r", r),
                    std::pow(zbar, two_r) + lhs_dev.value(), rhs_sum.value());
        }
    }
}

// --- fuzzing -------------------------------------------------------------

std::vector<double> generate_values(std::size_t n, ValueDistribution dist,
                                    Rng& rng) {
    std::vector<double> v(n);
    switch (dist) {
        case ValueDistribution::uniform:
            for (auto& x : v) x = rng.uniform(-10.0, 10.0);
            break;
        case ValueDistribution::heavy_tail:
            for (auto& x : v) {
                const double u = rng.uniform();
                x = std::tan(3.14159265358979323846 * (u - 0.5));
                x = std::clamp(x, -1e6, 1e6);
            }
            break;
        case ValueDistribution::clustered: {
            const double c0 = rng.uniform(-10.0, 10.0);
            const double c1 = rng.uniform(-10.0, 10.0);
            for (auto& x : v) {
                const double c = rng.uniform() < 0.5 ? c0 : c1;
                x = c + rng.uniform(-0.05, 0.05);
            }
            break;
        }
    }
    return v;
}

struct TrialBest {
    double tightness = 0.0;
    std::optional<WitnessCase> witness;
};

// Scans a verification report for the tightest informative row and for
// violations; 0/0 full-window rows are excluded from the ratio.
void scan_report(const VerificationReport& rep, const WeightedSample& sample,
                 std::size_t trial, const Tolerances& tol, TrialBest& best,
                 std::vector<WitnessCase>& violations) {
    for (const auto& row : rep.checks) {
        WitnessCase wc;
        auto fill = [&]() {
            wc.values.assign(sample.values().begin(), sample.values().end());
            wc.weights.assign(sample.weights().begin(), sample.weights().end());
            wc.inequality = row.inequality;
            wc.where = row.where;
            wc.lhs = row.lhs;
            wc.rhs = row.rhs;
            wc.trial = trial;
            // pull structured fields back out of the where string
            std::size_t k = 0, j = 0;
            double r = 0.0;
            if (std::sscanf(row.where.c_str(), "window=%zu:%zu r=%lf", &k, &j,
                            &r) == 3) {
                wc.window = Window{k, j};
                wc.r = r;
            } else if (std::sscanf(row.where.c_str(), "k=%zu r=%lf", &k, &r) ==
                       2) {
                wc.split_k = k;
                wc.r = r;
            } else if (std::sscanf(row.where.c_str(), "r=%lf", &r) == 1) {
                wc.r = r;
            }
        };
        if (!row.pass) {
            fill();
            violations.push_back(std::move(wc));
            continue;
        }
        if (row.rhs <= tol.eps_ineq_abs) continue;
        const double ratio = row.lhs / row.rhs;
        if (ratio > best.tightness) {
            best.tightness = ratio;
            fill();
            best.witness = std::move(wc);
        }
    }
}

WeightedSample build_trial_sample(std::vector<double> values,
                                  const std::vector<double>& weights,
                                  Regime regime, const Tolerances& tol) {
    if (regime == Regime::steffensen)
        std::sort(values.begin(), values.end());
    return WeightedSample(std::move(values), weights, tol);
}

}  // namespace

std::pair<double, std::size_t> exact_max_deviation(
    const WeightedSample& sample) {
    const double mean = weighted_mean(sample);
    double best = -1.0;
    std::size_t arg = 1;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double d = std::abs(sample.values()[i] - mean);
        if (d > best) {
            best = d;
            arg = i + 1;
        }
    }
    return {best, arg};
}

VerificationReport verify_dataset(const WeightedSample& sample,
                                  std::span<const double> r_set) {
    for (double r : r_set)
        if (!(r >= 1.0)) throw DomainError("verify_dataset needs r >= 1");
    const Tolerances& tol = sample.tol();
    const bool simplex =
        validate_positive_simplex(sample.weights(), tol.eps_sum)
            .is_positive_simplex;
    const bool steffensen =
        validate_steffensen(sample.weights(), tol.eps_sum).is_steffensen;
    if (!simplex && !steffensen)
        throw RegimeError(
            "weights satisfy neither the positive-simplex nor the "
            "Jensen-Steffensen conditions");

    ReportBuilder builder(tol);
    if (simplex) add_simplex_checks(sample, r_set, builder);
    if (steffensen) add_steffensen_checks(sample, r_set, builder);

    const Regime regime =
        !simplex ? Regime::steffensen
                 : (is_equal_weights(sample.weights(), tol.eps_sum)
                        ? Regime::equal
                        : Regime::simplex);
    return builder.finish(regime);
}

ValueDistribution parse_distribution(const std::string& name) {
    if (name == "uniform") return ValueDistribution::uniform;
    if (name == "heavy_tail") return ValueDistribution::heavy_tail;
    if (name == "clustered") return ValueDistribution::clustered;
    throw ConfigError("unknown value distribution '" + name + "'");
}

const char* distribution_name(ValueDistribution d) {
    switch (d) {
        case ValueDistribution::uniform: return "uniform";
        case ValueDistribution::heavy_tail: return "heavy_tail";
        case ValueDistribution::clustered: return "clustered";
    }
    return "?";
}

Regime parse_regime(const std::string& name) {
    if (name == "simplex") return Regime::simplex;
    if (name == "equal") return Regime::equal;
    if (name == "steffensen") return Regime::steffensen;
    throw ConfigError("unknown regime '" + name + "'");
}

std::vector<double> generate_simplex_weights(std::size_t n, Rng& rng) {
    std::vector<double> w(n);
    for (auto& t : w) t = -std::log(1.0 - rng.uniform());
    const double total = compensated_total(w);
    for (auto& t : w) t /= total;
    return w;
}

std::vector<double> generate_steffensen_weights(std::size_t n, Rng& rng) {
    // prefix sums drawn directly in [0, 1] with P_n = 1, then differenced:
    // 0 <= P_j <= P_n holds by construction, weights may be signed
    std::vector<double> prefix(n);
    for (std::size_t j = 0; j + 1 < n; ++j) prefix[j] = rng.uniform();
    prefix[n - 1] = 1.0;
    std::vector<double> w(n);
    w[0] = prefix[0];
    for (std::size_t j = 1; j < n; ++j) w[j] = prefix[j] - prefix[j - 1];
    return w;
}

FuzzReport fuzz_tightness(const FuzzConfig& config) {
    if (config.trials < 1) throw ConfigError("trials must be >= 1");
    if (config.n_min < 2 || config.n_max > 64 || config.n_min > config.n_max)
        throw ConfigError("n range must lie within [2, 64]");
    for (double r : config.r_set)
        if (!(r >= 1.0)) throw ConfigError("every r must be >= 1");
    if (config.r_set.empty()) throw ConfigError("r set must not be empty");

    FuzzReport report;
    std::vector<WitnessCase> violations;
    TrialBest global;

    for (std::size_t trial = 0; trial < config.trials; ++trial) {
        Rng rng(Rng::mix_seed(config.master_seed, trial));
        const std::size_t n = rng.uniform_index(config.n_min, config.n_max);

        std::vector<double> weights;
        switch (config.regime) {
            case Regime::equal:
                weights.assign(n, 1.0 / static_cast<double>(n));
                break;
            case Regime::simplex:
                weights = generate_simplex_weights(n, rng);
                break;
            case Regime::steffensen:
                weights = generate_steffensen_weights(n, rng);
                if (!validate_steffensen(weights, config.tol.eps_sum)
                         .is_steffensen)
                    throw ConfigError(
                        "steffensen generator self-check failed");
                break;
        }

        WeightedSample sample =
            build_trial_sample(generate_values(n, config.distribution, rng),
                               weights, config.regime, config.tol);

        TrialBest best;
        scan_report(verify_dataset(sample, config.r_set), sample, trial,
                    config.tol, best, violations);

        // coordinate hill-climbing around the trial's tightest case
        if (best.witness) {
            std::vector<double> current = best.witness->values;
            double scale = 1.0;
            for (double x : current) scale = std::max(scale, std::abs(x));
            double step = 0.5 * scale;
            for (int iter = 0; iter < 20; ++iter) {
                for (std::size_t i = 0; i < current.size(); ++i) {
                    for (double dir : {step, -step}) {
                        std::vector<double> cand = current;
                        cand[i] += dir;
                        WeightedSample cand_sample = build_trial_sample(
                            cand, weights, config.regime, config.tol);
                        TrialBest cand_best;
                        cand_best.tightness = best.tightness;
                        scan_report(verify_dataset(cand_sample, config.r_set),
                                    cand_sample, trial, config.tol, cand_best,
                                    violations);
                        if (cand_best.tightness > best.tightness &&
                            cand_best.witness) {
                            best = cand_best;
                            current = std::move(cand);
                            break;
                        }
                    }
                }
                step *= 0.7;
            }
        }

        if (best.tightness > global.tightness && best.witness) global = best;
    }

    report.trials_run = config.trials;
    report.best_tightness = global.tightness;
    report.tightest_witness = std::move(global.witness);
    std::sort(violations.begin(), violations.end(),
              [](const WitnessCase& a, const WitnessCase& b) {
                  return a.trial < b.trial;
              });
    report.violations = std::move(violations);
    return report;
}

}  // namespace devbound
