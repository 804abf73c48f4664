#include "weight_regimes.hpp"

#include <cmath>

#include "summation.hpp"

namespace devbound {

namespace {

std::vector<double> prefix_sums_of(std::span<const double> weights) {
    std::vector<double> out(weights.size());
    CompensatedSum s;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        s.add(weights[i]);
        out[i] = s.value();
    }
    return out;
}

std::vector<double> tail_sums_of(std::span<const double> weights) {
    std::vector<double> out(weights.size());
    CompensatedSum s;
    for (std::size_t i = weights.size(); i-- > 0;) {
        s.add(weights[i]);
        out[i] = s.value();
    }
    return out;
}

RegimeReport base_report(std::span<const double> weights) {
    RegimeReport r;
    r.prefix_sums = prefix_sums_of(weights);
    r.tail_sums = tail_sums_of(weights);
    return r;
}

}  // namespace

const char* split_failure_name(SplitFailure f) {
    switch (f) {
        case SplitFailure::none: return "none";
        case SplitFailure::prefix_nonneg: return "prefix_nonneg";
        case SplitFailure::prefix_dominated_by_pk:
            return "prefix_dominated_by_Pk";
        case SplitFailure::t_kplus1_positive: return "t_kplus1_positive";
        case SplitFailure::tail_partial_in_range:
            return "tail_partial_in_range";
    }
    return "?";
}

RegimeReport validate_positive_simplex(std::span<const double> weights,
                                       double tol) {
    RegimeReport r = base_report(weights);
    r.is_positive_simplex = true;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        // A zero weight genuinely breaks the theorems' divisions, so
        // positivity is strict with no tolerance.
        if (!(weights[i] > 0.0)) {
            r.is_positive_simplex = false;
            r.violations.push_back({"t_i > 0", i + 1, -weights[i]});
        }
    }
    const double total = r.prefix_sums.empty() ? 0.0 : r.prefix_sums.back();
    if (std::abs(total - 1.0) > tol) {
        r.is_positive_simplex = false;
        r.violations.push_back(
            {"sum t_i = 1", weights.size(), std::abs(total - 1.0)});
    }
    r.is_steffensen = validate_steffensen(weights, tol).is_steffensen;
    return r;
}

RegimeReport validate_steffensen(std::span<const double> weights, double tol) {
    RegimeReport r = base_report(weights);
    r.is_steffensen = true;
    const double pn = r.prefix_sums.empty() ? 0.0 : r.prefix_sums.back();
    if (!(pn > 0.0)) {
        r.is_steffensen = false;
        r.violations.push_back({"P_n > 0", weights.size(), -pn});
    }
    for (std::size_t j = 0; j < r.prefix_sums.size(); ++j) {
        const double pj = r.prefix_sums[j];
        if (pj < -tol) {
            r.is_steffensen = false;
            r.violations.push_back({"0 <= P_j", j + 1, -pj});
        }
        if (pj > pn + tol) {
            r.is_steffensen = false;
            r.violations.push_back({"P_j <= P_n", j + 1, pj - pn});
        }
    }
    return r;
}

std::vector<SplitAdmissibility> admissible_split_indices(
    std::span<const double> weights, double tol) {
    const std::size_t n = weights.size();
    const std::vector<double> p = prefix_sums_of(weights);
    std::vector<SplitAdmissibility> out;
    out.reserve(n > 0 ? n - 1 : 0);

    // first condition family is k-independent: 0 <= P_j <= 1 for all j
    bool prefixes_ok = true;
    for (double pj : p)
        if (pj < -tol || pj > 1.0 + tol) prefixes_ok = false;

    for (std::size_t k = 1; k + 1 <= n; ++k) {
        if (k == n) break;
        SplitAdmissibility a;
        a.k = k;
        a.holds = false;
        if (!prefixes_ok) {
            a.failed = SplitFailure::prefix_nonneg;
            out.push_back(a);
            continue;
        }
        bool dominated = true;
        for (std::size_t j = 1; j <= k; ++j)
            if (p[j - 1] > p[k - 1] + tol) dominated = false;
        if (!dominated) {
            a.failed = SplitFailure::prefix_dominated_by_pk;
            out.push_back(a);
            continue;
        }
        if (!(weights[k] > 0.0)) {  // t_{k+1}, strict
            a.failed = SplitFailure::t_kplus1_positive;
            out.push_back(a);
            continue;
        }
        // 0 <= sum_{i=k+1}^{l} t_i <= sum_{i=k+1}^{n} t_i for l = k+1..n
        const double tail_total = p[n - 1] - p[k - 1];
        bool tail_ok = true;
        CompensatedSum partial;
        for (std::size_t l = k + 1; l <= n; ++l) {
            partial.add(weights[l - 1]);
            const double v = partial.value();
            if (v < -tol || v > tail_total + tol) tail_ok = false;
        }
        if (!tail_ok) {
            a.failed = SplitFailure::tail_partial_in_range;
            out.push_back(a);
            continue;
        }
        a.holds = true;
        out.push_back(a);
    }
    return out;
}

bool is_equal_weights(std::span<const double> weights, double tol) {
    if (weights.empty()) return false;
    const double w = 1.0 / static_cast<double>(weights.size());
    for (double t : weights)
        if (std::abs(t - w) > tol) return false;
    return true;
}

}  // namespace devbound
