#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace devbound {

struct RegimeViolation {
    std::string condition;
    std::size_t index = 0;  // 1-based
    double slack = 0.0;     // amount by which the condition failed
};

// Weight-regime validation outcome.  prefix_sums[j-1] = P_j,
// tail_sums[j-1] = sum_{i=j}^{n} t_i.
struct RegimeReport {
    std::vector<double> prefix_sums;
    std::vector<double> tail_sums;
    bool is_positive_simplex = false;
    bool is_steffensen = false;
    std::vector<RegimeViolation> violations;
};

enum class SplitFailure {
    none,
    prefix_nonneg,            // some P_j outside [0, 1]
    prefix_dominated_by_pk,   // some P_j > P_k with j <= k
    t_kplus1_positive,        // t_{k+1} <= 0
    tail_partial_in_range,    // some partial tail sum outside [0, tail total]
};

const char* split_failure_name(SplitFailure f);

struct SplitAdmissibility {
    std::size_t k = 0;  // 1-based split index, 1 <= k <= n-1
    bool holds = false;
    SplitFailure failed = SplitFailure::none;
};

// Positive simplex: every t_i > 0 (strict, no tolerance) and the total
// is 1 within tol.
RegimeReport validate_positive_simplex(std::span<const double> weights,
                                       double tol);

// Jensen-Steffensen: 0 <= P_j <= P_n for all j within tol, P_n > 0 strict.
RegimeReport validate_steffensen(std::span<const double> weights, double tol);

// Evaluates the split-index condition set for each k in 1..n-1.
// Validators never reorder weights; data monotonicity is checked by the
// bound call sites, not here.
std::vector<SplitAdmissibility> admissible_split_indices(
    std::span<const double> weights, double tol);

bool is_equal_weights(std::span<const double> weights, double tol);

}  // namespace devbound
