#pragma once

#include <vector>

#include "core/rng.hpp"
#include "core/sample.hpp"

namespace fixtures {

// Signed-weight fixture: t = (1/2, -1/2, 1/2, 1/4, -1/4, 1/2),
// y = (-13/2, 2, 3, 4, 5, 6).  Satisfies sum t = 1, sum t*y = 0, the
// Steffensen prefix conditions, and admits exactly the split k = 3.
inline const std::vector<double> kSignedWeights{0.5, -0.5, 0.5,
                                                0.25, -0.25, 0.5};
inline const std::vector<double> kSignedValues{-6.5, 2.0, 3.0, 4.0, 5.0, 6.0};

inline devbound::WeightedSample signed_fixture() {
    return devbound::WeightedSample(kSignedValues, kSignedWeights);
}

inline devbound::WeightedSample equal_sample(std::vector<double> values) {
    const std::size_t n = values.size();
    return devbound::WeightedSample(
        std::move(values),
        std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

inline std::vector<double> random_simplex(std::size_t n, devbound::Rng& rng) {
    std::vector<double> w(n);
    double total = 0.0;
    for (auto& t : w) {
        t = 0.05 + rng.uniform();
        total += t;
    }
    for (auto& t : w) t /= total;
    return w;
}

}  // namespace fixtures
