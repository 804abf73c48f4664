#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "core/oracle.hpp"
#include "core/rng.hpp"
#include "core/weight_regimes.hpp"
#include "fixtures.hpp"

using namespace devbound;

namespace {

const CheckRow* find_row(const VerificationReport& rep,
                         const std::string& inequality) {
    for (const auto& row : rep.checks)
        if (row.inequality == inequality) return &row;
    return nullptr;
}

}  // namespace

TEST_CASE("exact_max_deviation") {
    auto [dev, idx] = exact_max_deviation(fixtures::equal_sample({0, 0, 3}));
    CHECK(dev == doctest::Approx(2.0));
    CHECK(idx == 3);

    // ties break to the first index
    auto [tdev, tidx] = exact_max_deviation(fixtures::equal_sample({0, 2}));
    CHECK(tdev == doctest::Approx(1.0));
    CHECK(tidx == 1);
}

TEST_CASE("verify_dataset on an equal-weight sample") {
    const std::vector<double> r_set{1.0};
    auto rep =
        verify_dataset(fixtures::equal_sample({1.0, 2.0, 4.0, 8.0}), r_set);
    CHECK(rep.regime == Regime::equal);
    CHECK(rep.all_pass);

    const auto* th1 = find_row(rep, "theorem1");
    REQUIRE(th1 != nullptr);
    CHECK(th1->pass);
    CHECK(find_row(rep, "theorem5") != nullptr);
    CHECK(find_row(rep, "theorem5_inverted") != nullptr);
    CHECK(find_row(rep, "theorem2") != nullptr);
    CHECK(find_row(rep, "theorem4_moment") != nullptr);
    CHECK(find_row(rep, "theorem4_gap") != nullptr);
    CHECK(find_row(rep, "theorem6") != nullptr);
    CHECK(find_row(rep, "corollary1_chain") != nullptr);
    CHECK(rep.worst_slack >= -1e-12);
}

TEST_CASE("verify_dataset hits equality on the extremal sample") {
    auto rep = verify_dataset(fixtures::equal_sample({0.0, 0.0, 3.0}),
                              std::vector<double>{1.0});
    const auto* th1 = find_row(rep, "theorem1");
    REQUIRE(th1 != nullptr);
    CHECK(th1->lhs == doctest::Approx(2.0));
    CHECK(th1->rhs == doctest::Approx(2.0));
    CHECK(th1->pass);
    const auto* th5 = find_row(rep, "theorem5");
    REQUIRE(th5 != nullptr);
    CHECK(th5->lhs == doctest::Approx(4.0));
    CHECK(th5->rhs == doctest::Approx(4.0));
}

TEST_CASE("verify_dataset on the signed-weight fixture") {
    auto rep = verify_dataset(fixtures::signed_fixture(),
                              std::vector<double>{1.0});
    CHECK(rep.regime == Regime::steffensen);
    CHECK(rep.all_pass);
    REQUIRE(rep.checks.size() == 1);
    const auto& row = rep.checks[0];
    CHECK(row.inequality == "theorem7");
    CHECK(row.where == "k=3 r=1");
    CHECK(row.lhs == doctest::Approx(5.5));
    CHECK(row.rhs == doctest::Approx(std::sqrt(39.375)).epsilon(1e-12));
}

TEST_CASE("verify_dataset rejects unsupported weights") {
    CHECK_THROWS_AS(verify_dataset(WeightedSample({1.0, 2.0}, {1.5, -0.5}),
                                   std::vector<double>{1.0}),
                    RegimeError);
    CHECK_THROWS_AS(verify_dataset(fixtures::equal_sample({1, 2, 3}),
                                   std::vector<double>{0.5}),
                    DomainError);
}

TEST_CASE("random simplex datasets verify cleanly") {
    Rng rng(41);
    const std::vector<double> r_set{1.0, 1.5, 2.0};
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = rng.uniform_index(2, 8);
        std::vector<double> values(n);
        for (auto& v : values) v = rng.uniform(-10.0, 10.0);
        auto rep = verify_dataset(
            WeightedSample(values, fixtures::random_simplex(n, rng)), r_set);
        CHECK(rep.all_pass);
    }
}

TEST_CASE("steffensen weight generator self-check") {
    Rng rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = rng.uniform_index(2, 12);
        auto w = generate_steffensen_weights(n, rng);
        CHECK(validate_steffensen(w, 1e-9).is_steffensen);
    }
}

TEST_CASE("simplex weight generator self-check") {
    Rng rng(43);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = rng.uniform_index(2, 12);
        auto w = generate_simplex_weights(n, rng);
        CHECK(validate_positive_simplex(w, 1e-9).is_positive_simplex);
    }
}

TEST_CASE("fuzzer finds no violations and is deterministic") {
    FuzzConfig cfg;
    cfg.master_seed = 7;
    cfg.trials = 25;
    cfg.n_min = 2;
    cfg.n_max = 6;
    cfg.r_set = {1.0, 2.0};

    for (Regime regime : {Regime::equal, Regime::simplex, Regime::steffensen}) {
        cfg.regime = regime;
        auto a = fuzz_tightness(cfg);
        auto b = fuzz_tightness(cfg);
        CHECK(a.trials_run == 25);
        CHECK(a.violations.empty());
        CHECK(a.best_tightness == b.best_tightness);
        CHECK(a.best_tightness <= 1.0 + 1e-9);
        REQUIRE(a.tightest_witness.has_value() ==
                b.tightest_witness.has_value());
        if (a.tightest_witness) {
            CHECK(a.tightest_witness->values == b.tightest_witness->values);
            CHECK(a.tightest_witness->weights == b.tightest_witness->weights);
            CHECK(a.tightest_witness->inequality ==
                  b.tightest_witness->inequality);
            CHECK(a.tightest_witness->trial == b.tightest_witness->trial);
        }
    }
}

TEST_CASE("fuzzer approaches equality cases under equal weights") {
    FuzzConfig cfg;
    cfg.master_seed = 11;
    cfg.trials = 40;
    cfg.n_min = 3;
    cfg.n_max = 3;
    cfg.r_set = {1.0};
    cfg.regime = Regime::equal;
    auto rep = fuzz_tightness(cfg);
    CHECK(rep.best_tightness > 0.9);
    REQUIRE(rep.tightest_witness.has_value());
}

TEST_CASE("fuzzer validates its configuration") {
    FuzzConfig cfg;
    cfg.trials = 0;
    CHECK_THROWS_AS(fuzz_tightness(cfg), ConfigError);
    cfg.trials = 1;
    cfg.n_max = 100;
    CHECK_THROWS_AS(fuzz_tightness(cfg), ConfigError);
    cfg.n_max = 8;
    cfg.r_set = {0.5};
    CHECK_THROWS_AS(fuzz_tightness(cfg), ConfigError);
    cfg.r_set = {};
    CHECK_THROWS_AS(fuzz_tightness(cfg), ConfigError);
}

TEST_CASE("name parsers") {
    CHECK(parse_regime("equal") == Regime::equal);
    CHECK(parse_regime("steffensen") == Regime::steffensen);
    CHECK_THROWS_AS(parse_regime("x"), ConfigError);
    CHECK(parse_distribution("heavy_tail") == ValueDistribution::heavy_tail);
    CHECK(std::string(distribution_name(ValueDistribution::clustered)) ==
          "clustered");
    CHECK_THROWS_AS(parse_distribution("x"), ConfigError);
}
