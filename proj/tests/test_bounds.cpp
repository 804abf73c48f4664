#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/bounds.hpp"
#include "core/oracle.hpp"
#include "core/rng.hpp"
#include "fixtures.hpp"

using namespace devbound;

TEST_CASE("samuelson bound") {
    auto r = samuelson_bound(fixtures::equal_sample({0, 0, 3}));
    CHECK(r.bound == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(r.regime == Regime::equal);
    // two points at the mean's far side make the bound an equality
    CHECK(exact_max_deviation(fixtures::equal_sample({0, 0, 3})).first ==
          doctest::Approx(2.0));

    CHECK(samuelson_bound(fixtures::equal_sample({5, 5, 5, 5})).bound ==
          doctest::Approx(0.0));
    CHECK_THROWS_AS(
        samuelson_bound(WeightedSample({1.0, 2.0}, {0.3, 0.7})),
        RegimeError);
}

TEST_CASE("t_constant") {
    for (std::size_t n = 2; n <= 12; ++n) {
        const double a0 = 1.0 / static_cast<double>(n);
        CHECK(t_constant(a0, 2.0) ==
              doctest::Approx(std::sqrt(static_cast<double>(n - 1)))
                  .epsilon(1e-13));
    }
    CHECK_THROWS_AS(t_constant(0.0, 2.0), DomainError);
    CHECK_THROWS_AS(t_constant(1.0, 2.0), DomainError);
    CHECK_THROWS_AS(t_constant(0.5, 0.5), DomainError);
}

TEST_CASE("weighted power bound matches samuelson under equal weights") {
    Rng rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = rng.uniform_index(2, 10);
        std::vector<double> values(n);
        for (auto& v : values) v = rng.uniform(0.5, 20.0);
        auto s = fixtures::equal_sample(values);
        auto p2 = weighted_power_bound(s, 2.0);
        auto sam = samuelson_bound(s);
        CHECK(p2.bound == doctest::Approx(sam.bound).epsilon(1e-10));
        CHECK(exact_max_deviation(s).first <= p2.bound + 1e-9 * p2.bound + 1e-12);
    }
}

TEST_CASE("weighted power bound validates input") {
    CHECK_THROWS_AS(
        weighted_power_bound(fixtures::equal_sample({-1.0, 2.0, 3.0}), 2.0),
        DomainError);
    CHECK_THROWS_AS(
        weighted_power_bound(fixtures::equal_sample({1.0, 2.0, 3.0}), 1.5),
        DomainError);
    CHECK_THROWS_AS(weighted_power_bound(fixtures::signed_fixture(), 2.0),
                    RegimeError);
}

TEST_CASE("uniform convex gap bound for the square function") {
    auto square = make_power_function(2.0);
    square.domain_low = -std::numeric_limits<double>::infinity();
    Rng rng(32);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = rng.uniform_index(2, 8);
        std::vector<double> values(n);
        for (auto& v : values) v = rng.uniform(-5.0, 5.0);
        auto s = WeightedSample(values, fixtures::random_simplex(n, rng));
        auto pair = uniform_convex_gap_bound(s, square, 1.0, 2.0);
        // for f = x^2 with modulus d^2 the two forms coincide
        CHECK(pair.moment_form.bound ==
              doctest::Approx(pair.gap_form.bound).epsilon(1e-9));
        CHECK(pair.moment_form.bound <= pair.gap_form.bound + 1e-9);
        CHECK(exact_max_deviation(s).first <=
              pair.moment_form.bound * (1.0 + 1e-9) + 1e-12);
    }
}

TEST_CASE("modulus gap bound fixture") {
    auto square = make_power_function(2.0);
    auto r = modulus_gap_bound(fixtures::equal_sample({0, 0, 3}), square,
                               ModulusSpec::power(1.0, 2.0));
    CHECK(r.factor == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(r.gap == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(r.mid_bound == doctest::Approx(4.0).epsilon(1e-13));
    CHECK(r.bound == doctest::Approx(4.0).epsilon(1e-13));
    REQUIRE(r.inverted_bound.has_value());
    CHECK(*r.inverted_bound == doctest::Approx(2.0).epsilon(1e-9));
    CHECK_THROWS_AS(modulus_gap_bound(fixtures::signed_fixture(), square,
                                      ModulusSpec::power(1.0, 2.0)),
                    RegimeError);
}

TEST_CASE("window bound fixture") {
    auto s = fixtures::equal_sample({4, 2, 2, 0});
    auto r = window_bound(s, {1, 1}, 1.0);
    CHECK(r.bound == doctest::Approx(std::sqrt(6.0)).epsilon(1e-13));
    CHECK(r.window_mass == doctest::Approx(0.25));
    const double lhs = std::abs(window_mean(s, {1, 1}) - weighted_mean(s));
    CHECK(lhs <= r.bound);
}

TEST_CASE("full window degenerates to a zero bound") {
    auto s = fixtures::equal_sample({1, 2, 3});
    auto r = window_bound(s, {1, 3}, 2.0);
    CHECK(r.bound == 0.0);
    CHECK(std::isinf(r.denominator));
}

TEST_CASE("window bound rejects bad configurations") {
    auto s = fixtures::equal_sample({1, 2, 3});
    CHECK_THROWS_AS(window_bound(s, {1, 2}, 0.5), DomainError);
    CHECK_THROWS_AS(window_bound(fixtures::signed_fixture(), {1, 2}, 1.0),
                    RegimeError);
    CHECK_THROWS_AS(window_bound(fixtures::equal_sample({-1, 2, 3}), {1, 2},
                                 1.0, Chain::power_jensen_gap),
                    DomainError);
    CHECK_THROWS_AS(
        window_bound(s, {1, 2}, 1.0, Chain::function_gap, nullptr),
        ConfigError);
}

TEST_CASE("window bound soundness over random simplex samples") {
    Rng rng(33);
    const Tolerances tol;
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t n = rng.uniform_index(2, 10);
        std::vector<double> values(n);
        for (auto& v : values) v = rng.uniform(-10.0, 10.0);
        auto s = WeightedSample(values, fixtures::random_simplex(n, rng));
        const double mean = weighted_mean(s);
        for (double r : {1.0, 1.5, 2.0}) {
            const std::size_t first = rng.uniform_index(1, n);
            const std::size_t last = rng.uniform_index(first, n);
            auto rep = window_bound(s, {first, last}, r);
            const double lhs =
                std::abs(window_mean(s, {first, last}) - mean);
            CHECK(lhs <=
                  rep.bound + tol.eps_ineq_rel * rep.bound + tol.eps_ineq_abs);
        }
    }
}

TEST_CASE("prefix window bound has a closed form under equal weights") {
    Rng rng(34);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = rng.uniform_index(3, 10);
        std::vector<double> values(n);
        for (auto& v : values) v = rng.uniform(-8.0, 8.0);
        auto s = fixtures::equal_sample(values);
        for (double r : {1.0, 2.0, 3.0}) {
            const double g = central_power_moment(s, 2.0 * r);
            for (std::size_t j = 1; j < n; ++j) {
                const double nd = static_cast<double>(n);
                const double jd = static_cast<double>(j);
                const double rest = std::pow(nd - jd, 2.0 * r - 1.0);
                const double closed = std::pow(
                    nd * rest * g / (std::pow(jd, 2.0 * r) + jd * rest),
                    1.0 / (2.0 * r));
                auto rep = window_bound(s, {1, j}, r);
                CHECK(rep.bound == doctest::Approx(closed).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("prefix means profile") {
    auto s = fixtures::equal_sample({9, 7, 4, 4, 1});
    auto rows = prefix_means_profile(s, 1.0);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0].prefix_mean == doctest::Approx(9.0));
    CHECK(rows[4].prefix_mean == doctest::Approx(5.0));
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].prefix_mean <= rows[i - 1].prefix_mean + 1e-12);
        CHECK(rows[i].prefix_mean <= rows[i].bound + 1e-9);
    }
    CHECK_THROWS_AS(prefix_means_profile(fixtures::equal_sample({1, 2, 3}), 1.0),
                    OrderError);
}

TEST_CASE("signed-weight prefix bound fixture") {
    auto s = fixtures::signed_fixture();
    auto rep = js_prefix_bound(s, 3, 1.0);
    CHECK(rep.bound == doctest::Approx(std::sqrt(39.375)).epsilon(1e-13));
    CHECK(rep.numerator == doctest::Approx(39.375).epsilon(1e-13));
    CHECK(rep.denominator == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(js_prefix_deviation(s, 3) == doctest::Approx(5.5).epsilon(1e-13));
    CHECK(js_prefix_deviation(s, 3) <= rep.bound);

    CHECK_THROWS_AS(js_prefix_bound(s, 1, 1.0), RegimeError);
    CHECK_THROWS_AS(js_prefix_bound(s, 2, 1.0), RegimeError);
    CHECK_THROWS_AS(js_prefix_bound(s, 6, 1.0), InvalidInputError);
}

TEST_CASE("prefix bound and window bound coincide under equal weights") {
    // with t_i = 1/n both constructions reduce to the same prefix quantity
    Rng rng(35);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = rng.uniform_index(3, 9);
        std::vector<double> values(n);
        for (auto& v : values) v = rng.uniform(-5.0, 5.0);
        std::sort(values.begin(), values.end());
        auto s = fixtures::equal_sample(values);
        for (std::size_t k = 1; k < n; ++k) {
            auto a = js_prefix_bound(s, k, 1.0);
            auto b = window_bound(s, {1, k}, 1.0);
            CHECK(a.bound == doctest::Approx(b.bound).epsilon(1e-10));
        }
    }
}

TEST_CASE("chain ordering on nonnegative data") {
    Rng rng(36);
    auto square = make_power_function(2.0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = rng.uniform_index(2, 8);
        std::vector<double> values(n);
        for (auto& v : values) v = rng.uniform(0.0, 10.0);
        auto s = WeightedSample(values, fixtures::random_simplex(n, rng));
        const std::size_t first = rng.uniform_index(1, n);
        const std::size_t last = rng.uniform_index(first, n);
        const Window w{first, last};
        auto raw = window_bound(s, w, 1.0, Chain::raw_moment);
        auto pjg = window_bound(s, w, 1.0, Chain::power_jensen_gap);
        auto fng = window_bound(s, w, 1.0, Chain::function_gap, &square);
        CHECK(raw.numerator <= pjg.numerator * (1.0 + 1e-9) + 1e-12);
        CHECK(pjg.numerator <= fng.numerator * (1.0 + 1e-9) + 1e-12);
        CHECK(raw.bound <= pjg.bound * (1.0 + 1e-9) + 1e-12);
        CHECK(pjg.bound <= fng.bound * (1.0 + 1e-9) + 1e-12);
    }
}

TEST_CASE("chain names round-trip") {
    CHECK(parse_chain("raw_moment") == Chain::raw_moment);
    CHECK(parse_chain("power_jensen_gap") == Chain::power_jensen_gap);
    CHECK(parse_chain("function_gap") == Chain::function_gap);
    CHECK(std::string(chain_name(Chain::raw_moment)) == "raw_moment");
    CHECK_THROWS_AS(parse_chain("nope"), ConfigError);
}
