#include <doctest.h>

#include <cmath>

#include "core/function_classes.hpp"

using namespace devbound;

TEST_CASE("superquadratic checker accepts even power functions") {
    for (double p : {2.0, 3.0, 4.0}) {
        auto cert = check_superquadratic(make_power_function(p));
        CHECK(cert.verdict == ClassVerdict::no_violation_found);
        CHECK_FALSE(cert.witness.has_value());
        REQUIRE(cert.grid.size() == cert.c_intervals.size());
        for (const auto& [lo, hi] : cert.c_intervals) CHECK(lo <= hi + 1e-8);
    }
}

TEST_CASE("superquadratic checker rejects low-power functions") {
    for (double p : {1.0, 1.5}) {
        auto cert = check_superquadratic(make_power_function(p));
        CHECK(cert.verdict == ClassVerdict::violated);
        REQUIRE(cert.witness.has_value());
        const auto& w = *cert.witness;
        CHECK(std::isfinite(w.x));
        CHECK(std::isfinite(w.y));
        CHECK(w.slack < 0.0);
        // the recorded quotients reproduce the empty interval
        const FunctionSpec f = make_power_function(p);
        const double q_lo =
            (f(w.y) - f(w.x) - f(std::abs(w.y - w.x))) / (w.y - w.x);
        const double q_hi =
            (f(w.t) - f(w.x) - f(std::abs(w.t - w.x))) / (w.t - w.x);
        CHECK(q_lo == doctest::Approx(w.lhs).epsilon(1e-9));
        CHECK(q_hi == doctest::Approx(w.rhs).epsilon(1e-9));
        CHECK(q_lo > q_hi);
    }
}

TEST_CASE("superquadratic checker validates its inputs") {
    FunctionSpec shifted = make_power_function(2.0);
    shifted.domain_low = 1.0;
    CHECK_THROWS_AS(check_superquadratic(shifted), DomainError);
    CHECK_THROWS_AS(check_superquadratic(make_power_function(2.0), 4),
                    DomainError);
}

TEST_CASE("uniform convexity checker") {
    auto square = make_power_function(2.0);

    auto exact = check_uniform_convexity(square, ModulusSpec::power(1.0, 2.0));
    CHECK(exact.verdict == ClassVerdict::no_violation_found);
    // x^2 against d^2 holds with equality on the whole grid
    CHECK(std::abs(exact.min_slack) <= 1e-10);

    auto tight = check_uniform_convexity(square, ModulusSpec::power(2.0, 2.0));
    CHECK(tight.verdict == ClassVerdict::violated);
    REQUIRE(tight.witness.has_value());
    CHECK(tight.witness->slack < 0.0);

    auto slackful =
        check_uniform_convexity(square, ModulusSpec::power(0.5, 2.0));
    CHECK(slackful.verdict == ClassVerdict::no_violation_found);
    CHECK(slackful.min_slack >= 0.0);
}

TEST_CASE("modulus property flags") {
    auto good = ModulusSpec::power(1.0, 2.0);
    CHECK(good.increasing == PropertyFlag::checked_true);
    CHECK(good.zero_at_zero == PropertyFlag::checked_true);
    CHECK(good.convex == PropertyFlag::checked_true);
    CHECK(good.submultiplicative == PropertyFlag::checked_true);

    // m < 1 breaks phi(xy) <= phi(x)phi(y)
    auto small = ModulusSpec::power(0.5, 2.0);
    CHECK(small.submultiplicative == PropertyFlag::checked_false);

    auto generic = ModulusSpec::from_function(make_power_function(2.0));
    auto flags = check_modulus_properties(generic);
    CHECK(flags.increasing == PropertyFlag::checked_true);
    CHECK(flags.zero_at_zero == PropertyFlag::checked_true);
    CHECK(flags.convex == PropertyFlag::checked_true);
    CHECK(flags.submultiplicative == PropertyFlag::checked_true);
}

TEST_CASE("product-form strongly convex builder") {
    FunctionSpec expf{"exp", 0.0, std::numeric_limits<double>::infinity(),
                      [](double x) { return std::exp(x); },
                      [](double x) { return std::exp(x); }};
    auto spec = make_example1(expf);
    CHECK(spec.modulus_scale == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(spec.modulus_exponent == 2.0);
    CHECK(spec.f(1.0) == doctest::Approx(std::exp(1.0)));
    CHECK(spec.f(2.0) == doctest::Approx(2.0 * std::exp(2.0)));

    FunctionSpec flat{"const", 0.0, std::numeric_limits<double>::infinity(),
                      [](double) { return 1.0; },
                      [](double) { return 0.0; }};
    CHECK_THROWS_AS(make_example1(flat), DomainError);
}

TEST_CASE("function registry") {
    auto cube = lookup_function("power:3");
    CHECK(cube.f(2.0) == doctest::Approx(8.0));

    auto scaled = lookup_function("scaled_power:2.5:2");
    CHECK(scaled.f(2.0) == doctest::Approx(10.0));
    REQUIRE(scaled.strong_convexity_scale.has_value());
    CHECK(*scaled.strong_convexity_scale == doctest::Approx(2.5));

    auto ex_exp = lookup_function("example1_exp");
    CHECK(ex_exp.f(1.0) == doctest::Approx(std::exp(1.0)));
    REQUIRE(ex_exp.strong_convexity_scale.has_value());

    // phi(x) = 1 + c x gives g(x) = x + c x^2 with modulus scale c
    auto affine = lookup_function("example1_affine:0.75");
    CHECK(affine.f(2.0) == doctest::Approx(2.0 + 0.75 * 4.0));
    REQUIRE(affine.strong_convexity_scale.has_value());
    CHECK(*affine.strong_convexity_scale == doctest::Approx(0.75));

    CHECK_THROWS_AS(lookup_function("nope"), ConfigError);
    CHECK_THROWS_AS(lookup_function("power:abc"), ConfigError);
    CHECK_THROWS_AS(lookup_function("power:0.5"), ConfigError);
}

TEST_CASE("modulus registry") {
    auto m = lookup_modulus("scaled_power:3:2");
    CHECK(m.power_form);
    CHECK(m.scale == doctest::Approx(3.0));
    CHECK(m.exponent == doctest::Approx(2.0));
    CHECK(m.eval(2.0) == doctest::Approx(12.0));
    CHECK_THROWS_AS(lookup_modulus("mystery"), ConfigError);
}
