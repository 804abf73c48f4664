#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace devbound {

// Evaluator descriptor for f or phi on the interval [domain_low,
// domain_high); domain_high may be +infinity.
struct FunctionSpec {
    struct PowerForm {
        double scale = 1.0;
        double exponent = 2.0;
    };

    std::string label;
    double domain_low = 0.0;
    double domain_high = std::numeric_limits<double>::infinity();
    std::function<double(double)> evaluate;
    std::function<double(double)> derivative;  // optional (empty when absent)
    // Set when f is scale * x^exponent, enabling closed-form gap paths.
    std::optional<PowerForm> power_form;

    double operator()(double x) const { return evaluate(x); }
    bool has_derivative() const { return static_cast<bool>(derivative); }
};

enum class PropertyFlag { checked_true, checked_false, unchecked };

const char* property_flag_name(PropertyFlag f);

// Modulus descriptor: either the power form m*x^p or a generic function.
struct ModulusSpec {
    bool power_form = true;
    double scale = 1.0;     // m
    double exponent = 2.0;  // p
    FunctionSpec generic;   // used when !power_form

    PropertyFlag increasing = PropertyFlag::unchecked;
    PropertyFlag zero_at_zero = PropertyFlag::unchecked;
    PropertyFlag convex = PropertyFlag::unchecked;
    PropertyFlag submultiplicative = PropertyFlag::unchecked;

    double eval(double x) const;

    // Power-form flags are computed from (m, p), not assumed; in
    // particular submultiplicativity of m*x^p needs m >= 1.
    static ModulusSpec power(double m, double p);
    static ModulusSpec from_function(FunctionSpec f);
};

struct ClassWitness {
    double x = 0.0, y = 0.0, t = 0.0;
    double lhs = 0.0, rhs = 0.0;
    double slack = 0.0;  // rhs - lhs, negative for a violation
};

enum class ClassVerdict { no_violation_found, violated };

const char* class_verdict_name(ClassVerdict v);

// Per grid point x, the interval [C_lo(x), C_hi(x)] of slope constants
// compatible with the superquadraticity inequality; the verdict is
// "violated" when some interval is empty.
struct SuperquadraticCertificate {
    std::vector<double> grid;
    std::vector<std::pair<double, double>> c_intervals;
    ClassVerdict verdict = ClassVerdict::no_violation_found;
    std::optional<ClassWitness> witness;
};

struct ConvexityCertificate {
    ClassVerdict verdict = ClassVerdict::no_violation_found;
    std::optional<ClassWitness> witness;
    double min_slack = 0.0;
    double max_slack = 0.0;
};

struct ModulusFlags {
    PropertyFlag increasing = PropertyFlag::unchecked;
    PropertyFlag zero_at_zero = PropertyFlag::unchecked;
    PropertyFlag convex = PropertyFlag::unchecked;
    PropertyFlag submultiplicative = PropertyFlag::unchecked;
};

// All checkers below are grid-based semi-decisions: they can certify a
// violation with a witness but "no_violation_found" is not a proof.

// Requires f's domain to start at 0.  Unbounded domains are truncated
// at span_cap for the grid.
SuperquadraticCertificate check_superquadratic(const FunctionSpec& f,
                                               std::size_t grid_size = 64,
                                               double span_cap = 10.0,
                                               double tolerance = 1e-8);

ConvexityCertificate check_uniform_convexity(const FunctionSpec& f,
                                             const ModulusSpec& phi,
                                             std::size_t grid_size = 64,
                                             double span_cap = 10.0,
                                             double tolerance = 1e-8);

ModulusFlags check_modulus_properties(const ModulusSpec& phi,
                                      std::size_t grid_size = 64,
                                      double span_cap = 10.0,
                                      double tolerance = 1e-8);

// scale * x^exponent on [0, +inf) with exact derivative.
FunctionSpec make_power_function(double exponent, double scale = 1.0);

// A function spec together with its declared strong-convexity modulus
// m * x^2.
struct StronglyConvexSpec {
    FunctionSpec f;
    double modulus_scale = 0.0;  // m
    double modulus_exponent = 2.0;
};

// g(x) = x * phi(x) for convex phi with phi'(0) > 0; the declared
// modulus scale is phi'(0) (finite difference when no derivative given).
StronglyConvexSpec make_example1(const FunctionSpec& phi_convex);

// Built-in registry: power:<p>, scaled_power:<m>:<p>, example1_exp,
// example1_affine:<c>.  Throws ConfigError on unknown names.
struct RegistryEntry {
    FunctionSpec f;
    std::optional<double> strong_convexity_scale;  // m when known
};

RegistryEntry lookup_function(const std::string& name);

// Modulus registry: power:<p> and scaled_power:<m>:<p>.
ModulusSpec lookup_modulus(const std::string& name);

}  // namespace devbound
