#include "function_classes.hpp"

#include <algorithm>
#include <cmath>

namespace devbound {

namespace {

double grid_span(double low, double high, double cap) {
    if (!std::isfinite(high)) return cap;
    return std::min(high - low, cap);
}

double fd_derivative_at_zero(const FunctionSpec& f) {
    const double h = 1e-6;
    return (f(h) - f(0.0)) / h;
}

}  // namespace

const char* property_flag_name(PropertyFlag f) {
    switch (f) {
        case PropertyFlag::checked_true: return "checked_true";
        case PropertyFlag::checked_false: return "checked_false";
        case PropertyFlag::unchecked: return "unchecked";
    }
    return "?";
}

const char* class_verdict_name(ClassVerdict v) {
    return v == ClassVerdict::violated ? "violated" : "no_violation_found";
}

double ModulusSpec::eval(double x) const {
    if (power_form) return scale * std::pow(x, exponent);
    return generic.evaluate(x);
}

ModulusSpec ModulusSpec::power(double m, double p) {
    if (!(m > 0.0)) throw DomainError("modulus scale must be positive");
    if (!(p >= 1.0)) throw DomainError("modulus exponent must be >= 1");
    ModulusSpec phi;
    phi.power_form = true;
    phi.scale = m;
    phi.exponent = p;
    phi.increasing = PropertyFlag::checked_true;
    phi.zero_at_zero = PropertyFlag::checked_true;
    phi.convex = PropertyFlag::checked_true;
    // m*(AB)^p <= m^2*(AB)^p iff m >= 1
    phi.submultiplicative =
        m >= 1.0 ? PropertyFlag::checked_true : PropertyFlag::checked_false;
    return phi;
}

ModulusSpec ModulusSpec::from_function(FunctionSpec f) {
    ModulusSpec phi;
    phi.power_form = false;
    phi.generic = std::move(f);
    return phi;
}

SuperquadraticCertificate check_superquadratic(const FunctionSpec& f,
                                               std::size_t grid_size,
                                               double span_cap,
                                               double tolerance) {
    if (f.domain_low != 0.0)
        throw DomainError("superquadraticity is defined on [0, b); got low = " +
                          std::to_string(f.domain_low));
    if (grid_size < 16) throw DomainError("grid_size must be >= 16");

    const double span = grid_span(0.0, f.domain_high, span_cap);
    const double step = span / static_cast<double>(grid_size);
    SuperquadraticCertificate cert;
    cert.grid.reserve(grid_size + 1);
    for (std::size_t i = 0; i <= grid_size; ++i)
        cert.grid.push_back(step * static_cast<double>(i));

    const double inf = std::numeric_limits<double>::infinity();
    for (double x : cert.grid) {
        // difference quotient q(x, y) brackets the admissible C_x
        double c_lo = -inf, c_hi = inf;
        double worst_y_lo = 0.0, worst_y_hi = 0.0;
        for (double y : cert.grid) {
            if (y == x) continue;
            const double q =
                (f(y) - f(x) - f(std::abs(y - x))) / (y - x);
            if (y > x) {
                if (q < c_hi) { c_hi = q; worst_y_hi = y; }
            } else {
                if (q > c_lo) { c_lo = q; worst_y_lo = y; }
            }
        }
        cert.c_intervals.emplace_back(c_lo, c_hi);
        if (cert.verdict == ClassVerdict::no_violation_found &&
            c_lo > c_hi + tolerance) {
            cert.verdict = ClassVerdict::violated;
            ClassWitness w;
            w.x = x;
            w.y = worst_y_lo;  // the pair (y_lo, y_hi) pins the empty interval
            w.t = worst_y_hi;
            w.lhs = c_lo;
            w.rhs = c_hi;
            w.slack = c_hi - c_lo;
            cert.witness = w;
        }
    }
    return cert;
}

ConvexityCertificate check_uniform_convexity(const FunctionSpec& f,
                                             const ModulusSpec& phi,
                                             std::size_t grid_size,
                                             double span_cap,
                                             double tolerance) {
    const double lo =
        std::isfinite(f.domain_low) ? f.domain_low : -span_cap;
    const double hi =
        std::isfinite(f.domain_high) ? f.domain_high : span_cap;
    const double span = std::min(hi - lo, 2.0 * span_cap);
    const double step = span / static_cast<double>(grid_size);
    const std::size_t t_steps = std::max<std::size_t>(grid_size / 4, 3);

    ConvexityCertificate cert;
    cert.min_slack = std::numeric_limits<double>::infinity();
    cert.max_slack = -std::numeric_limits<double>::infinity();
    for (std::size_t ix = 0; ix <= grid_size; ++ix) {
        const double x = lo + step * static_cast<double>(ix);
        for (std::size_t iy = 0; iy <= grid_size; ++iy) {
            const double y = lo + step * static_cast<double>(iy);
            for (std::size_t it = 1; it < t_steps; ++it) {
                const double t =
                    static_cast<double>(it) / static_cast<double>(t_steps);
                const double lhs = t * f(x) + (1.0 - t) * f(y);
                const double rhs = f(t * x + (1.0 - t) * y) +
                                   t * (1.0 - t) * phi.eval(std::abs(x - y));
                const double slack = lhs - rhs;
                cert.min_slack = std::min(cert.min_slack, slack);
                cert.max_slack = std::max(cert.max_slack, slack);
                if (slack < -tolerance &&
                    cert.verdict == ClassVerdict::no_violation_found) {
                    cert.verdict = ClassVerdict::violated;
                    ClassWitness w;
                    w.x = x;
                    w.y = y;
                    w.t = t;
                    w.lhs = rhs;  // required value
                    w.rhs = lhs;  // achieved value
                    w.slack = slack;
                    cert.witness = w;
                }
            }
        }
    }
    return cert;
}

ModulusFlags check_modulus_properties(const ModulusSpec& phi,
                                      std::size_t grid_size, double span_cap,
                                      double tolerance) {
    ModulusFlags flags;
    const double span = phi.power_form
                            ? span_cap
                            : grid_span(0.0, phi.generic.domain_high, span_cap);
    const double step = span / static_cast<double>(grid_size);

    flags.zero_at_zero = std::abs(phi.eval(0.0)) <= tolerance
                             ? PropertyFlag::checked_true
                             : PropertyFlag::checked_false;

    flags.increasing = PropertyFlag::checked_true;
    flags.convex = PropertyFlag::checked_true;
    double prev = phi.eval(0.0);
    for (std::size_t i = 1; i <= grid_size; ++i) {
        const double x = step * static_cast<double>(i);
        const double v = phi.eval(x);
        if (v < prev - tolerance) flags.increasing = PropertyFlag::checked_false;
        prev = v;
        if (i + 1 <= grid_size) {
            const double mid = phi.eval(x + 0.5 * step);
            const double chord = 0.5 * (v + phi.eval(x + step));
            if (mid > chord + tolerance)
                flags.convex = PropertyFlag::checked_false;
        }
    }

    flags.submultiplicative = PropertyFlag::checked_true;
    for (std::size_t ia = 1; ia <= grid_size; ++ia) {
        const double a = step * static_cast<double>(ia);
        for (std::size_t ib = 1; ib <= grid_size; ++ib) {
            const double b = step * static_cast<double>(ib);
            if (a * b > span) continue;
            if (phi.eval(a * b) > phi.eval(a) * phi.eval(b) + tolerance)
                flags.submultiplicative = PropertyFlag::checked_false;
        }
    }
    return flags;
}

FunctionSpec make_power_function(double exponent, double scale) {
    if (!(exponent >= 1.0)) throw DomainError("power exponent must be >= 1");
    if (!(scale > 0.0)) throw DomainError("power scale must be positive");
    FunctionSpec f;
    {
        char buf[64];
        if (scale == 1.0)
            std::snprintf(buf, sizeof buf, "power:%g", exponent);
        else
            std::snprintf(buf, sizeof buf, "scaled_power:%g:%g", scale,
                          exponent);
        f.label = buf;
    }
    f.domain_low = 0.0;
    f.evaluate = [scale, exponent](double x) {
        return scale * std::pow(x, exponent);
    };
    f.derivative = [scale, exponent](double x) {
        return scale * exponent * std::pow(x, exponent - 1.0);
    };
    f.power_form = FunctionSpec::PowerForm{scale, exponent};
    return f;
}

StronglyConvexSpec make_example1(const FunctionSpec& phi_convex) {
    const double d0 = phi_convex.has_derivative()
                          ? phi_convex.derivative(0.0)
                          : fd_derivative_at_zero(phi_convex);
    if (!(d0 > 0.0))
        throw DomainError("x*phi(x) construction needs phi'(0) > 0, got " +
                          std::to_string(d0));
    StronglyConvexSpec out;
    out.f.label = "x*" + phi_convex.label;
    out.f.domain_low = 0.0;
    out.f.domain_high = phi_convex.domain_high;
    auto phi_eval = phi_convex.evaluate;
    out.f.evaluate = [phi_eval](double x) { return x * phi_eval(x); };
    if (phi_convex.has_derivative()) {
        auto phi_d = phi_convex.derivative;
        out.f.derivative = [phi_eval, phi_d](double x) {
            return phi_eval(x) + x * phi_d(x);
        };
    }
    out.modulus_scale = d0;
    out.modulus_exponent = 2.0;
    return out;
}

RegistryEntry lookup_function(const std::string& name) {
    auto parse_tail = [&](std::size_t pos) {
        std::size_t used = 0;
        double v = std::stod(name.substr(pos), &used);
        if (pos + used != name.size() && name[pos + used] != ':')
            throw ConfigError("bad numeric parameter in '" + name + "'");
        return v;
    };
    try {
        if (name.rfind("power:", 0) == 0) {
            const double p = parse_tail(6);
            RegistryEntry e;
            e.f = make_power_function(p);
            // m x^2 is strongly convex with modulus m x^2
            if (p == 2.0) e.strong_convexity_scale = 1.0;
            return e;
        }
        if (name.rfind("scaled_power:", 0) == 0) {
            const std::size_t colon = name.find(':', 13);
            if (colon == std::string::npos)
                throw ConfigError("scaled_power needs <m>:<p>");
            const double m = std::stod(name.substr(13, colon - 13));
            const double p = std::stod(name.substr(colon + 1));
            RegistryEntry e;
            e.f = make_power_function(p, m);
            if (p == 2.0) e.strong_convexity_scale = m;
            return e;
        }
        if (name == "example1_exp") {
            FunctionSpec phi;
            phi.label = "exp";
            phi.domain_low = 0.0;
            phi.evaluate = [](double x) { return std::exp(x); };
            phi.derivative = [](double x) { return std::exp(x); };
            auto sc = make_example1(phi);
            RegistryEntry e;
            e.f = std::move(sc.f);
            e.strong_convexity_scale = sc.modulus_scale;
            return e;
        }
        if (name.rfind("example1_affine:", 0) == 0) {
            const double c = std::stod(name.substr(16));
            FunctionSpec phi;
            phi.label = "affine:" + std::to_string(c);
            phi.domain_low = 0.0;
            phi.evaluate = [c](double x) { return 1.0 + c * x; };
            phi.derivative = [c](double) { return c; };
            auto sc = make_example1(phi);
            RegistryEntry e;
            e.f = std::move(sc.f);
            e.strong_convexity_scale = sc.modulus_scale;
            return e;
        }
    } catch (const std::invalid_argument&) {
        throw ConfigError("bad numeric parameter in '" + name + "'");
    } catch (const DomainError& e) {
        throw ConfigError("bad parameter in '" + name + "': " + e.what());
    }
    throw ConfigError("unknown function '" + name + "'");
}

ModulusSpec lookup_modulus(const std::string& name) {
    try {
        if (name.rfind("power:", 0) == 0)
            return ModulusSpec::power(1.0, std::stod(name.substr(6)));
        if (name.rfind("scaled_power:", 0) == 0) {
            const std::size_t colon = name.find(':', 13);
            if (colon == std::string::npos)
                throw ConfigError("scaled_power needs <m>:<p>");
            return ModulusSpec::power(std::stod(name.substr(13, colon - 13)),
                                      std::stod(name.substr(colon + 1)));
        }
    } catch (const std::invalid_argument&) {
        throw ConfigError("bad numeric parameter in '" + name + "'");
    } catch (const DomainError& e) {
        throw ConfigError("bad parameter in '" + name + "': " + e.what());
    }
    throw ConfigError("unknown modulus '" + name + "'");
}

}  // namespace devbound
