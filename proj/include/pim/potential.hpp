#pragma once

#include <limits>
#include <string>
#include <vector>

#include "pim/expr.hpp"

namespace pim {

// Open real interval; either end may be infinite.
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    bool contains_interior(double z) const { return z > lo && z < hi; }
    bool contains_closure(double z) const { return z >= lo && z <= hi; }
};

// R(z) packaged with analytic first and second derivatives (symbolic, not
// finite-difference), declared singular points, and a real domain. Immutable
// after construction; the constructor cross-checks dr against a finite
// difference of r, and d2r against a finite difference of dr, on 33 interior
// sample points.
class Potential {
public:
    Potential() = default;

    // Built-in families:
    //   airy         R = z                           on (-inf, inf)
    //   weber        R = a - z^2/4                   on (-inf, inf), params: a
    //   coulomb      R = 2E + 2Z/z - l(l+1)/z^2      on (0, inf),    params: E, Z, l
    //   radial-free  R = k^2 - l(l+1)/z^2            on (0, inf),    params: k, l
    static Potential builtin(const std::string& name, const ParamSet& params = {});

    static Potential from_expression(const ExprPtr& e, const ParamSet& params,
                                     Interval domain, std::string label = "");

    // parse + from_expression
    static Potential from_source(const std::string& source, const ParamSet& params,
                                 Interval domain, std::string label = "");

    double r(double z) const { return evaluate(expr_, z, params_); }
    double dr(double z) const { return evaluate(dexpr_, z, params_); }
    double d2r(double z) const { return evaluate(d2expr_, z, params_); }

    const std::vector<double>& singularities() const { return singularities_; }
    const Interval& domain() const { return domain_; }
    const std::string& label() const { return label_; }
    const ParamSet& params() const { return params_; }
    const ExprPtr& expression() const { return expr_; }

    // Same potential with one parameter value replaced (used by the
    // quantization energy scan). Errors if the parameter is not bound.
    Potential rebind(const std::string& name, double value) const;

private:
    ExprPtr expr_, dexpr_, d2expr_;
    ParamSet params_;
    Interval domain_;
    std::vector<double> singularities_;
    std::string label_;

    void finish_construction(); // derivative consistency check
};

} // namespace pim
