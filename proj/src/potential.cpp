#include "pim/potential.hpp"

#include <algorithm>
#include <cmath>

#include "pim/oracle.hpp"

namespace pim {

namespace {

void require_params(const std::string& family, const ParamSet& params,
                    std::initializer_list<const char*> names) {
    for (const char* n : names)
        if (params.find(n) == params.end())
            throw DomainError("potential family '" + family + "' requires parameter '" +
                              std::string(n) + "'");
}

// Window of z values used for the construction-time derivative consistency
// check: interior of the domain, clipped to a desk-scale range and nudged
// away from the edges.
std::pair<double, double> sample_window(const Interval& d) {
    double lo = d.lo, hi = d.hi;
    if (!std::isfinite(lo) && !std::isfinite(hi)) return {-8.0, 8.0};
    if (!std::isfinite(hi)) return {lo + 0.25, lo + 8.25};
    if (!std::isfinite(lo)) return {hi - 8.25, hi - 0.25};
    double margin = 0.05 * (hi - lo);
    return {lo + margin, hi - margin};
}

} // namespace

Potential Potential::builtin(const std::string& name, const ParamSet& params) {
    if (name == "airy") {
        return from_source("z", {}, Interval{}, "airy");
    } else if (name == "weber") {
        require_params(name, params, {"a"});
        return from_source("a - z^2/4", params, Interval{}, "weber");
    } else if (name == "coulomb") {
        require_params(name, params, {"E", "Z", "l"});
        return from_source("2*E + 2*Z/z - l*(l+1)/z^2", params, Interval{0.0, INFINITY},
                           "coulomb");
    } else if (name == "radial-free") {
        require_params(name, params, {"k", "l"});
        return from_source("k^2 - l*(l+1)/z^2", params, Interval{0.0, INFINITY},
                           "radial-free");
    }
    throw DomainError("unknown potential family '" + name + "'");
}

Potential Potential::from_source(const std::string& source, const ParamSet& params,
                                 Interval domain, std::string label) {
    return from_expression(parse(source), params, domain,
                           label.empty() ? source : std::move(label));
}

Potential Potential::from_expression(const ExprPtr& e, const ParamSet& params,
                                     Interval domain, std::string label) {
    for (const auto& [name, value] : params)
        if (!std::isfinite(value))
            throw DomainError("parameter '" + name + "' is not finite");
    for (const auto& name : parameters_of(e))
        if (params.find(name) == params.end())
            throw EvalError("unbound parameter '" + name + "'");

    Potential p;
    p.expr_ = e;
    p.dexpr_ = differentiate(e);
    p.d2expr_ = differentiate(p.dexpr_);
    p.params_ = params;
    p.domain_ = domain;
    p.label_ = label.empty() ? to_string(e) : std::move(label);
    if (divides_by_z(e) && domain.contains_closure(0.0)) {
        if (domain.contains_interior(0.0))
            throw DomainError("potential '" + p.label_ +
                              "' is singular at z=0, strictly inside its domain");
        p.singularities_.push_back(0.0);
    }
    p.finish_construction();
    return p;
}

void Potential::finish_construction() {
    auto [lo, hi] = sample_window(domain_);
    const int n = 33;
    auto re = [this](double z) { return r(z); };
    auto dre = [this](double z) { return dr(z); };
    for (int i = 0; i < n; ++i) {
        double z = lo + (hi - lo) * (i + 0.5) / n;
        if (!domain_.contains_interior(z)) continue;
        bool near_singular = false;
        for (double zs : singularities_)
            if (std::abs(z - zs) < 1e-3) near_singular = true;
        if (near_singular) continue;

        double d_fd = fd_derivative(re, z, 1);
        double d_an = dr(z);
        double scale = std::max({1.0, std::abs(d_fd), std::abs(d_an)});
        if (std::abs(d_fd - d_an) > 1e-8 * scale)
            throw DomainError("potential '" + label_ +
                              "': dr is inconsistent with a finite difference of r near z=" +
                              std::to_string(z));
        double d2_fd = fd_derivative(dre, z, 1);
        double d2_an = d2r(z);
        scale = std::max({1.0, std::abs(d2_fd), std::abs(d2_an)});
        if (std::abs(d2_fd - d2_an) > 1e-8 * scale)
            throw DomainError("potential '" + label_ +
                              "': d2r is inconsistent with a finite difference of dr near z=" +
                              std::to_string(z));
    }
}

Potential Potential::rebind(const std::string& name, double value) const {
    if (params_.find(name) == params_.end())
        throw DomainError("rebind: potential '" + label_ + "' has no parameter '" + name +
                          "'");
    if (!std::isfinite(value))
        throw DomainError("rebind: value for '" + name + "' is not finite");
    Potential p = *this;
    p.params_[name] = value;
    return p;
}

} // namespace pim
