#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pim/potential.hpp"

namespace pim {

// Evaluations with Q^2 at or below this value are refused: the platform
// function diverges like Q^-2 at a turning point and quadrature must never
// sample it.
inline constexpr double kTurningPointGuard = 1e-12;

// Platform parameter s selecting the base function Q^2 = R + s(s-2)/(4 z^2).
struct BaseSpec {
    enum class Preset { custom, unmodified, kramers_langer, no_centrifugal };

    double s = 0.0;
    Preset preset = Preset::custom;

    BaseSpec() = default;
    explicit BaseSpec(double s_value) : s(s_value) {}

    // s = 0: Q^2 = R
    static BaseSpec unmodified() { return {0.0, Preset::unmodified}; }
    // s = 1: Q^2 = R - 1/(4 z^2)  (Kramers-Langer replacement l(l+1) -> (l+1/2)^2)
    static BaseSpec kramers_langer() { return {1.0, Preset::kramers_langer}; }
    // s = -2l: Q^2 = R + l(l+1)/z^2 (centrifugal barrier dropped from the base);
    // l is taken from the potential's parameters in make_base.
    static BaseSpec no_centrifugal() { return {0.0, Preset::no_centrifugal}; }

private:
    BaseSpec(double s_value, Preset p) : s(s_value), preset(p) {}
};

// Base function Q with analytic derivatives, composed from a Potential and a
// BaseSpec. Only the principal positive branch is provided: q() is defined
// where Q^2 > guard and errors elsewhere. An override Q^2 (given as another
// Potential) is supported for the non-canonical case; `mismatch` is then
// Q^2 - R - s(s-2)/(4z^2), which vanishes identically for the canonical
// choice.
class BaseFunction {
public:
    double q2(double z) const;
    double dq2(double z) const;   // d(Q^2)/dz
    double d2q2(double z) const;

    double q(double z) const;     // +sqrt(Q^2), guarded
    double dq(double z) const;    // Q'  = (Q^2)'/(2Q)
    double d2q(double z) const;   // Q'' = ((Q^2)'' - 2 Q'^2)/(2Q)

    double mismatch(double z) const;
    bool canonical() const { return canonical_; }
    double s() const { return spec_.s; }
    const BaseSpec& spec() const { return spec_; }
    const Potential& potential() const { return potential_; }

    // s(s-2)/(4 z^2); identically zero when s(s-2) == 0 (so z = 0 is fine).
    double s_term(double z) const;

    friend BaseFunction make_base(const Potential&, const BaseSpec&);
    friend BaseFunction make_base(const Potential&, const BaseSpec&, const Potential&);

private:
    Potential potential_;
    BaseSpec spec_;
    double c_ = 0.0; // s(s-2)/4
    bool canonical_ = true;
    std::optional<Potential> q2_override_;

    void guard_check(double z, double v) const;
};

BaseFunction make_base(const Potential& p, const BaseSpec& spec);
BaseFunction make_base(const Potential& p, const BaseSpec& spec,
                       const Potential& q2_override);

// Real zeros of Q^2 on [lo, hi]: scan n_scan uniform points for sign changes,
// refine each bracket by bisection to |dz| < 1e-12 max(1,|z|). Returns sorted
// roots; empty if no sign change is found.
std::vector<double> turning_points(const BaseFunction& b, double lo, double hi,
                                   int n_scan = 1024);

} // namespace pim
