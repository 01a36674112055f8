#include "pim/approx.hpp"

#include <cmath>

namespace pim {

PhaseApprox::PhaseApprox(BaseFunction base, ExpansionOrder order, double anchor,
                         int branch, double abs_tol, double rel_tol)
    : base_(std::move(base)),
      order_(order),
      anchor_(anchor),
      branch_(branch >= 0 ? +1 : -1),
      abs_tol_(abs_tol),
      rel_tol_(rel_tol) {
    if (!base_.potential().domain().contains_interior(anchor))
        throw DomainError("anchor z = " + std::to_string(anchor) +
                          " lies outside the potential domain");
    double v = base_.q2(anchor);
    if (!(v > kTurningPointGuard))
        throw GuardError("anchor must be a regular point: Q^2(anchor) = " +
                             std::to_string(v) + " <= guard",
                         anchor);
}

void PhaseApprox::ensure_allowed(double z) const {
    double lo = std::min(anchor_, z), hi = std::max(anchor_, z);
    const int n = 128;
    for (int i = 0; i <= n; ++i) {
        double x = lo + (hi - lo) * i / n;
        double v = base_.q2(x);
        if (!(v > kTurningPointGuard))
            throw GuardError("evaluation interval crosses a forbidden region: Q^2 = " +
                                 std::to_string(v) + " at z = " + std::to_string(x),
                             x);
    }
}

double PhaseApprox::phase(double z) const {
    if (z == anchor_) return 0.0;
    ensure_allowed(z);
    if (order_ == ExpansionOrder::first)
        return integrate([this](double x) { return base_.q(x); }, anchor_, z, abs_tol_,
                         rel_tol_)
            .value;

    double boundary =
        0.5 * (platform_value(base_, z) - platform_value(base_, anchor_));
    auto integrand = [this](double x) {
        double p = platform_value(base_, x);
        double v = (1.0 - 0.5 * p * p) * base_.q(x);
        if (!base_.canonical()) v -= base_.mismatch(x) / (2.0 * base_.q(x));
        return v;
    };
    return boundary + integrate(integrand, anchor_, z, abs_tol_, rel_tol_).value;
}

double PhaseApprox::effective_q(double z) const {
    if (order_ == ExpansionOrder::first) return base_.q(z);
    double Q = base_.q(z);
    double p = platform_value(base_, z);
    double q3 = 0.5 * platform_derivative(base_, z) + (1.0 - 0.5 * p * p) * Q;
    if (!base_.canonical()) q3 -= base_.mismatch(z) / (2.0 * Q);
    if (!(q3 > 0.0))
        throw BreakdownError("third-order approximation broke down: effective q3 = " +
                                 std::to_string(q3) + " <= 0 at z = " + std::to_string(z),
                             z);
    return q3;
}

double PhaseApprox::amplitude(double z) const {
    return 1.0 / std::sqrt(effective_q(z));
}

std::pair<std::complex<double>, std::complex<double>> PhaseApprox::wavefunction(
    double z) const {
    double A = amplitude(z);
    double w = phase(z);
    std::complex<double> up = std::polar(A, w);
    std::complex<double> dn = std::polar(A, -w);
    return {up, dn};
}

std::complex<double> PhaseApprox::psi(double z) const {
    auto [up, dn] = wavefunction(z);
    return branch_ > 0 ? up : dn;
}

double PhaseApprox::wronskian_residual(double z) const {
    const double h = 1e-6 * std::max(1.0, std::abs(z));
    auto deriv = [this, h, z](bool plus) {
        auto value = [this, plus](double x) {
            auto [up, dn] = wavefunction(x);
            return plus ? up : dn;
        };
        auto central = [&value, z](double step) {
            return (value(z + step) - value(z - step)) / (2.0 * step);
        };
        std::complex<double> d1 = central(h);
        std::complex<double> d2 = central(0.5 * h);
        return (4.0 * d2 - d1) / 3.0;
    };
    auto [up, dn] = wavefunction(z);
    std::complex<double> w = up * deriv(false) - dn * deriv(true);
    return std::abs(w + std::complex<double>(0.0, 2.0));
}

double PhaseApprox::phase_direct(double z) const {
    if (z == anchor_) return 0.0;
    ensure_allowed(z);
    auto integrand = [this](double x) { return base_.q(x) * (1.0 + y2(base_, x)); };
    return integrate(integrand, anchor_, z, abs_tol_, rel_tol_).value;
}

} // namespace pim
