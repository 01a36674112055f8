#pragma once

#include <complex>
#include <utility>

#include "pim/base.hpp"
#include "pim/platform.hpp"
#include "pim/quadrature.hpp"

namespace pim {

// Truncation order of the formal series q/Q = sum Y_2n (book-keeping
// parameter set to 1): first keeps Y_0 only, third keeps Y_0 + Y_2.
enum class ExpansionOrder { first, third };

// Assembled phase-integral approximation psi_± = A(z) e^{±i phi(z)} on a
// classically allowed region. Phases are integrated from a user-chosen
// regular anchor point -- NOT from a turning point, where the platform
// function diverges; there is deliberately no default anchor.
//
// Third order uses the boundary-term form: the total-derivative part of the
// integrand, (1/2) Q dP/dzeta = (1/2) dP/dz, is integrated exactly as
// (1/2)[P(z) - P(anchor)], leaving the quadrature only (1 - P^2/2) Q (plus
// the mismatch term -m/(2Q) when Q^2 is non-canonical, in which case the
// output is experimental).
class PhaseApprox {
public:
    PhaseApprox(BaseFunction base, ExpansionOrder order, double anchor, int branch = +1,
                double abs_tol = kQuadDefaultAbsTol, double rel_tol = kQuadDefaultRelTol);

    double phase(double z) const;
    double amplitude(double z) const;

    // q at this order: Q for first, q3 = P'/2 + (1 - P^2/2) Q - m/(2Q) for
    // third; also the derivative of phase(). Throws BreakdownError when the
    // third-order q3 is not positive.
    double effective_q(double z) const;

    // {psi_+, psi_-}; psi_+ psi_- = amplitude^2 is real.
    std::pair<std::complex<double>, std::complex<double>> wavefunction(double z) const;

    // The branch selected at construction.
    std::complex<double> psi(double z) const;

    // |W + 2i| where W = psi_+ psi_-' - psi_- psi_+' via Richardson
    // differencing with h = 1e-6 max(1,|z|); exactly -2i for these forms.
    double wronskian_residual(double z) const;

    // Cross-check route: third-order phase by direct quadrature of Q(1+Y_2)
    // (no boundary term). Agrees with phase() to quadrature tolerance.
    double phase_direct(double z) const;

    const BaseFunction& base() const { return base_; }
    ExpansionOrder order() const { return order_; }
    double anchor() const { return anchor_; }
    int branch() const { return branch_; }

private:
    BaseFunction base_;
    ExpansionOrder order_;
    double anchor_;
    int branch_;
    double abs_tol_, rel_tol_;

    void ensure_allowed(double z) const; // scan [anchor, z] against the guard
};

} // namespace pim
