#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "pim/base.hpp"
#include "pim/potential.hpp"

namespace pim {

// High-accuracy reference solution of psi'' + R psi = 0, used to validate the
// phase-integral approximations.
struct OracleSolution {
    std::vector<double> grid;                 // strictly monotone
    std::vector<std::complex<double>> psi;
    std::vector<std::complex<double>> dpsi;
    double tol = 0.0;                         // local tolerance used
};

// Integrate the first-order system (psi, psi')' = (psi', -R psi) from z0 to
// z1 with an adaptive embedded Dormand-Prince 5(4) pair, local error per step
// <= tol (tol must lie in [1e-13, 1e-6]). If n_dense > 0 the solution is
// reported on a uniform grid of n_dense+1 points via the stepper's dense
// output; otherwise at every accepted step.
OracleSolution solve_ivp(const Potential& p, double z0, std::complex<double> psi0,
                         std::complex<double> dpsi0, double z1, double tol,
                         int n_dense = 0);

struct OrderComparison {
    double err_first = 0.0;
    double err_third = 0.0;
};

// Relative endpoint error of the first- and third-order approximations
// against an oracle solution seeded at `anchor` with the third-order psi+ and
// its Richardson-differenced derivative. The seeding convention pins down
// which exact solution is being approximated.
OrderComparison compare_orders(const Potential& p, const BaseSpec& spec, double anchor,
                               double probe, double tol);

// Central finite difference with one Richardson extrapolation step (step
// sizes h and h/2, h = max(1e-5, 1e-5 |z|)); order is 1 or 2. Used as the
// independent cross-check for all analytic derivatives in the test-suite.
double fd_derivative(const std::function<double(double)>& f, double z, int order);

std::complex<double> fd_derivative_complex(
    const std::function<std::complex<double>(double)>& f, double z);

} // namespace pim
