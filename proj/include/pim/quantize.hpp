#pragma once

#include <utility>

#include "pim/base.hpp"
#include "pim/potential.hpp"

namespace pim {

// Radial hydrogen-like bound-state problem for the first-order quantization
// harness. First order only: the third-order boundary term P_s/2 diverges at
// the turning points and connecting across them needs complex contours,
// which this code does not do.
struct BoundStateProblem {
    double Z = 1.0;
    double l = 0.0;
    int n_r = 0;                          // radial quantum number, >= 0
    BaseSpec spec = BaseSpec::kramers_langer();
};

// First-order action integral of Q between the two turning points of Q^2 at
// energy E (the potential's parameter "E" is rebound to the given value).
// Both square-root endpoints are integrated with the regularizing u^2
// substitution, split at the interval midpoint.
//
// Special case kept for the unmodified (s=0, l=0) Coulomb base: Q^2 there has
// a single turning point and grows like 2Z/z toward the z=0 edge, which is an
// integrable inverse-square-root endpoint; the action is then taken from the
// singular edge to the turning point. Any other turning-point count is an
// error.
double action(const Potential& p, const BaseSpec& spec, double E,
              double abs_tol = 1e-12);

// Bisection on action(E) - (n_r + 1/2) pi, to |dE| < 1e-11. The bracket must
// straddle the root; action(E) is strictly increasing in E on the brackets
// used here.
double eigenvalue(const BoundStateProblem& prob, double e_lo, double e_hi);

// [6 E_n, E_n/6] around the Bohr guess E_n = -Z^2/(2 n^2), n = n_r + l + 1.
std::pair<double, double> default_bracket(const BoundStateProblem& prob);

} // namespace pim
