#pragma once

#include <functional>

#include "pim/errors.hpp"

namespace pim {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
};

inline constexpr double kQuadDefaultAbsTol = 1e-12;
inline constexpr double kQuadDefaultRelTol = 1e-10;
inline constexpr long kQuadMaxEvaluations = 1'000'000;

// Globally adaptive Gauss(7)/Kronrod(15) quadrature of f over [a, b]
// (a > b integrates with the opposite sign). Panels are kept in a priority
// queue ordered by estimated error and split at their midpoints until
// sum(err) <= max(abs_tol, rel_tol |value|). Deterministic for fixed inputs.
// Throws QuadratureError once the evaluation budget is exhausted, which in
// this code base means the caller's interval violated the turning-point
// guard.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol = kQuadDefaultAbsTol,
                     double rel_tol = kQuadDefaultRelTol);

// Integral of f from a to tp where f behaves like C |z - tp|^(1/2) near tp
// (Q near a simple turning point), or like C |z - tp|^(-1/2) (an integrable
// inverse-square-root edge). The substitution u^2 = |z - tp| regularizes
// either endpoint exactly; the Kronrod nodes are interior, so f is never
// sampled at tp itself.
QuadResult integrate_to_turning_point(const std::function<double(double)>& f, double a,
                                      double tp, double abs_tol = kQuadDefaultAbsTol);

} // namespace pim
