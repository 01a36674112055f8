#include "pim/quantize.hpp"

#include <algorithm>
#include <cmath>

#include "pim/quadrature.hpp"

namespace pim {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Scan window for turning points: start at the domain edge (nudged off a
// singular endpoint) and grow the upper end until the sign structure of Q^2
// is resolved.
std::vector<double> locate_turning_points(const BaseFunction& b) {
    const Interval& d = b.potential().domain();
    double lo = std::isfinite(d.lo) ? d.lo + 1e-9 * std::max(1.0, std::abs(d.lo)) : -8.0;
    double hi0 = std::isfinite(d.hi) ? d.hi : std::max(lo + 1.0, 8.0);

    double hi = std::isfinite(d.hi) ? hi0 : 8.0;
    std::vector<double> roots;
    for (int round = 0; round < 16; ++round) {
        roots = turning_points(b, lo, hi, 2048);
        if (std::isfinite(d.hi)) break;
        // done once we have two roots and the tail is classically forbidden
        if (roots.size() >= 2 && b.q2(hi) < 0.0) break;
        if (!std::isfinite(d.lo) && b.q2(lo) >= 0.0 && round % 2 == 1) lo *= 2.0;
        hi *= 2.0;
        if (hi > 1e6) break;
    }
    return roots;
}

bool singular_inner_edge(const BaseFunction& b) {
    const Potential& p = b.potential();
    if (!std::isfinite(p.domain().lo)) return false;
    const auto& sing = p.singularities();
    if (std::find(sing.begin(), sing.end(), p.domain().lo) == sing.end()) return false;
    // integrable edge: Q^2 -> +inf as z -> lo+
    double eps = 1e-6 * std::max(1.0, std::abs(p.domain().lo));
    return b.q2(p.domain().lo + eps) > 0.0 &&
           b.q2(p.domain().lo + eps) > b.q2(p.domain().lo + 2.0 * eps);
}

} // namespace

double action(const Potential& p, const BaseSpec& spec, double E, double abs_tol) {
    Potential pe = p.rebind("E", E);
    BaseFunction b = make_base(pe, spec);

    auto f = [&b](double z) { return std::sqrt(std::max(b.q2(z), 0.0)); };

    std::vector<double> roots = locate_turning_points(b);
    double r1, r2;
    if (roots.size() == 2) {
        r1 = roots[0];
        r2 = roots[1];
    } else if (roots.size() == 1 && singular_inner_edge(b)) {
        r1 = p.domain().lo;
        r2 = roots[0];
    } else {
        throw DomainError("action: expected 2 turning points at E = " + std::to_string(E) +
                          ", found " + std::to_string(roots.size()));
    }

    double mid = 0.5 * (r1 + r2);
    double left = integrate_to_turning_point(f, mid, r1, abs_tol).value;  // = -int_{r1}^{mid}
    double right = integrate_to_turning_point(f, mid, r2, abs_tol).value; // = +int_{mid}^{r2}
    return right - left;
}

double eigenvalue(const BoundStateProblem& prob, double e_lo, double e_hi) {
    if (prob.n_r < 0) throw DomainError("eigenvalue: n_r must be >= 0");
    if (!(e_lo < e_hi)) throw DomainError("eigenvalue: need e_lo < e_hi");

    Potential p = Potential::builtin(
        "coulomb", {{"E", e_lo}, {"Z", prob.Z}, {"l", prob.l}});

    const double target = (prob.n_r + 0.5) * kPi;
    auto g = [&](double E) { return action(p, prob.spec, E) - target; };

    double glo = g(e_lo), ghi = g(e_hi);
    if (glo == 0.0) return e_lo;
    if (ghi == 0.0) return e_hi;
    if (std::signbit(glo) == std::signbit(ghi))
        throw DomainError("eigenvalue: no sign change of the quantization condition in [" +
                          std::to_string(e_lo) + ", " + std::to_string(e_hi) + "]");

    double a = e_lo, c = e_hi;
    while (c - a > 1e-11) {
        double m = 0.5 * (a + c);
        if (m == a || m == c) break;
        double gm = g(m);
        if (gm == 0.0) return m;
        if (std::signbit(gm) == std::signbit(glo)) {
            a = m;
            glo = gm;
        } else {
            c = m;
        }
    }
    return 0.5 * (a + c);
}

std::pair<double, double> default_bracket(const BoundStateProblem& prob) {
    double n = prob.n_r + prob.l + 1.0;
    double guess = -prob.Z * prob.Z / (2.0 * n * n);

    Potential p = Potential::builtin(
        "coulomb", {{"E", guess}, {"Z", prob.Z}, {"l", prob.l}});
    const double target = (prob.n_r + 0.5) * kPi;

    // The upper end E_guess/6 is always on the action > target side. The
    // lower end wants to sit below the root but still inside the window
    // where two turning points exist (too deep and Q^2 < 0 everywhere), so
    // probe: move toward E_guess when the action is undefined, deepen when
    // it is still above the target.
    double factor = 6.0;
    for (int i = 0; i < 64; ++i) {
        double e = guess * factor;
        try {
            if (action(p, prob.spec, e) - target < 0.0) return {e, guess / 6.0};
            factor *= 4.0;
        } catch (const DomainError&) {
            factor = 1.0 + 0.6 * (factor - 1.0);
        }
    }
    throw DomainError("default_bracket: could not find a valid lower energy bound");
}

} // namespace pim
