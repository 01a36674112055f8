#include "pim/quadrature.hpp"

#include <cmath>
#include <queue>
#include <vector>

namespace pim {

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
const double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

const double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

const double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double value;
    double error;
};

struct PanelLess {
    bool operator()(const Panel& x, const Panel& y) const {
        if (x.error != y.error) return x.error < y.error;
        return x.a > y.a; // deterministic tie-break
    }
};

Panel gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                    long& evaluations) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double fc = f(mid);
    double k15 = kWgk[7] * fc;
    double g7 = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        double dx = half * kXgk[i];
        double y = f(mid - dx) + f(mid + dx);
        k15 += kWgk[i] * y;
        if (i % 2 == 1) g7 += kWg[i / 2] * y;
    }
    evaluations += 15;

    Panel p;
    p.a = a;
    p.b = b;
    p.value = k15 * half;
    if (!std::isfinite(p.value))
        throw QuadratureError("integrate: integrand is not finite near [" +
                              std::to_string(a) + ", " + std::to_string(b) + "]");
    double diff = std::abs((k15 - g7) * half);
    // QUADPACK-style sharpened estimate of the Kronrod error
    p.error = diff;
    if (diff > 0.0) {
        double scaled = std::pow(200.0 * diff, 1.5);
        if (scaled < diff) p.error = scaled;
    }
    return p;
}

} // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, double rel_tol) {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw DomainError("integrate: tolerances must be positive");
    QuadResult res;
    if (a == b) return res;
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }

    long evaluations = 0;
    std::priority_queue<Panel, std::vector<Panel>, PanelLess> panels;
    panels.push(gauss_kronrod(f, a, b, evaluations));

    double total = panels.top().value;
    double err = panels.top().error;

    while (err > std::max(abs_tol, rel_tol * std::abs(total))) {
        if (evaluations >= kQuadMaxEvaluations)
            throw QuadratureError(
                "integrate: evaluation budget exhausted (integrand is singular or "
                "near-singular inside the interval)");
        Panel worst = panels.top();
        panels.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (mid == worst.a || mid == worst.b)
            throw QuadratureError("integrate: interval collapsed to machine precision "
                                  "without convergence");
        Panel left = gauss_kronrod(f, worst.a, mid, evaluations);
        Panel right = gauss_kronrod(f, mid, worst.b, evaluations);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
    }

    res.value = sign * total;
    res.error_estimate = err;
    res.evaluations = evaluations;
    return res;
}

QuadResult integrate_to_turning_point(const std::function<double(double)>& f, double a,
                                      double tp, double abs_tol) {
    QuadResult res;
    if (a == tp) return res;
    const double orient = (a < tp) ? 1.0 : -1.0; // z = tp - orient u^2
    const double L = std::sqrt(std::abs(tp - a));
    auto g = [&f, tp, orient](double u) { return 2.0 * u * f(tp - orient * u * u); };
    res = integrate(g, 0.0, L, abs_tol, kQuadDefaultRelTol);
    res.value *= orient;
    return res;
}

} // namespace pim
