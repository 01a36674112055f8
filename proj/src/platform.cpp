#include "pim/platform.hpp"

#include <cmath>

namespace pim {

namespace {

void check_point(const BaseFunction& b, double z) {
    if (b.s() != 0.0 && z == 0.0)
        throw DomainError("platform function with s != 0 is singular at z = 0");
}

} // namespace

double platform_value(const BaseFunction& b, double z) {
    check_point(b, z);
    double Q = b.q(z); // guards Q^2
    double p = -b.dq(z) / (2.0 * Q * Q);
    if (b.s() != 0.0) p -= b.s() / (2.0 * z * Q);
    return p;
}

double platform_derivative(const BaseFunction& b, double z) {
    check_point(b, z);
    double Q = b.q(z);
    double Qp = b.dq(z);
    double Qpp = b.d2q(z);
    double d = -Qpp / (2.0 * Q * Q) + Qp * Qp / (Q * Q * Q);
    if (b.s() != 0.0) {
        double s = b.s();
        d += s / (2.0 * z * z * Q) + s * Qp / (2.0 * z * Q * Q);
    }
    return d;
}

double y2(const BaseFunction& b, double z) {
    double Q = b.q(z);
    double p = platform_value(b, z);
    double dp = platform_derivative(b, z);
    double v = -0.5 * p * p + 0.5 * dp / Q;
    if (!b.canonical()) v -= b.mismatch(z) / (2.0 * Q * Q);
    return v;
}

double epsilon0(const BaseFunction& b, double z) {
    double Q = b.q(z);
    double Qp = b.dq(z);
    double Qpp = b.d2q(z);
    // Q^-3/2 d^2/dz^2 Q^-1/2 = 3 Q'^2 / (4 Q^4) - Q'' / (2 Q^3)
    double curvature = 0.75 * Qp * Qp / (Q * Q * Q * Q) - 0.5 * Qpp / (Q * Q * Q);
    double q2v = Q * Q;
    return curvature + (b.potential().r(z) - q2v) / q2v;
}

double identity_residual(const BaseFunction& b, double z) {
    check_point(b, z);
    double Q = b.q(z);
    double Qp = b.dq(z);
    double Qpp = b.d2q(z);
    double lhs = 0.75 * Qp * Qp / (Q * Q * Q * Q) - 0.5 * Qpp / (Q * Q * Q);
    double p = platform_value(b, z);
    double dp = platform_derivative(b, z);
    double rhs = dp / Q - p * p;
    double s = b.s();
    if (s != 0.0) rhs += s * (s - 2.0) / (4.0 * z * z * Q * Q);
    return std::abs(lhs - rhs);
}

PlatformEval evaluate_platform(const BaseFunction& b, double z) {
    PlatformEval e;
    e.z = z;
    e.p = platform_value(b, z);
    e.dp_dz = platform_derivative(b, z);
    double Q = b.q(z);
    e.y2 = -0.5 * e.p * e.p + 0.5 * e.dp_dz / Q;
    if (!b.canonical()) e.y2 -= b.mismatch(z) / (2.0 * Q * Q);
    return e;
}

} // namespace pim
