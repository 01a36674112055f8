#include "pim/base.hpp"

#include <algorithm>
#include <cmath>

namespace pim {

double BaseFunction::s_term(double z) const {
    if (c_ == 0.0) return 0.0;
    return c_ / (z * z);
}

double BaseFunction::q2(double z) const {
    if (q2_override_) return q2_override_->r(z);
    return potential_.r(z) + s_term(z);
}

double BaseFunction::dq2(double z) const {
    if (q2_override_) return q2_override_->dr(z);
    double d = potential_.dr(z);
    if (c_ != 0.0) d -= 2.0 * c_ / (z * z * z);
    return d;
}

double BaseFunction::d2q2(double z) const {
    if (q2_override_) return q2_override_->d2r(z);
    double d = potential_.d2r(z);
    if (c_ != 0.0) d += 6.0 * c_ / (z * z * z * z);
    return d;
}

void BaseFunction::guard_check(double z, double v) const {
    if (!(v > kTurningPointGuard))
        throw GuardError("Q^2 = " + std::to_string(v) + " <= guard at z = " +
                             std::to_string(z) + " (forbidden region or turning point)",
                         z);
}

double BaseFunction::q(double z) const {
    double v = q2(z);
    guard_check(z, v);
    return std::sqrt(v);
}

double BaseFunction::dq(double z) const {
    double v = q2(z);
    guard_check(z, v);
    return dq2(z) / (2.0 * std::sqrt(v));
}

double BaseFunction::d2q(double z) const {
    double v = q2(z);
    guard_check(z, v);
    double qd = dq2(z) / (2.0 * std::sqrt(v));
    return (d2q2(z) - 2.0 * qd * qd) / (2.0 * std::sqrt(v));
}

double BaseFunction::mismatch(double z) const {
    if (canonical_) return 0.0;
    return q2(z) - potential_.r(z) - s_term(z);
}

namespace {

double resolve_s(const Potential& p, const BaseSpec& spec) {
    if (spec.preset != BaseSpec::Preset::no_centrifugal) return spec.s;
    auto it = p.params().find("l");
    if (it == p.params().end())
        throw DomainError("no-centrifugal base requires parameter 'l' on potential '" +
                          p.label() + "'");
    return -2.0 * it->second;
}

void check_s_term_domain(const Potential& p, double s) {
    if (s * (s - 2.0) != 0.0 && p.domain().contains_interior(0.0))
        throw DomainError("base with s = " + std::to_string(s) +
                          " is singular at z=0, which lies inside the domain of '" +
                          p.label() + "'");
}

} // namespace

BaseFunction make_base(const Potential& p, const BaseSpec& spec) {
    BaseSpec resolved = spec;
    resolved.s = resolve_s(p, spec);
    check_s_term_domain(p, resolved.s);

    BaseFunction b;
    b.potential_ = p;
    b.spec_ = resolved;
    b.c_ = resolved.s * (resolved.s - 2.0) / 4.0;
    b.canonical_ = true;
    return b;
}

BaseFunction make_base(const Potential& p, const BaseSpec& spec,
                       const Potential& q2_override) {
    BaseFunction b = make_base(p, spec);
    b.q2_override_ = q2_override;
    b.canonical_ = false;
    return b;
}

std::vector<double> turning_points(const BaseFunction& b, double lo, double hi,
                                   int n_scan) {
    if (!(lo < hi)) throw DomainError("turning_points: need lo < hi");
    if (n_scan < 2) throw DomainError("turning_points: need n_scan >= 2");

    std::vector<double> roots;
    auto push_root = [&roots](double z) {
        for (double r : roots)
            if (std::abs(r - z) <= 1e-10 * std::max(1.0, std::abs(z))) return;
        roots.push_back(z);
    };

    double prev_z = lo;
    double prev_v = b.q2(prev_z);
    if (prev_v == 0.0) push_root(prev_z);
    for (int i = 1; i <= n_scan; ++i) {
        double z = lo + (hi - lo) * i / n_scan;
        double v = b.q2(z);
        if (v == 0.0) {
            push_root(z);
        } else if (prev_v != 0.0 && std::signbit(v) != std::signbit(prev_v)) {
            // bisect the bracket
            double a = prev_z, fa = prev_v, c = z;
            while (c - a > 1e-12 * std::max(1.0, std::abs(a))) {
                double m = 0.5 * (a + c);
                if (m == a || m == c) break;
                double fm = b.q2(m);
                if (fm == 0.0) {
                    a = c = m;
                    break;
                }
                if (std::signbit(fm) == std::signbit(fa)) {
                    a = m;
                    fa = fm;
                } else {
                    c = m;
                }
            }
            push_root(0.5 * (a + c));
        }
        prev_z = z;
        prev_v = v;
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace pim
