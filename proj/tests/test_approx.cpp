#include <cmath>
#include <complex>

#include <doctest.h>

#include "pim/approx.hpp"
#include "pim/oracle.hpp"

using namespace pim;

namespace {

BaseFunction plane_wave_base() {
    return make_base(Potential::from_source("1", {}, Interval{}), BaseSpec::unmodified());
}

BaseFunction airy_base() {
    return make_base(Potential::builtin("airy"), BaseSpec::unmodified());
}

} // namespace

TEST_CASE("plane wave: both orders are exact") {
    BaseFunction b = plane_wave_base();
    for (ExpansionOrder order : {ExpansionOrder::first, ExpansionOrder::third}) {
        PhaseApprox pa(b, order, 0.0);
        CHECK(pa.phase(1.0) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(pa.amplitude(0.7) == doctest::Approx(1.0).epsilon(1e-14));
        auto [up, dn] = pa.wavefunction(M_PI);
        CHECK(up.real() == doctest::Approx(-1.0).epsilon(1e-9));
        CHECK(std::abs(up.imag()) < 1e-9);
        CHECK(dn.real() == doctest::Approx(-1.0).epsilon(1e-9));
        // psi+ psi- = amplitude^2 stays real
        std::complex<double> prod = up * dn;
        CHECK(prod.real() == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(std::abs(prod.imag()) < 1e-12);
    }
}

TEST_CASE("airy phases: frozen closed forms") {
    BaseFunction b = airy_base();
    PhaseApprox first(b, ExpansionOrder::first, 1.0);
    CHECK(first.phase(4.0) == doctest::Approx(14.0 / 3.0).epsilon(1e-11));

    PhaseApprox third(b, ExpansionOrder::third, 1.0);
    // boundary term: (1/2)[P(4) - P(1)] = 7/64
    // quadrature part: 14/3 - (1/32) int_1^4 z^-5/2 dz = 14/3 - 7/384
    double expected = 14.0 / 3.0 + 35.0 / 384.0;
    CHECK(third.phase(4.0) == doctest::Approx(expected).epsilon(1e-11));
}

TEST_CASE("airy amplitudes at z = 4") {
    BaseFunction b = airy_base();
    PhaseApprox first(b, ExpansionOrder::first, 1.0);
    CHECK(first.amplitude(4.0) == doctest::Approx(std::pow(4.0, -0.25)).epsilon(1e-14));

    PhaseApprox third(b, ExpansionOrder::third, 1.0);
    // q3(4) = (1/2)(3/256) + (1 - 1/2048) * 2 = 2.0048828125 exactly
    CHECK(third.effective_q(4.0) == doctest::Approx(2.0048828125).epsilon(1e-14));
    CHECK(third.amplitude(4.0) ==
          doctest::Approx(std::pow(2.0048828125, -0.5)).epsilon(1e-14));

    auto [up, dn] = third.wavefunction(4.0);
    CHECK(std::abs(up) == doctest::Approx(third.amplitude(4.0)));
    CHECK(std::arg(up) ==
          doctest::Approx(std::remainder(third.phase(4.0), 2.0 * M_PI)).epsilon(1e-10));
    CHECK(std::abs(dn) == doctest::Approx(third.amplitude(4.0)));
}

TEST_CASE("wronskian residual stays small across the corpus") {
    BaseFunction airy = airy_base();
    for (ExpansionOrder order : {ExpansionOrder::first, ExpansionOrder::third}) {
        PhaseApprox pa(airy, order, 5.0);
        for (double z = 2.0; z <= 10.0; z += 1.0)
            CHECK(pa.wronskian_residual(z) < 1e-7);
    }

    BaseFunction weber =
        make_base(Potential::builtin("weber", {{"a", 5.0}}), BaseSpec::unmodified());
    for (ExpansionOrder order : {ExpansionOrder::first, ExpansionOrder::third}) {
        PhaseApprox pa(weber, order, 0.0);
        CHECK(pa.wronskian_residual(0.0) < 1e-7);
    }

    BaseFunction plane = plane_wave_base();
    PhaseApprox pw(plane, ExpansionOrder::third, 0.0);
    CHECK(pw.wronskian_residual(2.0) < 1e-9);
}

TEST_CASE("anchor invariance of the third-order phase") {
    BaseFunction b = airy_base();
    PhaseApprox a1(b, ExpansionOrder::third, 2.0, +1, 1e-13, 1e-13);
    PhaseApprox a2(b, ExpansionOrder::third, 5.0, +1, 1e-13, 1e-13);
    double shift = a1.phase(5.0);
    for (double z : {1.0, 3.0, 4.0, 7.0, 9.5})
        CHECK(std::abs(a1.phase(z) - a2.phase(z) - shift) < 1e-9);
}

TEST_CASE("order consistency: third minus first is the Y2 piece") {
    BaseFunction b = airy_base();
    PhaseApprox first(b, ExpansionOrder::first, 1.0);
    PhaseApprox third(b, ExpansionOrder::third, 1.0);
    for (double z : {2.0, 4.0, 8.0}) {
        double dp = 0.5 * (platform_value(b, z) - platform_value(b, 1.0));
        double burden = integrate(
                            [&](double x) {
                                double p = platform_value(b, x);
                                return 0.5 * p * p * b.q(x);
                            },
                            1.0, z)
                            .value;
        CHECK(third.phase(z) - first.phase(z) == doctest::Approx(dp - burden).epsilon(1e-9));
    }
}

TEST_CASE("direct Q(1+Y2) quadrature agrees with the boundary-term form") {
    BaseFunction b = airy_base();
    PhaseApprox third(b, ExpansionOrder::third, 1.0, +1, 1e-13, 1e-12);
    for (double z : {2.0, 4.0, 9.0})
        CHECK(third.phase_direct(z) == doctest::Approx(third.phase(z)).epsilon(1e-9));
}

TEST_CASE("non-canonical base keeps the mismatch term in both routes") {
    // R = 1 with override Q^2 = 2: Y2 = -1/4, so q3 = Q(1+Y2) = 3/(2 sqrt(2))
    Potential one = Potential::from_source("1", {}, Interval{});
    Potential two = Potential::from_source("2", {}, Interval{});
    BaseFunction b = make_base(one, BaseSpec::unmodified(), two);
    PhaseApprox third(b, ExpansionOrder::third, 0.0);
    const double q3 = 3.0 / (2.0 * std::sqrt(2.0));
    CHECK(third.effective_q(1.0) == doctest::Approx(q3).epsilon(1e-14));
    CHECK(third.phase(1.0) == doctest::Approx(q3).epsilon(1e-11));
    CHECK(third.phase_direct(1.0) == doctest::Approx(q3).epsilon(1e-11));
    CHECK(third.amplitude(1.0) == doctest::Approx(1.0 / std::sqrt(q3)).epsilon(1e-12));
}

TEST_CASE("breakdown and guard errors") {
    // R with a sharp dip: effective q3 goes negative at z = 2
    Potential dip = Potential::from_source("(2 - z)^2 + 0.25", {}, Interval{});
    BaseFunction b = make_base(dip, BaseSpec::unmodified());
    PhaseApprox third(b, ExpansionOrder::third, 2.0);
    CHECK_THROWS_AS(third.amplitude(2.0), BreakdownError);
    try {
        third.amplitude(2.0);
    } catch (const BreakdownError& e) {
        CHECK(e.z() == 2.0);
    }
    // first order has no breakdown there
    PhaseApprox first(b, ExpansionOrder::first, 2.0);
    CHECK(first.amplitude(2.0) == doctest::Approx(std::pow(0.25, -0.25)));

    // crossing a turning point is refused
    BaseFunction airy = airy_base();
    PhaseApprox pa(airy, ExpansionOrder::first, 1.0);
    CHECK_THROWS_AS(pa.phase(-0.5), GuardError);

    // anchor itself must be regular
    CHECK_THROWS_AS(PhaseApprox(airy, ExpansionOrder::first, 0.0), GuardError);
    CHECK_THROWS_AS(PhaseApprox(airy, ExpansionOrder::first, -3.0), GuardError);
}
