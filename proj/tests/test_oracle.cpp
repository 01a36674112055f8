#include <cmath>
#include <complex>

#include <doctest.h>

#include "pim/approx.hpp"
#include "pim/oracle.hpp"

using namespace pim;
using cplx = std::complex<double>;

TEST_CASE("constant-R closed forms") {
    // psi'' = psi: growing exponential
    Potential minus_one = Potential::from_source("-1", {}, Interval{});
    OracleSolution g = solve_ivp(minus_one, 0.0, 1.0, 1.0, 1.0, 1e-12);
    CHECK(std::abs(g.psi.back() - std::exp(1.0)) < 1e-9);
    CHECK(std::abs(g.dpsi.back() - std::exp(1.0)) < 1e-9);

    // psi'' + psi = 0: sine
    Potential one = Potential::from_source("1", {}, Interval{});
    OracleSolution s = solve_ivp(one, 0.0, 0.0, 1.0, M_PI / 2.0, 1e-12);
    CHECK(std::abs(s.psi.back() - 1.0) < 1e-9);
    CHECK(std::abs(s.dpsi.back()) < 1e-9);
}

TEST_CASE("dense output hits the requested grid") {
    Potential one = Potential::from_source("1", {}, Interval{});
    OracleSolution s = solve_ivp(one, 0.0, 0.0, 1.0, 2.0, 1e-10, 16);
    REQUIRE(s.grid.size() == 17);
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
        double z = s.grid[i];
        CHECK(z == doctest::Approx(2.0 * i / 16.0).epsilon(1e-15));
        CHECK(std::abs(s.psi[i] - std::sin(z)) < 1e-8);
        CHECK(std::abs(s.dpsi[i] - std::cos(z)) < 1e-8);
    }
    // backward integration works too
    OracleSolution b = solve_ivp(one, 2.0, std::sin(2.0), std::cos(2.0), 0.5, 1e-10);
    CHECK(std::abs(b.psi.back() - std::sin(0.5)) < 1e-8);
}

TEST_CASE("tolerance validation and monotone grid") {
    Potential one = Potential::from_source("1", {}, Interval{});
    CHECK_THROWS_AS(solve_ivp(one, 0.0, 0.0, 1.0, 1.0, 1e-3), DomainError);
    CHECK_THROWS_AS(solve_ivp(one, 0.0, 0.0, 1.0, 1.0, 1e-14), DomainError);
    Potential coul = Potential::builtin("coulomb", {{"E", -0.5}, {"Z", 1.0}, {"l", 0.0}});
    CHECK_THROWS_AS(solve_ivp(coul, -1.0, 1.0, 0.0, 1.0, 1e-10), DomainError);

    OracleSolution s = solve_ivp(one, 0.0, 0.0, 1.0, 3.0, 1e-9);
    for (std::size_t i = 1; i < s.grid.size(); ++i) CHECK(s.grid[i] > s.grid[i - 1]);
}

TEST_CASE("oracle self-convergence on the builtin corpus") {
    struct Case {
        const char* name;
        ParamSet params;
        double z0, z1;
    };
    const Case cases[] = {
        {"airy", {}, 1.0, 3.5},
        {"weber", {{"a", 5.0}}, 0.0, 2.5},
        {"coulomb", {{"E", -0.5}, {"Z", 1.0}, {"l", 0.0}}, 0.3, 1.6},
        {"radial-free", {{"k", 1.0}, {"l", 1.0}}, 2.0, 5.0},
    };
    for (const Case& c : cases) {
        Potential p = Potential::builtin(c.name, c.params);
        cplx psi0(1.0, 0.2), dpsi0(0.5, -0.1);
        OracleSolution coarse = solve_ivp(p, c.z0, psi0, dpsi0, c.z1, 1e-9);
        OracleSolution fine = solve_ivp(p, c.z0, psi0, dpsi0, c.z1, 5e-10);
        CAPTURE(c.name);
        CHECK(std::abs(coarse.psi.back() - fine.psi.back()) < 1e-9);
    }
}

TEST_CASE("airy oracle modulus tracks the z^-1/4 amplitude law") {
    Potential airy = Potential::builtin("airy");
    BaseFunction b = make_base(airy, BaseSpec::unmodified());
    PhaseApprox third(b, ExpansionOrder::third, 10.0);
    cplx psi0 = third.psi(10.0);
    cplx dpsi0 = fd_derivative_complex([&third](double x) { return third.psi(x); }, 10.0);
    OracleSolution sol = solve_ivp(airy, 10.0, psi0, dpsi0, 3.0, 1e-12, 50);
    const double c0 = std::abs(psi0) * std::pow(10.0, 0.25);
    for (std::size_t i = 0; i < sol.grid.size(); ++i) {
        double law = c0 * std::pow(sol.grid[i], -0.25);
        CHECK(std::abs(sol.psi[i]) == doctest::Approx(law).epsilon(0.01));
    }
}

TEST_CASE("fd_derivative closed forms") {
    CHECK(fd_derivative([](double z) { return z * z; }, 3.0, 1) ==
          doctest::Approx(6.0).epsilon(1e-10));
    CHECK(fd_derivative([](double z) { return 1.0 / std::sqrt(z); }, 1.0, 2) ==
          doctest::Approx(0.75).epsilon(1e-7));
    CHECK_THROWS_AS(fd_derivative([](double z) { return z; }, 0.0, 3), DomainError);

    BaseFunction b = make_base(Potential::builtin("airy"), BaseSpec::unmodified());
    double fd = fd_derivative([&](double x) { return platform_value(b, x); }, 2.0, 1);
    CHECK(platform_derivative(b, 2.0) == doctest::Approx(fd).epsilon(1e-7));
}

TEST_CASE("compare_orders") {
    // exact case: constant R, both orders coincide with the oracle
    Potential one = Potential::from_source("1", {}, Interval{});
    OrderComparison flat = compare_orders(one, BaseSpec::unmodified(), 0.0, 3.0, 1e-12);
    CHECK(flat.err_first < 1e-8);
    CHECK(flat.err_third < 1e-8);

    // airy: third order beats first by well over the 20x the gate requires
    Potential airy = Potential::builtin("airy");
    OrderComparison a = compare_orders(airy, BaseSpec::unmodified(), 10.0, 3.0, 1e-12);
    CHECK(a.err_first > 1e-4);
    CHECK(a.err_third <= 0.05 * a.err_first);

    // scattering coulomb, Kramers-Langer base
    Potential coul = Potential::builtin("coulomb", {{"E", 0.5}, {"Z", 1.0}, {"l", 0.0}});
    OrderComparison c =
        compare_orders(coul, BaseSpec::kramers_langer(), 30.0, 10.0, 1e-12);
    CHECK(c.err_third < c.err_first);
}
