#include <cmath>

#include <doctest.h>

#include "pim/base.hpp"
#include "pim/oracle.hpp"

using namespace pim;

TEST_CASE("Q^2 composition per platform parameter") {
    BaseFunction airy0 = make_base(Potential::builtin("airy"), BaseSpec::unmodified());
    CHECK(airy0.q2(4.0) == 4.0);
    CHECK(airy0.q2(0.0) == 0.0); // s-term absent, z=0 evaluates fine

    Potential one = Potential::from_source("1", {}, Interval{0.0, INFINITY});
    BaseFunction kl = make_base(one, BaseSpec::kramers_langer());
    CHECK(kl.q2(1.0) == doctest::Approx(0.75));

    Potential zero = Potential::from_source("0", {}, Interval{0.0, INFINITY});
    BaseFunction nc = make_base(zero, BaseSpec(-2.0));
    CHECK(nc.q2(2.0) == doctest::Approx(0.5));
    // same thing, spelled as the centrifugal term with l = 1
    CHECK(nc.q2(2.0) == doctest::Approx(1.0 * 2.0 / (2.0 * 2.0)));

    // no-centrifugal preset takes l from the potential
    Potential rf = Potential::builtin("radial-free", {{"k", 1.0}, {"l", 1.0}});
    BaseFunction b = make_base(rf, BaseSpec::no_centrifugal());
    CHECK(b.s() == doctest::Approx(-2.0));
    for (double z : {0.5, 1.0, 3.0})
        CHECK(b.q2(z) == doctest::Approx(1.0)); // R + l(l+1)/z^2 = k^2 exactly
}

TEST_CASE("s-term singular inside the domain is rejected") {
    Potential airy = Potential::builtin("airy"); // domain contains 0
    CHECK_THROWS_AS(make_base(airy, BaseSpec::kramers_langer()), DomainError);
    // s = 0 and s = 2 have no s-term, so the full line is fine
    CHECK_NOTHROW(make_base(airy, BaseSpec(0.0)));
    CHECK_NOTHROW(make_base(airy, BaseSpec(2.0)));
}

TEST_CASE("principal branch and guard") {
    BaseFunction airy0 = make_base(Potential::builtin("airy"), BaseSpec::unmodified());
    for (double z : {0.5, 1.0, 2.0, 5.0, 9.0}) {
        CHECK(std::abs(airy0.q(z) * airy0.q(z) - airy0.q2(z)) <=
              1e-14 * std::abs(airy0.q2(z)));
    }
    CHECK_THROWS_AS(airy0.q(-1.0), GuardError);   // forbidden region
    CHECK_THROWS_AS(airy0.q(0.0), GuardError);    // turning point
    CHECK_THROWS_AS(airy0.dq(-1.0), GuardError);
    CHECK_THROWS_AS(airy0.d2q(1e-13), GuardError); // inside the guard band
}

TEST_CASE("dq and d2q match finite differences away from turning points") {
    Potential coul = Potential::builtin("coulomb", {{"E", -0.5}, {"Z", 1.0}, {"l", 0.0}});
    BaseFunction b = make_base(coul, BaseSpec::kramers_langer());
    for (int i = 0; i < 30; ++i) {
        double z = 0.3 + (1.55 - 0.3) * i / 29.0;
        if (std::abs(b.q2(z)) < 0.01) continue;
        double fd1 = fd_derivative([&](double x) { return b.q(x); }, z, 1);
        double fd2 = fd_derivative([&](double x) { return b.dq(x); }, z, 1);
        CHECK(std::abs(fd1 - b.dq(z)) <=
              1e-8 * std::max({1.0, std::abs(fd1), std::abs(b.dq(z))}));
        CHECK(std::abs(fd2 - b.d2q(z)) <=
              1e-7 * std::max({1.0, std::abs(fd2), std::abs(b.d2q(z))}));
    }
}

TEST_CASE("turning points") {
    BaseFunction airy0 = make_base(Potential::builtin("airy"), BaseSpec::unmodified());
    auto roots = turning_points(airy0, -1.0, 1.0);
    REQUIRE(roots.size() == 1);
    CHECK(std::abs(roots[0]) < 1e-12);

    Potential coul = Potential::builtin("coulomb", {{"E", -0.5}, {"Z", 1.0}, {"l", 0.0}});
    BaseFunction kl = make_base(coul, BaseSpec::kramers_langer());
    auto r = turning_points(kl, 0.01, 10.0);
    REQUIRE(r.size() == 2);
    // roots of -z^2 + 2z - 1/4: 1 -+ sqrt(3)/2
    CHECK(r[0] == doctest::Approx(1.0 - std::sqrt(3.0) / 2.0).epsilon(1e-9));
    CHECK(r[1] == doctest::Approx(1.0 + std::sqrt(3.0) / 2.0).epsilon(1e-9));
    for (double root : r)
        CHECK(std::abs(kl.q2(root)) < 1e-9);

    Potential one = Potential::from_source("1", {}, Interval{});
    BaseFunction b1 = make_base(one, BaseSpec::unmodified());
    CHECK(turning_points(b1, 0.0, 1.0).empty());

    CHECK_THROWS_AS(turning_points(b1, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(turning_points(b1, 0.0, 1.0, 1), DomainError);
}

TEST_CASE("override Q^2 reports its mismatch") {
    Potential r1 = Potential::from_source("1", {}, Interval{});
    Potential q2c = Potential::from_source("2", {}, Interval{});
    BaseFunction b = make_base(r1, BaseSpec::unmodified(), q2c);
    CHECK_FALSE(b.canonical());
    CHECK(b.q2(3.0) == 2.0);
    CHECK(b.mismatch(3.0) == doctest::Approx(1.0));

    BaseFunction canon = make_base(r1, BaseSpec::unmodified());
    CHECK(canon.canonical());
    CHECK(canon.mismatch(3.0) == 0.0);
}
