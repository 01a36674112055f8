#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "pim/expr.hpp"
#include "pim/oracle.hpp"

using namespace pim;

TEST_CASE("parse and evaluate basic expressions") {
    CHECK(evaluate(parse("z^2/4"), 2.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(evaluate(parse("2*E + 2/z - l*(l+1)/z^2"), 2.0, {{"E", -0.5}, {"l", 0.0}}) ==
          doctest::Approx(0.0).epsilon(1e-15));
    CHECK(evaluate(parse("sqrt(z)"), 4.0) == doctest::Approx(2.0));
    CHECK(evaluate(parse("exp(ln(z))"), 3.0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(evaluate(parse("sin(z)^2 + cos(z)^2"), 0.7) == doctest::Approx(1.0));
    // precedence: ^ over unary minus over * over +
    CHECK(evaluate(parse("-z^2"), 3.0) == doctest::Approx(-9.0));
    CHECK(evaluate(parse("2*z^2"), 3.0) == doctest::Approx(18.0));
    CHECK(evaluate(parse("1 - 2 - 3"), 0.0) == doctest::Approx(-4.0)); // left assoc
    CHECK(evaluate(parse("8/4/2"), 0.0) == doctest::Approx(1.0));
    CHECK(evaluate(parse("z^-2"), 2.0) == doctest::Approx(0.25));
    CHECK(evaluate(parse("z^0.5"), 9.0) == doctest::Approx(3.0));
    // U+2212 accepted as minus
    CHECK(evaluate(parse("1 − z"), 0.25) == doctest::Approx(0.75));
}

TEST_CASE("syntax errors carry byte offsets and expected tokens") {
    CHECK_THROWS_AS(parse("z +"), ParseError);
    try {
        parse("z +");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 3);
        CHECK(!e.expected().empty());
    }
    try {
        parse("foo(z)");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 0);
    }
    CHECK_THROWS_AS(parse("foo(z)"), ParseError);  // unknown function
    CHECK_THROWS_AS(parse("z^z"), ParseError);     // non-rational exponent
    CHECK_THROWS_AS(parse("(z"), ParseError);
    CHECK_THROWS_AS(parse("z 2"), ParseError);
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("z @ 2"), ParseError);
}

TEST_CASE("differentiation closed forms") {
    CHECK(evaluate(differentiate(parse("z^3")), 2.0) == doctest::Approx(12.0));
    // parameters are constants
    auto dc = differentiate(parse("c"));
    for (double z : {-1.0, 0.0, 2.5})
        CHECK(evaluate(dc, z, {{"c", 7.0}}) == 0.0);
    CHECK(evaluate(differentiate(parse("2/z")), 2.0) == doctest::Approx(-0.5));
    CHECK(evaluate(differentiate(parse("sqrt(z)")), 4.0) == doctest::Approx(0.25));
    CHECK(evaluate(differentiate(parse("exp(2*z)")), 0.5, {}) ==
          doctest::Approx(2.0 * std::exp(1.0)));
    CHECK(evaluate(differentiate(parse("ln(z)")), 5.0) == doctest::Approx(0.2));
    CHECK(evaluate(differentiate(parse("sin(z)")), 0.0) == doctest::Approx(1.0));
    CHECK(evaluate(differentiate(parse("cos(z)")), 0.0) == doctest::Approx(0.0));
}

TEST_CASE("evaluation domain errors are loud") {
    CHECK_THROWS_AS(evaluate(parse("1/z"), 0.0), EvalError);
    CHECK_THROWS_AS(evaluate(parse("sqrt(z)"), -1.0), EvalError);
    CHECK_THROWS_AS(evaluate(parse("ln(z)"), 0.0), EvalError);
    CHECK_THROWS_AS(evaluate(parse("z^-1"), 0.0), EvalError);
    CHECK_THROWS_AS(evaluate(parse("z^0.5"), -2.0), EvalError);
    CHECK_THROWS_AS(evaluate(parse("a*z"), 1.0), EvalError); // unbound parameter
    CHECK_THROWS_AS(evaluate(parse("exp(z)"), 1e9), EvalError); // overflow, not inf
}

namespace {

// random tree generator for the derivative property; weights chosen so values
// stay tame on z in [0.5, 2]
ExprPtr random_tree(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, 9);
    std::uniform_real_distribution<double> coef(0.2, 3.0);
    if (depth <= 0) {
        switch (pick(rng) % 3) {
            case 0: return ExprNode::number(coef(rng));
            case 1: return ExprNode::var();
            default: return ExprNode::param("a");
        }
    }
    switch (pick(rng)) {
        case 0:
            return ExprNode::binary(BinaryOp::Add, random_tree(rng, depth - 1),
                                    random_tree(rng, depth - 1));
        case 1:
            return ExprNode::binary(BinaryOp::Sub, random_tree(rng, depth - 1),
                                    random_tree(rng, depth - 1));
        case 2:
            return ExprNode::binary(BinaryOp::Mul, random_tree(rng, depth - 1),
                                    random_tree(rng, depth - 1));
        case 3:
            return ExprNode::binary(BinaryOp::Div, random_tree(rng, depth - 1),
                                    random_tree(rng, depth - 1));
        case 4: {
            std::uniform_int_distribution<int> exps(-2, 3);
            double r = exps(rng) + 0.5 * (pick(rng) % 2);
            return ExprNode::binary(BinaryOp::Pow, random_tree(rng, depth - 1),
                                    ExprNode::number(r));
        }
        case 5: return ExprNode::unary(UnaryOp::Neg, random_tree(rng, depth - 1));
        case 6: return ExprNode::unary(UnaryOp::Sqrt, random_tree(rng, depth - 1));
        case 7: return ExprNode::unary(UnaryOp::Sin, random_tree(rng, depth - 1));
        case 8: return ExprNode::unary(UnaryOp::Cos, random_tree(rng, depth - 1));
        default: return ExprNode::unary(UnaryOp::Exp, random_tree(rng, depth - 1));
    }
}

} // namespace

TEST_CASE("derivative matches Richardson finite differences on random trees") {
    std::mt19937 rng(20260808);
    std::uniform_real_distribution<double> zdist(0.6, 1.9);
    int checked = 0;
    while (checked < 200) {
        ExprPtr e = random_tree(rng, 3 + static_cast<int>(rng() % 4));
        double z = zdist(rng);
        ParamSet params{{"a", 0.5 + 0.001 * static_cast<double>(rng() % 1000)}};
        double exact, f0;
        try {
            f0 = evaluate(e, z, params);
            exact = evaluate(differentiate(e), z, params);
            // FD needs a neighborhood, and conditioning needs sane magnitudes
            double probe = evaluate(e, z + 2e-5, params) + evaluate(e, z - 2e-5, params);
            if (!std::isfinite(probe)) continue;
            if (std::abs(f0) > 1e6 || std::abs(exact) > 1e6) continue;
        } catch (const EvalError&) {
            continue; // tree wandered outside its domain; draw another
        }
        double fd;
        try {
            fd = fd_derivative([&](double x) { return evaluate(e, x, params); }, z, 1);
        } catch (const EvalError&) {
            continue;
        }
        double scale = std::max({1.0, std::abs(exact), std::abs(f0)});
        CHECK(std::abs(fd - exact) <= 1e-8 * scale);
        ++checked;
    }
    CHECK(checked == 200);
}

TEST_CASE("print/parse round trip is evaluation-stable") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> zdist(0.5, 2.0);
    const char* sources[] = {
        "z^2/4", "2*E + 2/z - l*(l+1)/z^2", "-z^2 + 3*(z - 1)", "sqrt(z)*exp(-z)",
        "sin(z)/cos(z)", "1/(4*z^2) + 1", "a - z^2/4", "2e0*z^-1.5", "-(z - 2)*(z + 2)",
    };
    ParamSet params{{"E", -0.5}, {"l", 1.0}, {"a", 5.0}};
    for (const char* src : sources) {
        ExprPtr e = parse(src);
        ExprPtr round = parse(to_string(e));
        for (int i = 0; i < 100; ++i) {
            double z = zdist(rng);
            CAPTURE(src);
            CAPTURE(z);
            CHECK(evaluate(round, z, params) ==
                  doctest::Approx(evaluate(e, z, params)).epsilon(1e-15));
        }
    }
    // and for random trees
    for (int t = 0; t < 40; ++t) {
        ExprPtr e = random_tree(rng, 4);
        ExprPtr round = parse(to_string(e));
        for (int i = 0; i < 20; ++i) {
            double z = zdist(rng);
            double a, b;
            try {
                a = evaluate(e, z, params);
                b = evaluate(round, z, params);
            } catch (const EvalError&) {
                continue;
            }
            CHECK(b == doctest::Approx(a).epsilon(1e-15));
        }
    }
}
