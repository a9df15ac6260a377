#include <doctest.h>

#include <cmath>

#include "prc/expr.hpp"
#include "prc/sampling.hpp"

using namespace prc;

TEST_CASE("parse and print round trip") {
    const char* sources[] = {
        "x1*x1 + 2",
        "sin(x2)^2",
        "1 - (x1^2 + x2^2)",
        "-x1 / (1 + x2)^(-2)",
        "sqrt(x1) * exp(-x2) + tanh(x1)",
        "x1^(3/2) + 2.5e-1",
    };
    for (const char* s : sources) {
        Expression e = Expression::parse(s, 2);
        Expression r = Expression::parse(e.print(), 2);
        CHECK(e.structurallyEqual(r));
    }
}

TEST_CASE("syntax errors carry a position") {
    try {
        Expression::parse("x1 +* 2", 2);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.pos == 4); // zero-based offset of the offending '*'
    }
    CHECK_THROWS_AS(Expression::parse("x1 + ", 2), ParseError);
    CHECK_THROWS_AS(Expression::parse("(x1", 2), ParseError);
    CHECK_THROWS_AS(Expression::parse("foo(x1)", 2), ParseError);  // unknown identifier
    CHECK_THROWS_AS(Expression::parse("sin(x1, x2)", 2), ParseError); // arity
    CHECK_THROWS_AS(Expression::parse("x3", 2), ParseError); // beyond dimension
    CHECK_THROWS_AS(Expression::parse("x1^x2", 2), ParseError); // non-constant exponent
}

TEST_CASE("value evaluation") {
    Expression e = Expression::parse("x1*x1 + 2*x2", 2);
    double pt[] = {3.0, 4.0};
    CHECK(e.evaluate(pt) == doctest::Approx(17.0));

    Expression p = Expression::parse("x1^(3/2)", 1);
    double q[] = {4.0};
    CHECK(p.evaluate(q) == doctest::Approx(8.0));
}

TEST_CASE("domain errors name the subexpression") {
    double pt[] = {-1.0};
    CHECK_THROWS_AS(Expression::parse("ln(x1)", 1).evaluate(pt), DomainError);
    CHECK_THROWS_AS(Expression::parse("sqrt(x1)", 1).evaluate(pt), DomainError);
    double z[] = {0.0};
    CHECK_THROWS_AS(Expression::parse("1/x1", 1).evaluate(z), DomainError);
}

TEST_CASE("jet evaluation: basic examples") {
    auto L = JetLayout::get(1, 1, 2, 0, 2);
    std::vector<Jet> coords = {Jet::variable(L, 0, 3.0)};

    Jet f = Expression::parse("x1*x1", 1).evaluate(coords);
    int d1[] = {1};
    int d2[] = {2};
    CHECK(f.value() == doctest::Approx(9.0));
    CHECK(f.extract(d1) == doctest::Approx(6.0));
    CHECK(f.extract(d2) == doctest::Approx(2.0));

    coords = {Jet::variable(L, 0, 0.0)};
    Jet s = Expression::parse("sin(x1)", 1).evaluate(coords);
    CHECK(s.value() == 0.0);
    CHECK(s.extract(d1) == doctest::Approx(1.0));
    CHECK(s.extract(d2) == doctest::Approx(0.0));
}

TEST_CASE("jet derivatives match central finite differences") {
    const char* sources[] = {
        "x1^2 * x2 + sin(x1 * x2)",
        "exp(x1 - x2^2) / (2 + cos(x2))",
        "sqrt(1 + x1^2 + x2^2) * tanh(x2)",
    };
    SplitMix64 rng(11);
    auto L = JetLayout::get(2, 2, 2, 0, 2);
    const double h = 1e-4;
    for (const char* s : sources) {
        Expression e = Expression::parse(s, 2);
        for (int rep = 0; rep < 5; ++rep) {
            double x1 = rng.uniform(-0.8, 0.8), x2 = rng.uniform(-0.8, 0.8);
            std::vector<Jet> coords = {Jet::variable(L, 0, x1), Jet::variable(L, 1, x2)};
            Jet j = e.evaluate(coords);
            auto at = [&](double a, double b) {
                double p[] = {a, b};
                return e.evaluate(p);
            };
            double fd1 = (at(x1 + h, x2) - at(x1 - h, x2)) / (2 * h);
            double fd11 = (at(x1 + h, x2) - 2 * at(x1, x2) + at(x1 - h, x2)) / (h * h);
            double fd12 = (at(x1 + h, x2 + h) - at(x1 + h, x2 - h) - at(x1 - h, x2 + h) +
                           at(x1 - h, x2 - h)) /
                          (4 * h * h);
            int d1[] = {1, 0};
            int d11[] = {2, 0};
            int d12[] = {1, 1};
            CHECK(j.extract(d1) == doctest::Approx(fd1).epsilon(1e-5));
            CHECK(j.extract(d11) == doctest::Approx(fd11).epsilon(1e-4));
            CHECK(j.extract(d12) == doctest::Approx(fd12).epsilon(1e-4));
        }
    }
}
