#include <doctest.h>

#include <cmath>

#include "prc/riemann.hpp"
#include "prc/sampling.hpp"
#include "prc/zoo.hpp"

using namespace prc;

TEST_CASE("catalogue entries are valid and admissible on their domains") {
    CHECK(catalogue().size() == 8);
    SplitMix64 rng(1);
    for (const auto& e : catalogue()) {
        CHECK_NOTHROW(e.spec.validate());
        for (int k = 0; k < 50; ++k) {
            std::vector<double> x(e.spec.dim);
            for (int i = 0; i < e.spec.dim; ++i)
                x[i] = rng.uniform(e.spec.domain[i][0], e.spec.domain[i][1]);
            CHECK(e.spec.admissible(x));
        }
    }
    CHECK_THROWS_AS((void)catalogueEntry("missing"), Error);
}

TEST_CASE("funk data at the origin and a sample point") {
    const MetricSpec& funk = catalogueEntry("funk2").spec;
    double o[] = {0.0, 0.0};
    auto a = funk.aValue(o);
    auto b = funk.bValue(o);
    CHECK(a[0][0] == doctest::Approx(1.0));
    CHECK(a[1][1] == doctest::Approx(1.0));
    CHECK(a[0][1] == doctest::Approx(0.0));
    CHECK(b[0] == doctest::Approx(0.0));
    CHECK(b[1] == doctest::Approx(0.0));
}

TEST_CASE("killing 1-form has r = 0 everywhere") {
    const MetricSpec& spec = catalogueEntry("killing_rotation").spec;
    for (auto& x : {std::vector<double>{0.7, 0.3}, std::vector<double>{-1.1, 0.9}}) {
        BetaEval be = betaSuite(spec, x);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) CHECK(std::abs(be.r[i][j]) < 1e-13);
        CHECK(std::abs(be.s[0][1]) == doctest::Approx(0.1));
    }
}

TEST_CASE("random specs: determinism and admissibility") {
    MetricSpec a = randomRanders(42, 2, 2, 0.05);
    MetricSpec b = randomRanders(42, 2, 2, 0.05);
    CHECK(a.toJsonText() == b.toJsonText());

    SplitMix64 rng(7);
    for (int k = 0; k < 1000; ++k) {
        std::vector<double> x(2);
        for (int i = 0; i < 2; ++i) x[i] = rng.uniform(-1.0, 1.0);
        CHECK(a.admissible(x, 0.9));
    }
}

TEST_CASE("random spec with amplitude 0 is exactly flat") {
    MetricSpec flat = randomRanders(1, 3, 2, 0.0);
    double x[] = {0.3, -0.6, 0.2};
    auto a = flat.aValue(x);
    auto b = flat.bValue(x);
    for (int i = 0; i < 3; ++i) {
        CHECK(b[i] == 0.0);
        for (int j = 0; j < 3; ++j) CHECK(a[i][j] == (i == j ? 1.0 : 0.0));
    }
}

TEST_CASE("random spec guards") {
    CHECK_THROWS_AS((void)randomRanders(1, 5, 2, 0.1), Error);
    CHECK_THROWS_AS((void)randomRanders(1, 2, 2, 5.0), AdmissibilityError);
}
