#include <doctest.h>

#include <cmath>

#include "prc/finsler.hpp"
#include "prc/riemann.hpp"
#include "prc/sampling.hpp"
#include "prc/zoo.hpp"

using namespace prc;

TEST_CASE("fundamental tensor on flat Randers") {
    const MetricSpec& flat = catalogueEntry("flat_b05").spec;
    double x[] = {0.0, 0.0};
    double y[] = {1.0, 0.0};
    auto g = fundamentalTensor(flat, x, y);
    CHECK(g[0][0] == doctest::Approx(2.25));
    CHECK(g[0][1] == doctest::Approx(0.0));
    CHECK(finslerF(flat, x, y) == doctest::Approx(1.5));

    const MetricSpec& pure = catalogueEntry("flat_b00").spec;
    auto id = fundamentalTensor(pure, x, y);
    CHECK(id[0][0] == doctest::Approx(1.0));
    CHECK(id[1][1] == doctest::Approx(1.0));
    CHECK(id[0][1] == doctest::Approx(0.0));
}

TEST_CASE("Euler identity g(y,y) = F^2") {
    MetricSpec spec = randomRanders(12, 3, 2, 0.15);
    SplitMix64 rng(12);
    for (int k = 0; k < 10; ++k) {
        auto x = samplePoint(spec, rng);
        auto y = sampleAlphaUnitDirection(spec, x, rng);
        auto g = fundamentalTensor(spec, x, y);
        double q = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) q += g[i][j] * y[i] * y[j];
        double F = finslerF(spec, x, y);
        CHECK(q == doctest::Approx(F * F).epsilon(1e-10));
    }
}

TEST_CASE("spray: flat vanishes, Funk is projective with factor F/2") {
    const MetricSpec& flat = catalogueEntry("flat_b03").spec;
    double x[] = {0.4, -0.2};
    double y[] = {0.7, 0.3};
    auto G = spray(flat, x, y);
    CHECK(std::abs(G[0]) < 1e-12);
    CHECK(std::abs(G[1]) < 1e-12);

    const MetricSpec& funk = catalogueEntry("funk2").spec;
    double xf[] = {0.3, 0.0};
    double yf[] = {1.0, 0.0};
    auto Gf = spray(funk, xf, yf);
    double F = finslerF(funk, xf, yf);
    CHECK(F == doctest::Approx(1.3 / 0.91));
    CHECK(Gf[0] == doctest::Approx(F / 2).epsilon(1e-10));
    CHECK(Gf[1] == doctest::Approx(0.0));

    double y2[] = {2.0, 0.0};
    auto G2 = spray(funk, xf, y2);
    CHECK(G2[0] == doctest::Approx(4 * Gf[0]).epsilon(1e-10));
}

TEST_CASE("Ricci: Funk has flag curvature -1/4, Riemannian path agrees") {
    const MetricSpec& funk = catalogueEntry("funk2").spec;
    SplitMix64 rng(6);
    for (int k = 0; k < 20; ++k) {
        auto x = samplePoint(funk, rng);
        auto y = sampleAlphaUnitDirection(funk, x, rng);
        double F = finslerF(funk, x, y);
        CHECK(ricci(funk, x, y) / (F * F) == doctest::Approx(-0.25).epsilon(1e-7));
    }

    const MetricSpec& sphere = catalogueEntry("sphere2").spec;
    for (int k = 0; k < 10; ++k) {
        auto x = samplePoint(sphere, rng);
        auto y = sampleAlphaUnitDirection(sphere, x, rng);
        double a = alphaRicci(sphere, x, y);
        CHECK(ricci(sphere, x, y) == doctest::Approx(a).epsilon(1e-9));
    }
}

TEST_CASE("BH volume density") {
    const MetricSpec& sphere = catalogueEntry("sphere2").spec;
    double x[] = {1.2, 0.5};
    CHECK(bhVolumeDensity(sphere, x) == doctest::Approx(std::sin(1.2)));

    const MetricSpec& flat = catalogueEntry("flat_b05").spec;
    double o[] = {0.0, 0.0};
    CHECK(bhVolumeDensity(flat, o) == doctest::Approx(std::pow(0.75, 1.5)));
    CHECK(bhVolumeDensity(flat, o) ==
          doctest::Approx(bhVolumeDensityQuadrature(flat, o)).epsilon(1e-3));

    MetricSpec spec = randomRanders(31, 2, 2, 0.15);
    SplitMix64 rng(3);
    auto p = samplePoint(spec, rng);
    CHECK(bhVolumeDensity(spec, p) ==
          doctest::Approx(bhVolumeDensityQuadrature(spec, p)).epsilon(1e-3));
}

TEST_CASE("distortion and S-curvature") {
    // Riemannian input: tau = 0 and S = 0
    const MetricSpec& sphere = catalogueEntry("sphere2").spec;
    double x[] = {0.9, 1.1};
    double y[] = {0.4, 0.8};
    CHECK(std::abs(distortion(sphere, x, y)) < 1e-12);
    CHECK(std::abs(sCurvature(sphere, x, y)) < 1e-12);

    const MetricSpec& flat = catalogueEntry("flat_b03").spec;
    double o[] = {0.2, 0.1};
    CHECK(std::abs(sCurvature(flat, o, y)) < 1e-12);

    const MetricSpec& funk = catalogueEntry("funk2").spec;
    double xf[] = {0.3, 0.0};
    double yf[] = {1.0, 0.0};
    double F = finslerF(funk, xf, yf);
    CHECK(sCurvature(funk, xf, yf) == doctest::Approx(1.5 * F).epsilon(1e-7));

    // two-path agreement on a generic metric
    MetricSpec spec = randomRanders(17, 2, 2, 0.2);
    SplitMix64 rng(17);
    for (int k = 0; k < 10; ++k) {
        auto p = samplePoint(spec, rng);
        auto d = sampleAlphaUnitDirection(spec, p, rng);
        FinslerEval ev = finslerEval(spec, p, d);
        CHECK(ev.S == doctest::Approx(ev.STransport).epsilon(1e-8));
    }
}

TEST_CASE("generic projective Ricci curvature") {
    const MetricSpec& flat = catalogueEntry("flat_b05").spec;
    double x[] = {0.3, 0.3};
    double y[] = {0.6, -0.2};
    CHECK(std::abs(pricGeneric(flat, x, y)) < 1e-12);

    for (const char* name : {"funk2", "funk3"}) {
        const MetricSpec& funk = catalogueEntry(name).spec;
        SplitMix64 rng(19);
        for (int k = 0; k < 50; ++k) {
            auto p = samplePoint(funk, rng);
            auto d = sampleAlphaUnitDirection(funk, p, rng);
            double F = finslerF(funk, p, d);
            CHECK(std::abs(pricGeneric(funk, p, d)) <= 1e-7 * F * F);
        }
    }

    // homogeneity of degree 2
    MetricSpec spec = randomRanders(23, 2, 2, 0.2);
    SplitMix64 rng(23);
    auto p = samplePoint(spec, rng);
    auto d = sampleAlphaUnitDirection(spec, p, rng);
    double y2[] = {2 * d[0], 2 * d[1]};
    CHECK(pricGeneric(spec, p, y2) ==
          doctest::Approx(4 * pricGeneric(spec, p, d)).epsilon(1e-9));
}

TEST_CASE("third vertical derivatives") {
    const MetricSpec& sphere = catalogueEntry("sphere2").spec;
    double x[] = {1.3, 0.4};
    double y[] = {0.8, 0.5};
    auto d3 = verticalThirdDerivative(VerticalQuantity::F2, sphere, x, y);
    for (auto& a : d3)
        for (auto& b : a)
            for (double v : b) CHECK(std::abs(v) < 1e-10);

    const MetricSpec& flat = catalogueEntry("flat_b05").spec;
    double o[] = {0.1, 0.1};
    auto dp = verticalThirdDerivative(VerticalQuantity::PRic, flat, o, y);
    for (auto& a : dp)
        for (auto& b : a)
            for (double v : b) CHECK(std::abs(v) < 1e-12);

    // F of a flat Randers metric: the alpha part carries the whole third
    // derivative; closed form (3 y_j y_k y_l / a^2 - sym(a_jk y_l)) / a^3
    // with y_l = a_lm y^m
    auto df = verticalThirdDerivative(VerticalQuantity::F, flat, o, y);
    double a2 = y[0] * y[0] + y[1] * y[1];
    double a = std::sqrt(a2);
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
            for (int l = 0; l < 2; ++l) {
                auto del = [](int p, int q) { return p == q ? 1.0 : 0.0; };
                double expect = (3 * y[j] * y[k] * y[l] / a2 -
                                 (del(j, k) * y[l] + del(j, l) * y[k] + del(k, l) * y[j])) /
                                (a2 * a);
                CHECK(df[j][k][l] == doctest::Approx(expect).epsilon(1e-8));
            }
}
