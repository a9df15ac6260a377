#include <doctest.h>

#include <cmath>

#include "prc/finsler.hpp"
#include "prc/randers.hpp"
#include "prc/sampling.hpp"
#include "prc/zoo.hpp"

using namespace prc;

TEST_CASE("direction contractions agree with the tensor suite") {
    MetricSpec spec = randomRanders(41, 3, 2, 0.15);
    SplitMix64 rng(41);
    auto x = samplePoint(spec, rng);
    auto y = sampleAlphaUnitDirection(spec, x, rng);
    RiemannEval re = riemannEval(spec, x);
    BetaEval be = betaSuite(spec, re);
    RandersDirectionEval d = randersDirectionEval(re, be, y);

    double r00 = 0, s0 = 0;
    for (int i = 0; i < 3; ++i) {
        s0 += be.sLower[i] * y[i];
        for (int j = 0; j < 3; ++j) r00 += be.r[i][j] * y[i] * y[j];
    }
    CHECK(d.r00 == doctest::Approx(r00).epsilon(1e-13));
    CHECK(d.s0 == doctest::Approx(s0).epsilon(1e-13));
    CHECK(d.alpha == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d.F == doctest::Approx(d.alpha + d.beta));
}

TEST_CASE("closed form equals the definitional pipeline") {
    for (int n : {2, 3}) {
        MetricSpec spec = randomRanders(50 + n, n, 2, 0.15);
        SplitMix64 rng(50 + n);
        for (int k = 0; k < 25; ++k) {
            auto x = samplePoint(spec, rng);
            auto y = sampleAlphaUnitDirection(spec, x, rng);
            double pg = pricGeneric(spec, x, y);
            double pc = pricRanders(spec, x, y);
            double F = finslerF(spec, x, y);
            CHECK(std::abs(pc - pg) / (std::abs(pg) + F * F) < 1e-12);
        }
    }
}

TEST_CASE("flat Randers: closed form and E-coefficients vanish") {
    const MetricSpec& flat = catalogueEntry("flat_b03").spec;
    double x[] = {0.5, -0.5};
    double y[] = {0.8, 0.6};
    CHECK(pricRanders(flat, x, y) == 0.0);
    ECoefficients e = eCoefficients(flat, x, y, 0.0);
    CHECK(e.e0 == 0.0);
    CHECK(e.e1 == 0.0);
    CHECK(e.e2 == 0.0);
    CHECK(e.e3 == 0.0);
    CHECK(e.e4 == 0.0);
}

TEST_CASE("E4 is independent of the direction") {
    MetricSpec spec = randomRanders(61, 2, 2, 0.2);
    SplitMix64 rng(61);
    auto x = samplePoint(spec, rng);
    double y1[] = {1.0, 0.3};
    double y2[] = {-0.4, 1.0};
    ECoefficients a = eCoefficients(spec, x, y1, 0.7);
    ECoefficients b = eCoefficients(spec, x, y2, 0.7);
    CHECK(a.e4 == doctest::Approx(b.e4).epsilon(1e-12));
}

TEST_CASE("E-polynomial identity with random c") {
    for (auto seed : {71, 72, 73}) {
        MetricSpec spec = randomRanders(seed, 2, 2, 0.2);
        IdentityResult res = runIdentity(spec, "epoly", 40, seed);
        CHECK(res.pass);
        CHECK(res.maxResidual < 1e-10);
    }
}

TEST_CASE("N-coefficients: displayed invariant and odd-part identity") {
    MetricSpec spec = randomRanders(81, 2, 2, 0.2);
    SplitMix64 rng(81);
    auto x = samplePoint(spec, rng);
    auto y = sampleAlphaUnitDirection(spec, x, rng);
    RiemannEval re = riemannEval(spec, x);
    BetaEval be = betaSuite(spec, re);
    RandersDirectionEval d = randersDirectionEval(re, be, y);
    NCoefficients nc = nCoefficients(re, be, y);
    CHECK(nc.n2 == doctest::Approx(2 * d.beta * nc.n3).epsilon(1e-13));

    // the odd part is exactly N3 * alpha
    std::vector<double> ym = {-y[0], -y[1]};
    double diff = pricRanders(re, be, y) - pricRanders(re, be, ym);
    CHECK(diff == doctest::Approx(nc.n3 * d.alpha).epsilon(1e-11));

    IdentityResult res = runIdentity(spec, "npoly", 40, 81);
    CHECK(res.pass);
    CHECK(res.maxResidual < 1e-10);

    // closed beta: all N vanish and PRic is reversible
    const MetricSpec& funk = catalogueEntry("funk2").spec;
    double xf[] = {0.2, -0.3};
    NCoefficients nf = nCoefficients(funk, xf, y);
    CHECK(std::abs(nf.n1) < 1e-12);
    CHECK(std::abs(nf.n2) < 1e-12);
    CHECK(std::abs(nf.n3) < 1e-12);
    CHECK(std::abs(pricRanders(funk, xf, y) - pricRanders(funk, xf, ym)) < 1e-10);
}

TEST_CASE("verifiers: flat condition") {
    VerifyOptions opts;
    opts.samples = 20;
    CHECK(verifyFlat(catalogueEntry("flat_b05").spec, opts).pass);
    CHECK(verifyFlat(catalogueEntry("funk2").spec, opts).pass);
    CHECK(verifyFlat(catalogueEntry("funk3").spec, opts).pass);
    VerificationReport sphere = verifyFlat(catalogueEntry("sphere2").spec, opts);
    CHECK(!sphere.pass);
    CHECK(sphere.maxResidual() > 1e-3);
}

TEST_CASE("verifiers: isotropic with fitted c") {
    VerifyOptions opts;
    opts.samples = 15;
    opts.fitC = true;

    VerificationReport flat = verifyIsotropic(catalogueEntry("flat_b03").spec, opts);
    CHECK(flat.pass);
    for (const auto& s : flat.samples) CHECK(std::abs(s.fittedC) < 1e-10);

    // the unit sphere is isotropic with c = 1: PRic = Ric = alpha^2
    VerificationReport sph = verifyIsotropic(catalogueEntry("sphere2").spec, opts);
    CHECK(sph.pass);
    for (const auto& s : sph.samples) CHECK(s.fittedC == doctest::Approx(1.0).epsilon(1e-8));

    VerificationReport funk = verifyIsotropic(catalogueEntry("funk2").spec, opts);
    CHECK(funk.pass);
    for (const auto& s : funk.samples) CHECK(std::abs(s.fittedC) < 1e-8);

    // a generic metric solves no rigid curvature equation
    MetricSpec spec = randomRanders(91, 2, 2, 0.2);
    VerificationReport rnd = verifyIsotropic(spec, opts);
    CHECK(!rnd.pass);
    CHECK(rnd.maxResidual() > 1e-4);
}

TEST_CASE("verifiers: reversibility iff") {
    VerifyOptions opts;
    opts.samples = 20;
    opts.tolerance = 1e-8;
    VerificationReport funk = verifyReversible(catalogueEntry("funk2").spec, opts);
    CHECK(funk.pass);

    VerificationReport kill = verifyReversible(catalogueEntry("killing_rotation").spec, opts);
    CHECK(!kill.pass);
    for (const auto& c : kill.conditions) CHECK(!c.pass); // all three signals fail together
}

TEST_CASE("verifiers: square PRic") {
    VerifyOptions opts;
    opts.samples = 3;
    opts.tolerance = 1e-9;
    CHECK(verifySquarePRic(catalogueEntry("flat_b05").spec, opts).pass);
    CHECK(verifySquarePRic(catalogueEntry("sphere2").spec, opts).pass);

    MetricSpec spec = randomRanders(95, 2, 2, 0.2);
    VerificationReport rnd = verifySquarePRic(spec, opts);
    CHECK(!rnd.pass);
    CHECK(rnd.maxResidual() > 1e-3);
}

TEST_CASE("isotropic S-curvature fit") {
    VerifyOptions opts;
    opts.samples = 10;
    SCurvatureFit funk = fitIsotropicS(catalogueEntry("funk2").spec, opts);
    CHECK(funk.isotropic);
    CHECK(funk.spread < 1e-7);
    CHECK(funk.c == doctest::Approx(0.5).epsilon(1e-7));

    SCurvatureFit flat = fitIsotropicS(catalogueEntry("flat_b05").spec, opts);
    CHECK(flat.isotropic);
    CHECK(std::abs(flat.c) < 1e-10);

    MetricSpec spec = randomRanders(97, 2, 2, 0.2);
    SCurvatureFit rnd = fitIsotropicS(spec, opts);
    CHECK(!rnd.isotropic);
}

TEST_CASE("reports are deterministic and internally consistent") {
    VerifyOptions opts;
    opts.samples = 10;
    opts.seed = 123;
    VerificationReport a = verifyReversible(catalogueEntry("killing_rotation").spec, opts);
    VerificationReport b = verifyReversible(catalogueEntry("killing_rotation").spec, opts);
    CHECK(a.toJsonText() == b.toJsonText());

    // summary max equals max over per-sample records
    double recMax = 0;
    for (const auto& s : a.samples)
        for (double r : s.residuals) recMax = std::max(recMax, r);
    CHECK(a.maxResidual() == doctest::Approx(recMax));

    IdentityResult i1 = runIdentity(catalogueEntry("funk2").spec, "eq7", 10, 5);
    IdentityResult i2 = runIdentity(catalogueEntry("funk2").spec, "eq7", 10, 5);
    CHECK(i1.toJsonText() == i2.toJsonText());
    CHECK_THROWS_AS(runIdentity(catalogueEntry("funk2").spec, "nope", 5, 1), Error);
}
