#include "prc/randers.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "prc/sampling.hpp"

namespace prc {

using nlohmann::json;

RandersDirectionEval randersDirectionEval(const RiemannEval& re, const BetaEval& be,
                                          std::span<const double> y) {
    const int n = static_cast<int>(re.a.size());
    RandersDirectionEval d;
    d.y.assign(y.begin(), y.end());

    double a2 = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a2 += re.a[i][j] * y[i] * y[j];
    d.alpha = std::sqrt(std::max(0.0, a2));
    for (int i = 0; i < n; ++i) d.beta += be.bLower[i] * y[i];
    d.F = d.alpha + d.beta;
    d.alphaRic = alphaRicci(re, y);

    d.ri0.assign(n, 0.0);
    d.si0.assign(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            d.ri0[i] += be.r[i][j] * y[j];
            d.si0[i] += be.s[i][j] * y[j];
        }
    for (int i = 0; i < n; ++i) {
        d.r00 += d.ri0[i] * y[i];
        d.r0 += be.rLower[i] * y[i];
        d.s0 += be.sLower[i] * y[i];
        d.rho0 += be.rhoGrad[i] * y[i];
        d.sDiv0 += be.sDiv[i] * y[i];
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            d.t00 += be.t[i][j] * y[i] * y[j];
            d.rho00 += be.rhoHess[i][j] * y[i] * y[j];
            d.rhoS0 += be.rhoGrad[i] * be.sUp[i][j] * y[j];
        }
    return d;
}

double pricRanders(const RiemannEval& re, const BetaEval& be, std::span<const double> y) {
    const int n = static_cast<int>(re.a.size());
    RandersDirectionEval d = randersDirectionEval(re, be, y);
    const double F2 = d.F * d.F;
    if (F2 == 0.0) throw AdmissibilityError("F = 0 at (x, y)");
    return d.alphaRic + 2.0 * d.alpha * d.sDiv0 - 2.0 * d.t00 -
           d.alpha * d.alpha * be.tTrace +
           (n - 1) * (2.0 * d.alpha * d.rhoS0 - d.rho00 + d.rho0 * d.rho0);
}

double pricRanders(const MetricSpec& spec, std::span<const double> x, std::span<const double> y) {
    RiemannEval re = riemannEval(spec, x);
    BetaEval be = betaSuite(spec, re);
    return pricRanders(re, be, y);
}

ECoefficients eCoefficients(const RiemannEval& re, const BetaEval& be, std::span<const double> y,
                            double c) {
    const int n = static_cast<int>(re.a.size());
    RandersDirectionEval d = randersDirectionEval(re, be, y);
    const double nm1 = n - 1;
    const double be2 = d.beta * d.beta;

    ECoefficients e;
    e.c = c;
    e.e4 = -be.tTrace - nm1 * c;
    e.e3 = 2.0 * (d.sDiv0 - d.beta * be.tTrace + nm1 * (d.rhoS0 - 2.0 * c * d.beta));
    e.e2 = d.alphaRic + 4.0 * d.beta * d.sDiv0 - 2.0 * d.t00 - be2 * be.tTrace +
           4.0 * nm1 * d.beta * d.rhoS0 - nm1 * d.rho00 + nm1 * d.rho0 * d.rho0 -
           6.0 * nm1 * c * be2;
    e.e1 = 2.0 * d.beta * d.alphaRic + 2.0 * be2 * d.sDiv0 - 4.0 * d.beta * d.t00 +
           2.0 * nm1 * be2 * d.rhoS0 - 2.0 * nm1 * d.beta * d.rho00 +
           2.0 * nm1 * d.beta * d.rho0 * d.rho0 - 4.0 * nm1 * c * be2 * d.beta;
    e.e0 = (d.alphaRic - 2.0 * d.t00 - nm1 * d.rho00 + nm1 * d.rho0 * d.rho0 - nm1 * c * be2) *
           be2;
    return e;
}

ECoefficients eCoefficients(const MetricSpec& spec, std::span<const double> x,
                            std::span<const double> y, double c) {
    RiemannEval re = riemannEval(spec, x);
    BetaEval be = betaSuite(spec, re);
    return eCoefficients(re, be, y, c);
}

NCoefficients nCoefficients(const RiemannEval& re, const BetaEval& be,
                            std::span<const double> y) {
    const int n = static_cast<int>(re.a.size());
    RandersDirectionEval d = randersDirectionEval(re, be, y);
    const double nm1 = n - 1;
    NCoefficients nc;
    nc.n3 = 4.0 * d.sDiv0 + 4.0 * nm1 * d.rhoS0;
    nc.n2 = 8.0 * d.beta * d.sDiv0 + 8.0 * nm1 * d.beta * d.rhoS0;
    nc.n1 = 4.0 * d.beta * d.beta * d.sDiv0 - 4.0 * nm1 * d.beta * d.s0 * d.s0 +
            4.0 * nm1 * d.beta * d.beta * d.rhoS0 - 2.0 * nm1 * d.r00 * d.s0;
    return nc;
}

NCoefficients nCoefficients(const MetricSpec& spec, std::span<const double> x,
                            std::span<const double> y) {
    RiemannEval re = riemannEval(spec, x);
    BetaEval be = betaSuite(spec, re);
    return nCoefficients(re, be, y);
}

// --------------------------------------------------------------- sampling

namespace {

// Fixed direction frame: a degree-2 polynomial identity in y is determined
// by its values on these n(n+1)/2 + n directions.
std::vector<std::vector<double>> directionFrame(int n) {
    std::vector<std::vector<double>> dirs;
    for (int i = 0; i < n; ++i) {
        std::vector<double> e(n, 0.0);
        e[i] = 1.0;
        dirs.push_back(e);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            std::vector<double> e(n, 0.0);
            e[i] = 1.0;
            e[j] = 1.0;
            dirs.push_back(e);
        }
    for (int i = 0; i < n; ++i) {
        std::vector<double> e(n, 0.0);
        e[i] = 1.0;
        e[(i + 1) % n] = 2.0;
        dirs.push_back(e);
    }
    return dirs;
}

void alphaNormalize(const RiemannEval& re, std::vector<double>& y) {
    const int n = static_cast<int>(re.a.size());
    double a2 = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a2 += re.a[i][j] * y[i] * y[j];
    double s = 1.0 / std::sqrt(a2);
    for (auto& v : y) v *= s;
}

struct SampledPoint {
    std::vector<double> x;
    RiemannEval re;
    BetaEval be;
};

// Draw admissible points; inadmissible draws are logged and skipped.
std::vector<SampledPoint> drawPoints(const MetricSpec& spec, int count, std::uint64_t seed,
                                     VerificationReport* report) {
    SplitMix64 rng(seed);
    std::vector<SampledPoint> pts;
    int attempts = 0;
    const int maxAttempts = 200 * count + 200;
    while (static_cast<int>(pts.size()) < count && attempts < maxAttempts) {
        ++attempts;
        std::vector<double> x(spec.dim);
        for (int i = 0; i < spec.dim; ++i)
            x[i] = rng.uniform(spec.domain[i][0], spec.domain[i][1]);
        try {
            SampledPoint p;
            p.x = x;
            p.re = riemannEval(spec, x);
            p.be = betaSuite(spec, p.re);
            pts.push_back(std::move(p));
        } catch (const AdmissibilityError& e) {
            if (report) {
                ++report->skipped;
                if (report->skippedLog.size() < 20) report->skippedLog.push_back(e.what());
            }
        }
    }
    if (pts.empty()) throw AdmissibilityError("no admissible sample points in the domain box");
    return pts;
}

double relResidual(double lhs, double rhs, double scale = 1.0) {
    return std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + scale);
}

ConditionResult makeCondition(const std::string& id, double maxResid, double tol) {
    return ConditionResult{id, maxResid, tol, maxResid <= tol};
}

// Right-hand side of the isotropic Ricci condition, without the c-terms.
double isoCond1RhsBase(const BetaEval& be, const RandersDirectionEval& d, int n) {
    return be.tTrace * d.alpha * d.alpha + 2.0 * d.t00 +
           (n - 1) * (d.rho00 - d.rho0 * d.rho0);
}

} // namespace

double VerificationReport::maxResidual() const {
    double m = 0.0;
    for (const auto& c : conditions) m = std::max(m, c.maxResidual);
    return m;
}

VerificationReport verifyIsotropic(const MetricSpec& spec, const VerifyOptions& opts) {
    const int n = spec.dim;
    VerificationReport rep;
    rep.theorem = "isotropic";
    rep.specName = spec.name;
    rep.seed = opts.seed;
    rep.tolerance = opts.tolerance;
    rep.samplesRequested = opts.samples;

    auto pts = drawPoints(spec, opts.samples, opts.seed, &rep);
    auto frame = directionFrame(n);

    double max1 = 0.0, max2 = 0.0, max3 = 0.0;
    for (auto& p : pts) {
        std::vector<std::vector<double>> dirs = frame;
        for (auto& y : dirs) alphaNormalize(p.re, y);

        std::vector<RandersDirectionEval> des;
        des.reserve(dirs.size());
        for (const auto& y : dirs) des.push_back(randersDirectionEval(p.re, p.be, y));

        double c = opts.cValue;
        if (opts.fitC) {
            // condition (i) is linear in c: lhs - rhsBase = c (n-1)(alpha^2 + beta^2)
            double num = 0.0, den = 0.0;
            for (const auto& d : des) {
                double w = (n - 1) * (d.alpha * d.alpha + d.beta * d.beta);
                double diff = d.alphaRic - isoCond1RhsBase(p.be, d, n);
                num += w * diff;
                den += w * w;
            }
            c = (den > 0.0) ? num / den : 0.0;
        }

        double r1 = 0.0, r3 = 0.0;
        for (const auto& d : des) {
            double rhs = isoCond1RhsBase(p.be, d, n) +
                         (n - 1) * c * (d.alpha * d.alpha + d.beta * d.beta);
            r1 = std::max(r1, relResidual(d.alphaRic, rhs));
            r3 = std::max(r3, std::min(std::abs(d.s0),
                                       std::abs(d.r00 + 2.0 * d.beta * d.s0)));
        }

        // condition (ii) as a covector identity
        double lhsNorm = 0.0, rhsNorm = 0.0, diffNorm = 0.0;
        for (int j = 0; j < n; ++j) {
            double rhoS = 0.0;
            for (int m = 0; m < n; ++m) rhoS += p.be.rhoGrad[m] * p.be.sUp[m][j];
            double lhs = p.be.sDiv[j];
            double rhs = -(n - 1) * (rhoS - c * p.be.bLower[j]);
            lhsNorm = std::max(lhsNorm, std::abs(lhs));
            rhsNorm = std::max(rhsNorm, std::abs(rhs));
            diffNorm = std::max(diffNorm, std::abs(lhs - rhs));
        }
        double r2 = diffNorm / (lhsNorm + rhsNorm + 1.0);

        max1 = std::max(max1, r1);
        max2 = std::max(max2, r2);
        max3 = std::max(max3, r3);
        rep.samples.push_back({p.x, {r1, r2, r3}, c});
    }
    rep.samplesUsed = static_cast<int>(pts.size());
    rep.conditions.push_back(makeCondition("ricci-identity", max1, opts.tolerance));
    rep.conditions.push_back(makeCondition("s-divergence-identity", max2, opts.tolerance));
    rep.conditions.push_back(makeCondition("s0-or-r00-disjunction", max3, opts.tolerance));
    rep.pass = std::all_of(rep.conditions.begin(), rep.conditions.end(),
                           [](const ConditionResult& c) { return c.pass; });
    return rep;
}

VerificationReport verifyFlat(const MetricSpec& spec, VerifyOptions opts) {
    opts.fitC = false;
    opts.cValue = 0.0;
    VerificationReport rep = verifyIsotropic(spec, opts);
    rep.theorem = "flat";
    return rep;
}

VerificationReport verifyReversible(const MetricSpec& spec, const VerifyOptions& opts) {
    const int n = spec.dim;
    VerificationReport rep;
    rep.theorem = "reversible";
    rep.specName = spec.name;
    rep.seed = opts.seed;
    rep.tolerance = opts.tolerance;
    rep.samplesRequested = opts.samples;

    auto pts = drawPoints(spec, opts.samples, opts.seed, &rep);
    auto frame = directionFrame(n);

    double maxCov = 0.0, maxDisj = 0.0, maxDirect = 0.0;
    for (auto& p : pts) {
        // covector identity s^m_{j;m} = -(n-1) rho_m s^m_j
        double lhsNorm = 0.0, rhsNorm = 0.0, diffNorm = 0.0;
        for (int j = 0; j < n; ++j) {
            double rhoS = 0.0;
            for (int m = 0; m < n; ++m) rhoS += p.be.rhoGrad[m] * p.be.sUp[m][j];
            double lhs = p.be.sDiv[j];
            double rhs = -(n - 1) * rhoS;
            lhsNorm = std::max(lhsNorm, std::abs(lhs));
            rhsNorm = std::max(rhsNorm, std::abs(rhs));
            diffNorm = std::max(diffNorm, std::abs(lhs - rhs));
        }
        double rCov = diffNorm / (lhsNorm + rhsNorm + 1.0);

        double rDisj = 0.0, rd = 0.0;
        for (auto y : frame) {
            alphaNormalize(p.re, y);
            RandersDirectionEval d = randersDirectionEval(p.re, p.be, y);
            rDisj = std::max(rDisj, std::min(std::abs(d.s0),
                                         std::abs(d.r00 + 2.0 * d.beta * d.s0)));
            std::vector<double> ym(y.size());
            for (std::size_t i = 0; i < y.size(); ++i) ym[i] = -y[i];
            double py = pricRanders(p.re, p.be, y);
            double pm = pricRanders(p.re, p.be, ym);
            rd = std::max(rd, std::abs(py - pm) / (d.F * d.F));
        }
        maxCov = std::max(maxCov, rCov);
        maxDisj = std::max(maxDisj, rDisj);
        maxDirect = std::max(maxDirect, rd);
        rep.samples.push_back({p.x, {rCov, rDisj, rd}, 0.0});
    }
    rep.samplesUsed = static_cast<int>(pts.size());
    rep.conditions.push_back(makeCondition("s-divergence-covector", maxCov, opts.tolerance));
    rep.conditions.push_back(makeCondition("s0-or-r00-disjunction", maxDisj, opts.tolerance));
    rep.conditions.push_back(makeCondition("direct-reversibility", maxDirect, opts.tolerance));
    rep.pass = std::all_of(rep.conditions.begin(), rep.conditions.end(),
                           [](const ConditionResult& c) { return c.pass; });
    return rep;
}

VerificationReport verifySquarePRic(const MetricSpec& spec, const VerifyOptions& opts) {
    VerificationReport rep;
    rep.theorem = "square";
    rep.specName = spec.name;
    rep.seed = opts.seed;
    rep.tolerance = opts.tolerance;
    rep.samplesRequested = opts.samples;

    auto pts = drawPoints(spec, opts.samples, opts.seed, &rep);
    SplitMix64 rng(opts.seed ^ 0x5ca1ab1eULL);

    double maxD3 = 0.0;
    for (auto& p : pts) {
        // two alpha-unit directions per point keep the y-order-7 jets affordable
        for (int k = 0; k < 2; ++k) {
            auto y = sampleAlphaUnitDirection(spec, p.x, rng);
            Tensor3<double> d3 =
                verticalThirdDerivative(VerticalQuantity::PRic, spec, p.x, y);
            double m = 0.0;
            for (const auto& mj : d3)
                for (const auto& mk : mj)
                    for (double v : mk) m = std::max(m, std::abs(v));
            maxD3 = std::max(maxD3, m);
            rep.samples.push_back({p.x, {m}, 0.0});
        }
    }
    rep.samplesUsed = static_cast<int>(pts.size());
    rep.conditions.push_back(makeCondition("pric-third-vertical-derivative", maxD3,
                                           opts.tolerance));
    rep.pass = rep.conditions.front().pass;
    return rep;
}

SCurvatureFit fitIsotropicS(const MetricSpec& spec, const VerifyOptions& opts) {
    const int n = spec.dim;
    SCurvatureFit fit;
    auto pts = drawPoints(spec, opts.samples, opts.seed, nullptr);
    auto frame = directionFrame(n);

    double cSum = 0.0;
    int cCount = 0;
    for (auto& p : pts) {
        double lo = 0.0, hi = 0.0;
        bool first = true;
        for (auto y : frame) {
            alphaNormalize(p.re, y);
            FinslerEval ev = finslerEval(spec, p.x, y);
            double c = ev.S / ((n + 1) * ev.F);
            fit.maxAbsS = std::max(fit.maxAbsS, std::abs(ev.S));
            if (first) {
                lo = hi = c;
                first = false;
                // c_m from jets: c = S / ((n+1) F) differentiated in x
                Jet cjet = ev.Sjet / ((n + 1.0) * ev.Fjet);
                fit.cGrad.assign(n, 0.0);
                fit.c0 = 0.0;
                for (int m = 0; m < n; ++m) {
                    fit.cGrad[m] = cjet.deriv(m).value();
                    fit.c0 += fit.cGrad[m] * y[m];
                }
            } else {
                lo = std::min(lo, c);
                hi = std::max(hi, c);
            }
            cSum += c;
            ++cCount;
        }
        fit.spread = std::max(fit.spread, hi - lo);
    }
    fit.c = cCount ? cSum / cCount : 0.0;
    fit.isotropic = fit.spread < opts.tolerance;
    return fit;
}

// --------------------------------------------------------------- identities

IdentityResult runIdentity(const MetricSpec& spec, const std::string& name, int samples,
                           std::uint64_t seed, std::optional<double> tolerance) {
    const int n = spec.dim;
    IdentityResult res;
    res.identity = name;
    res.specName = spec.name;
    res.seed = seed;
    res.samples = samples;

    double defaultTol = 1e-7;
    if (name == "homogeneity") defaultTol = 1e-9;
    if (name == "sTwoPath") defaultTol = 1e-8;
    res.tolerance = tolerance.value_or(defaultTol);

    SplitMix64 rng(seed);
    double maxResid = 0.0;

    for (int s = 0; s < samples; ++s) {
        auto x = samplePoint(spec, rng);
        auto y = sampleAlphaUnitDirection(spec, x, rng);
        RiemannEval re = riemannEval(spec, x);
        BetaEval be = betaSuite(spec, re);
        RandersDirectionEval d = randersDirectionEval(re, be, y);

        double resid = 0.0;
        if (name == "eq7") {
            double pg = pricGeneric(spec, x, y);
            double pr = pricRanders(re, be, y);
            resid = std::abs(pr - pg) / (std::abs(pg) + d.F * d.F);
        } else if (name == "epoly") {
            double c = rng.uniform(-1.0, 1.0);
            ECoefficients e = eCoefficients(re, be, y, c);
            double pr = pricRanders(re, be, y);
            double F2 = d.F * d.F;
            double lhs = F2 * (pr - (n - 1) * c * F2);
            double a = d.alpha;
            double rhs = kEPolySign *
                         (((e.e4 * a + e.e3) * a + e.e2) * a * a + e.e1 * a + e.e0);
            resid = std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
        } else if (name == "npoly") {
            std::vector<double> ym(y.size());
            for (std::size_t i = 0; i < y.size(); ++i) ym[i] = -y[i];
            double py = pricRanders(re, be, y);
            double pm = pricRanders(re, be, ym);
            double Fp2 = d.F * d.F;
            double Fm = d.alpha - d.beta;
            double Fm2 = Fm * Fm;
            NCoefficients nc = nCoefficients(re, be, y);
            double a = d.alpha;
            double lhs = Fp2 * Fm2 * (py - pm);
            double rhs = Fm2 * (nc.n3 * a * a * a + nc.n2 * a * a + nc.n1 * a +
                                2.0 * (n - 1) * a * d.s0 * (d.r00 + 2.0 * d.beta * d.s0));
            resid = std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
        } else if (name == "homogeneity") {
            FinslerEval e1 = finslerEval(spec, x, y);
            for (double lambda : {0.5, 2.0, 3.0}) {
                std::vector<double> ly(y.size());
                for (std::size_t i = 0; i < y.size(); ++i) ly[i] = lambda * y[i];
                FinslerEval e2 = finslerEval(spec, x, ly);
                double l2 = lambda * lambda;
                auto rel = [](double actual, double expected, double floor) {
                    return std::abs(actual - expected) / (std::abs(expected) + floor);
                };
                resid = std::max(resid, rel(e2.F, lambda * e1.F, e1.F));
                for (int i = 0; i < n; ++i)
                    resid = std::max(resid, rel(e2.spray[i], l2 * e1.spray[i], e1.F * e1.F));
                resid = std::max(resid, rel(e2.S, lambda * e1.S, e1.F));
                resid = std::max(resid, rel(e2.Ric, l2 * e1.Ric, e1.F * e1.F));
                resid = std::max(resid, rel(e2.PRic, l2 * e1.PRic, e1.F * e1.F));
            }
        } else if (name == "sTwoPath") {
            FinslerEval ev = finslerEval(spec, x, y);
            resid = std::abs(ev.S - ev.STransport) / (std::abs(ev.S) + 1.0);
        } else {
            throw Error("unknown identity '" + name + "'");
        }
        maxResid = std::max(maxResid, resid);
    }
    res.maxResidual = maxResid;
    res.pass = maxResid <= res.tolerance;
    return res;
}

// --------------------------------------------------------------- reports

std::string VerificationReport::toJsonText() const {
    json j;
    j["theorem"] = theorem;
    j["spec"] = specName;
    json records = json::array();
    for (const auto& s : samples) {
        json r;
        r["x"] = s.x;
        r["residuals"] = s.residuals;
        if (theorem == "isotropic") r["fitted_c"] = s.fittedC;
        records.push_back(r);
    }
    j["records"] = records;
    json summary;
    summary["seed"] = seed;
    summary["tolerance"] = tolerance;
    summary["samples_requested"] = samplesRequested;
    summary["samples_used"] = samplesUsed;
    summary["skipped"] = skipped;
    json conds = json::array();
    for (const auto& c : conditions) {
        json jc;
        jc["id"] = c.id;
        jc["max_residual"] = c.maxResidual;
        jc["tolerance"] = c.tolerance;
        jc["pass"] = c.pass;
        conds.push_back(jc);
    }
    summary["conditions"] = conds;
    summary["max_residual"] = maxResidual();
    summary["pass"] = pass;
    j["summary"] = summary;
    if (!skippedLog.empty()) j["skipped_log"] = skippedLog;
    return j.dump(2) + "\n";
}

std::string IdentityResult::toJsonText() const {
    json j;
    json summary;
    j["identity"] = identity;
    j["spec"] = specName;
    summary["seed"] = seed;
    summary["samples"] = samples;
    summary["max_residual"] = maxResidual;
    summary["tolerance"] = tolerance;
    summary["pass"] = pass;
    j["summary"] = summary;
    return j.dump(2) + "\n";
}

} // namespace prc
