#include "prc/zoo.hpp"

#include <cstdio>
#include <stdexcept>

#include "prc/sampling.hpp"

namespace prc {

namespace {

MetricSpec makeSpec(std::string name, int dim, std::vector<std::vector<std::string>> a,
                    std::vector<std::string> b, std::vector<std::array<double, 2>> domain) {
    MetricSpec s;
    s.name = std::move(name);
    s.dim = dim;
    s.a.resize(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) s.a[i].push_back(Expression::parse(a[i][j], dim));
    for (int i = 0; i < dim; ++i) s.b.push_back(Expression::parse(b[i], dim));
    s.domain = std::move(domain);
    s.validate();
    return s;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Klein metric plus its exact 1-form (the Funk metric of the unit ball).
CatalogueEntry funkEntry(int n) {
    std::string r2;
    for (int k = 1; k <= n; ++k) {
        if (k > 1) r2 += " + ";
        r2 += "x" + std::to_string(k) + "^2";
    }
    std::string den = "(1 - (" + r2 + "))";
    std::vector<std::vector<std::string>> a(n, std::vector<std::string>(n));
    std::vector<std::string> b(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            std::string xi = "x" + std::to_string(i + 1);
            std::string xj = "x" + std::to_string(j + 1);
            std::string numTerm = (i == j) ? den + " + " + xi + "*" + xj
                                           : xi + "*" + xj;
            a[i][j] = "(" + numTerm + ") / " + den + "^2";
            a[j][i] = a[i][j];
        }
        b[i] = "x" + std::to_string(i + 1) + " / " + den;
    }
    double half = (n == 2) ? 0.55 : 0.46; // keeps the box inside |x| <= 0.8
    std::vector<std::array<double, 2>> dom(n, {-half, half});
    CatalogueEntry e;
    e.name = "funk" + std::to_string(n);
    e.spec = makeSpec(e.name, n, a, b, dom);
    e.verdicts = {{"flat", true}, {"reversible", true}, {"square", true}};
    e.notes = "Funk metric of the unit ball via its Randers decomposition; "
              "projectively Ricci flat, S = (n+1) F / 2";
    return e;
}

CatalogueEntry flatEntry(double bval) {
    CatalogueEntry e;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "flat_b%02d", static_cast<int>(bval * 10 + 0.5));
    e.name = buf;
    e.spec = makeSpec(e.name, 2, {{"1", "0"}, {"0", "1"}}, {num(bval), "0"},
                      {{-1.0, 1.0}, {-1.0, 1.0}});
    e.verdicts = {{"flat", true},
                  {"isotropic", true, 0.0, false},
                  {"reversible", true},
                  {"square", true}};
    e.notes = "flat Randers, constant 1-form";
    return e;
}

std::vector<CatalogueEntry> buildCatalogue() {
    std::vector<CatalogueEntry> cat;
    cat.push_back(flatEntry(0.0));
    cat.push_back(flatEntry(0.3));
    cat.push_back(flatEntry(0.5));
    cat.push_back(funkEntry(2));
    cat.push_back(funkEntry(3));

    {
        CatalogueEntry e;
        e.name = "killing_rotation";
        e.spec = makeSpec(e.name, 2, {{"1", "0"}, {"0", "1"}}, {"-0.1*x2", "0.1*x1"},
                          {{-1.4, 1.4}, {-1.4, 1.4}});
        e.verdicts = {{"flat", false}, {"reversible", false}, {"square", false}};
        e.notes = "rotation Killing 1-form in flat space: r = 0, s != 0";
        cat.push_back(e);
    }
    {
        CatalogueEntry e;
        e.name = "sphere2";
        e.spec = makeSpec(e.name, 2, {{"1", "0"}, {"0", "sin(x1)^2"}}, {"0", "0"},
                          {{0.4, 2.7}, {-3.0, 3.0}});
        e.verdicts = {{"flat", false},
                      {"isotropic", true, 0.0, true},
                      {"reversible", true},
                      {"square", true}};
        e.notes = "unit 2-sphere chart, beta = 0; Ricci = metric, fitted c = 1";
        cat.push_back(e);
    }
    {
        CatalogueEntry e;
        e.name = "polar_flat";
        e.spec = makeSpec(e.name, 2, {{"1", "0"}, {"0", "x1^2"}}, {"0", "0"},
                          {{0.5, 2.0}, {-3.0, 3.0}});
        e.verdicts = {{"flat", true}, {"reversible", true}, {"square", true}};
        e.notes = "flat plane in polar coordinates; all curvature vanishes";
        cat.push_back(e);
    }
    return cat;
}

// Monomial strings of total degree in [dmin, dmax] over x1..xn, fixed order.
std::vector<std::string> monomials(int n, int dmin, int dmax) {
    std::vector<std::string> out;
    std::vector<int> exps(n, 0);
    auto emit = [&]() {
        int deg = 0;
        for (int e : exps) deg += e;
        if (deg < dmin || deg > dmax) return;
        std::string m;
        for (int k = 0; k < n; ++k) {
            if (exps[k] == 0) continue;
            if (!m.empty()) m += "*";
            m += "x" + std::to_string(k + 1);
            if (exps[k] > 1) m += "^" + std::to_string(exps[k]);
        }
        out.push_back(m.empty() ? "1" : m);
    };
    // counted enumeration in lexicographic exponent order
    int total = 1;
    for (int k = 0; k < n; ++k) total *= dmax + 1;
    for (int code = 0; code < total; ++code) {
        int c = code;
        for (int k = 0; k < n; ++k) {
            exps[k] = c % (dmax + 1);
            c /= dmax + 1;
        }
        emit();
    }
    return out;
}

std::string polynomial(const std::vector<std::string>& mons, SplitMix64& rng,
                       double amplitude) {
    std::string out;
    for (const auto& m : mons) {
        double c = rng.uniform(-amplitude, amplitude);
        if (!out.empty()) out += " + ";
        out += num(c) + "*" + m;
    }
    return out.empty() ? "0" : out;
}

} // namespace

const std::vector<CatalogueEntry>& catalogue() {
    static const std::vector<CatalogueEntry> cat = buildCatalogue();
    return cat;
}

const CatalogueEntry& catalogueEntry(const std::string& name) {
    for (const auto& e : catalogue())
        if (e.name == name) return e;
    throw Error("no catalogue entry named '" + name + "'");
}

MetricSpec randomRanders(std::uint64_t seed, int n, int degree, double amplitude) {
    if (n < 2 || n > 4) throw Error("randomRanders: n must be 2, 3 or 4");
    SplitMix64 rng(seed);
    auto monsA = monomials(n, 1, degree);
    auto monsB = monomials(n, 0, degree);
    std::vector<std::array<double, 2>> dom(n, {-1.0, 1.0});

    const int maxAttempts = 64;
    for (int attempt = 0; attempt < maxAttempts; ++attempt) {
        std::vector<std::vector<std::string>> a(n, std::vector<std::string>(n));
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                std::string base = (i == j) ? "1" : "0";
                std::string pert = (amplitude == 0.0) ? "" : polynomial(monsA, rng, amplitude);
                a[i][j] = pert.empty() ? base : base + " + " + pert;
                a[j][i] = a[i][j];
            }
        std::vector<std::string> b(n);
        for (int i = 0; i < n; ++i)
            b[i] = (amplitude == 0.0) ? "0" : polynomial(monsB, rng, amplitude);

        char name[64];
        std::snprintf(name, sizeof(name), "random_s%llu_n%d_d%d",
                      static_cast<unsigned long long>(seed), n, degree);
        MetricSpec spec = makeSpec(name, n, a, b, dom);

        // probe-grid admissibility, deterministic stream
        SplitMix64 probe(seed ^ 0xabcd1234u);
        bool ok = true;
        for (int p = 0; p < 1000 && ok; ++p) {
            std::vector<double> x(n);
            for (int k = 0; k < n; ++k) x[k] = probe.uniform(dom[k][0], dom[k][1]);
            if (!spec.admissible(x, 0.9)) ok = false;
        }
        if (ok) return spec;
    }
    throw AdmissibilityError("randomRanders: no admissible spec after 64 attempts; "
                             "reduce the amplitude");
}

} // namespace prc
