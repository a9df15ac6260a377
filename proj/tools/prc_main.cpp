#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "prc/finsler.hpp"
#include "prc/randers.hpp"
#include "prc/riemann.hpp"
#include "prc/zoo.hpp"

namespace {

using namespace prc;

// a catalogue name or a path to a metric-spec file
MetricSpec resolveSpec(const std::string& ref) {
    for (const auto& e : catalogue())
        if (e.name == ref) return e.spec;
    return MetricSpec::load(ref);
}

std::vector<double> parseCsv(const std::string& text, int dim, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t pos = 0;
        out.push_back(std::stod(tok, &pos));
    }
    if (static_cast<int>(out.size()) != dim)
        throw Error(std::string(what) + ": expected " + std::to_string(dim) +
                    " comma-separated values, got " + std::to_string(out.size()));
    return out;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

void writeOut(const std::string& path, const std::string& text) {
    if (path.empty()) return;
    std::ofstream f(path);
    if (!f) throw Error("cannot write '" + path + "'");
    f << text;
}

void printMatrix(const Matrix<double>& m, const std::string& name) {
    for (std::size_t i = 0; i < m.size(); ++i) {
        std::cout << name << "[" << i << "] =";
        for (double v : m[i]) std::cout << " " << fmt(v);
        std::cout << "\n";
    }
}

int cmdEval(const std::string& specRef, const std::string& xs, const std::string& ys,
            const std::string& quantities) {
    MetricSpec spec = resolveSpec(specRef);
    auto x = parseCsv(xs, spec.dim, "--x");
    auto y = parseCsv(ys, spec.dim, "--y");
    if (!spec.admissible(x))
        throw AdmissibilityError("point is not admissible: ||beta|| = " +
                                 fmt(spec.bNorm(x)) + " (needs a > 0 and ||beta|| < 1)");

    std::stringstream ss(quantities);
    std::string q;
    FinslerEval ev;
    bool haveEv = false;
    auto fe = [&]() -> FinslerEval& {
        if (!haveEv) {
            ev = finslerEval(spec, x, y);
            haveEv = true;
        }
        return ev;
    };
    while (std::getline(ss, q, ',')) {
        if (q == "F") {
            std::cout << "F = " << fmt(finslerF(spec, x, y)) << "\n";
        } else if (q == "g") {
            printMatrix(fundamentalTensor(spec, x, y), "g");
        } else if (q == "G") {
            auto G = spray(spec, x, y);
            std::cout << "G =";
            for (double v : G) std::cout << " " << fmt(v);
            std::cout << "\n";
        } else if (q == "Ric") {
            std::cout << "Ric = " << fmt(fe().Ric) << "\n";
        } else if (q == "S") {
            std::cout << "S = " << fmt(fe().S) << "\n";
        } else if (q == "tau") {
            std::cout << "tau = " << fmt(fe().tau) << "\n";
        } else if (q == "sigmaBH") {
            std::cout << "sigmaBH = " << fmt(bhVolumeDensity(spec, x)) << "\n";
        } else if (q == "PRic") {
            std::cout << "PRic = " << fmt(fe().PRic) << "\n";
        } else if (q == "PRicRanders") {
            std::cout << "PRicRanders = " << fmt(pricRanders(spec, x, y)) << "\n";
        } else if (q == "beta") {
            RiemannEval re = riemannEval(spec, x);
            BetaEval be = betaSuite(spec, re);
            RandersDirectionEval d = randersDirectionEval(re, be, y);
            std::cout << "alpha = " << fmt(d.alpha) << "\nbeta = " << fmt(d.beta)
                      << "\nbNorm = " << fmt(be.bNorm) << "\nr00 = " << fmt(d.r00)
                      << "\ns0 = " << fmt(d.s0) << "\nt00 = " << fmt(d.t00)
                      << "\ntTrace = " << fmt(be.tTrace) << "\nrho = " << fmt(be.rho)
                      << "\nrho0 = " << fmt(d.rho0) << "\nrho00 = " << fmt(d.rho00)
                      << "\nsDiv0 = " << fmt(d.sDiv0) << "\n";
        } else {
            throw Error("unknown quantity '" + q + "'");
        }
    }
    return 0;
}

int cmdVerify(const std::string& specRef, const std::string& theorem, int samples,
              std::uint64_t seed, double tol, const std::string& cOpt,
              const std::string& outPath) {
    MetricSpec spec = resolveSpec(specRef);
    VerifyOptions opts;
    opts.samples = samples;
    opts.seed = seed;
    opts.tolerance = tol;
    if (cOpt == "fit") {
        opts.fitC = true;
    } else if (!cOpt.empty()) {
        opts.cValue = std::stod(cOpt);
    }

    VerificationReport rep;
    if (theorem == "isotropic")
        rep = verifyIsotropic(spec, opts);
    else if (theorem == "flat")
        rep = verifyFlat(spec, opts);
    else if (theorem == "reversible")
        rep = verifyReversible(spec, opts);
    else if (theorem == "square")
        rep = verifySquarePRic(spec, opts);
    else
        throw Error("unknown theorem '" + theorem + "'");

    std::cout << "verify " << theorem << " on " << spec.name << ": "
              << (rep.pass ? "pass" : "FAIL") << "\n";
    for (const auto& c : rep.conditions)
        std::cout << "  " << c.id << ": max residual " << fmt(c.maxResidual) << " (tol "
                  << fmt(c.tolerance) << ") " << (c.pass ? "pass" : "FAIL") << "\n";
    writeOut(outPath, rep.toJsonText());
    return rep.pass ? 0 : 1;
}

int cmdIdentity(const std::string& specRef, const std::string& name, int samples,
                std::uint64_t seed, double tol, const std::string& outPath) {
    MetricSpec spec = resolveSpec(specRef);
    std::optional<double> t;
    if (tol > 0) t = tol;
    IdentityResult res = runIdentity(spec, name, samples, seed, t);
    std::cout << "identity " << name << " on " << spec.name << ": max residual "
              << fmt(res.maxResidual) << " (tol " << fmt(res.tolerance) << ") "
              << (res.pass ? "pass" : "FAIL") << "\n";
    writeOut(outPath, res.toJsonText());
    return res.pass ? 0 : 1;
}

int cmdZoo(const std::string& exportDir, bool runAll, bool list) {
    if (list) {
        for (const auto& e : catalogue()) std::cout << e.name << "  (" << e.notes << ")\n";
        return 0;
    }
    if (!exportDir.empty()) {
        for (const auto& e : catalogue()) {
            std::string path = exportDir + "/" + e.name + ".json";
            e.spec.save(path);
            std::cout << "wrote " << path << "\n";
        }
        return 0;
    }
    if (!runAll) throw Error("zoo: pass --run-all, --export <dir> or --list");

    bool allOk = true;
    for (const auto& e : catalogue()) {
        for (const auto& v : e.verdicts) {
            VerifyOptions opts;
            opts.seed = 1;
            if (v.theorem == "square") {
                opts.samples = 4;
                opts.tolerance = 1e-9;
            } else {
                opts.samples = 20;
                opts.tolerance = 1e-7;
            }
            VerificationReport rep;
            if (v.theorem == "flat") {
                rep = verifyFlat(e.spec, opts);
            } else if (v.theorem == "isotropic") {
                opts.fitC = v.cFit;
                opts.cValue = v.cValue;
                rep = verifyIsotropic(e.spec, opts);
            } else if (v.theorem == "reversible") {
                rep = verifyReversible(e.spec, opts);
            } else {
                rep = verifySquarePRic(e.spec, opts);
            }
            bool ok = rep.pass == v.expectPass;
            allOk = allOk && ok;
            std::printf("%-18s %-10s expect %-4s got %-4s max_residual %.6e %s\n",
                        e.name.c_str(), v.theorem.c_str(), v.expectPass ? "pass" : "fail",
                        rep.pass ? "pass" : "fail", rep.maxResidual(),
                        ok ? "ok" : "MISMATCH");
        }
    }
    std::cout << (allOk ? "zoo: all verdicts reproduced" : "zoo: MISMATCHES") << "\n";
    return allOk ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Randers metric curvature toolkit"};
    app.require_subcommand(1);

    std::string specRef, xs, ys, quantities = "F";
    std::string theorem, identity, cOpt, outPath, exportDir;
    int samples = 50;
    std::uint64_t seed = 1;
    double tol = 0.0;
    bool runAll = false, list = false;

    auto* evalCmd = app.add_subcommand("eval", "evaluate quantities at a point");
    evalCmd->add_option("spec", specRef, "catalogue name or spec file")->required();
    evalCmd->add_option("--x", xs, "point, comma separated")->required();
    evalCmd->add_option("--y", ys, "direction, comma separated")->required();
    evalCmd->add_option("--q", quantities,
                        "comma list: F,g,G,Ric,S,tau,sigmaBH,PRic,PRicRanders,beta");

    auto* verifyCmd = app.add_subcommand("verify", "verify a characterizing condition");
    verifyCmd->add_option("theorem", theorem, "isotropic | flat | reversible | square")
        ->required();
    verifyCmd->add_option("spec", specRef, "catalogue name or spec file")->required();
    verifyCmd->add_option("--samples", samples);
    verifyCmd->add_option("--seed", seed);
    verifyCmd->add_option("--tol", tol);
    verifyCmd->add_option("--c", cOpt, "numeric value, or 'fit'");
    verifyCmd->add_option("--out", outPath, "report file (JSON)");

    auto* identCmd = app.add_subcommand("identity", "cross-check a numeric identity");
    identCmd->add_option("name", identity, "eq7 | epoly | npoly | homogeneity | sTwoPath")
        ->required();
    identCmd->add_option("spec", specRef, "catalogue name or spec file")->required();
    identCmd->add_option("--samples", samples);
    identCmd->add_option("--seed", seed);
    identCmd->add_option("--tol", tol);
    identCmd->add_option("--out", outPath, "report file (JSON)");

    auto* zooCmd = app.add_subcommand("zoo", "catalogue operations");
    zooCmd->add_option("--export", exportDir, "write catalogue specs to a directory");
    zooCmd->add_flag("--run-all", runAll, "run every entry's documented verdicts");
    zooCmd->add_flag("--list", list, "list catalogue entries");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*evalCmd) return cmdEval(specRef, xs, ys, quantities);
        if (*verifyCmd) {
            double t = tol > 0 ? tol : 1e-7;
            return cmdVerify(specRef, theorem, samples, seed, t, cOpt, outPath);
        }
        if (*identCmd) return cmdIdentity(specRef, identity, samples, seed, tol, outPath);
        if (*zooCmd) return cmdZoo(exportDir, runAll, list);
    } catch (const prc::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
