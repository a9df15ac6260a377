#include "prc/metric_spec.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "prc/sampling.hpp"

namespace prc {

using nlohmann::json;

bool cholesky(const Matrix<double>& a, Matrix<double>& L) {
    const std::size_t n = a.size();
    L.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double sum = a[i][j];
            for (std::size_t k = 0; k < j; ++k) sum -= L[i][k] * L[j][k];
            if (i == j) {
                if (sum <= 0.0) return false;
                L[i][i] = std::sqrt(sum);
            } else {
                L[i][j] = sum / L[j][j];
            }
        }
    }
    return true;
}

Matrix<double> MetricSpec::aValue(std::span<const double> x) const {
    Matrix<double> m(dim, std::vector<double>(dim));
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m[i][j] = a[i][j].evaluate(x);
    return m;
}

std::vector<double> MetricSpec::bValue(std::span<const double> x) const {
    std::vector<double> v(dim);
    for (int i = 0; i < dim; ++i) v[i] = b[i].evaluate(x);
    return v;
}

Matrix<Jet> MetricSpec::aJets(std::span<const Jet> coords) const {
    Matrix<Jet> m(dim, std::vector<Jet>(dim));
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m[i][j] = a[i][j].evaluate(coords);
    return m;
}

std::vector<Jet> MetricSpec::bJets(std::span<const Jet> coords) const {
    std::vector<Jet> v;
    v.reserve(dim);
    for (int i = 0; i < dim; ++i) v.push_back(b[i].evaluate(coords));
    return v;
}

double MetricSpec::bNorm(std::span<const double> x) const {
    auto am = aValue(x);
    auto bv = bValue(x);
    auto ai = matInverse(am);
    double b2 = 0.0;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) b2 += ai[i][j] * bv[i] * bv[j];
    return std::sqrt(std::max(0.0, b2));
}

bool MetricSpec::admissible(std::span<const double> x, double bMax) const {
    try {
        if (!isPositiveDefinite(aValue(x))) return false;
        return bNorm(x) < bMax;
    } catch (const Error&) {
        return false;
    }
}

void MetricSpec::validate() const {
    if (dim < 1 || dim > 4) throw Error("metric spec: dim must be in 1..4");
    if (static_cast<int>(a.size()) != dim) throw Error("metric spec: 'a' must be dim x dim");
    for (const auto& row : a)
        if (static_cast<int>(row.size()) != dim) throw Error("metric spec: 'a' must be dim x dim");
    if (static_cast<int>(b.size()) != dim) throw Error("metric spec: 'b' must have dim entries");
    if (static_cast<int>(domain.size()) != dim)
        throw Error("metric spec: 'domain' must have dim [lo, hi] pairs");
    for (const auto& d : domain)
        if (!(d[0] < d[1])) throw Error("metric spec: domain intervals must satisfy lo < hi");
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j)
            if (!a[i][j].structurallyEqual(a[j][i]))
                throw Error("metric spec: 'a' is not symmetric (entry " + std::to_string(i + 1) +
                            "," + std::to_string(j + 1) + ")");
}

MetricSpec MetricSpec::fromJsonText(const std::string& text) {
    json j = json::parse(text);
    MetricSpec spec;
    spec.name = j.value("name", std::string{});
    spec.dim = j.at("dim").get<int>();
    if (spec.dim < 1 || spec.dim > 4) throw Error("metric spec: dim must be in 1..4");
    for (const auto& row : j.at("a")) {
        std::vector<Expression> r;
        for (const auto& cell : row)
            r.push_back(Expression::parse(cell.get<std::string>(), spec.dim));
        spec.a.push_back(std::move(r));
    }
    for (const auto& cell : j.at("b"))
        spec.b.push_back(Expression::parse(cell.get<std::string>(), spec.dim));
    for (const auto& pair : j.at("domain"))
        spec.domain.push_back({pair.at(0).get<double>(), pair.at(1).get<double>()});
    spec.validate();
    return spec;
}

std::string MetricSpec::toJsonText() const {
    json j;
    if (!name.empty()) j["name"] = name;
    j["dim"] = dim;
    json ja = json::array();
    for (const auto& row : a) {
        json jr = json::array();
        for (const auto& e : row) jr.push_back(e.print());
        ja.push_back(jr);
    }
    j["a"] = ja;
    json jb = json::array();
    for (const auto& e : b) jb.push_back(e.print());
    j["b"] = jb;
    json jd = json::array();
    for (const auto& d : domain) jd.push_back(json::array({d[0], d[1]}));
    j["domain"] = jd;
    return j.dump(2) + "\n";
}

MetricSpec MetricSpec::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open spec file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return fromJsonText(ss.str());
    } catch (const json::exception& e) {
        throw Error("spec file '" + path + "': " + e.what());
    }
}

void MetricSpec::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw Error("cannot write spec file: " + path);
    out << toJsonText();
}

// ----------------------------------------------------------------- sampling

double SplitMix64::normal() {
    double u1 = uniform01();
    double u2 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

std::vector<double> samplePoint(const MetricSpec& spec, SplitMix64& rng, double bMax,
                                int maxTries) {
    std::vector<double> x(spec.dim);
    for (int t = 0; t < maxTries; ++t) {
        for (int i = 0; i < spec.dim; ++i) x[i] = rng.uniform(spec.domain[i][0], spec.domain[i][1]);
        if (spec.admissible(x, bMax)) return x;
    }
    throw AdmissibilityError("no admissible sample point found in the domain box");
}

std::vector<double> sampleAlphaUnitDirection(const MetricSpec& spec, std::span<const double> x,
                                             SplitMix64& rng) {
    const int n = spec.dim;
    auto am = spec.aValue(x);
    Matrix<double> L;
    if (!cholesky(am, L)) throw AdmissibilityError("metric not positive definite at sample point");
    // z standard normal; solve L^T y = z / |z|  =>  alpha(y) = 1
    std::vector<double> z(n);
    double norm2 = 0.0;
    do {
        norm2 = 0.0;
        for (int i = 0; i < n; ++i) {
            z[i] = rng.normal();
            norm2 += z[i] * z[i];
        }
    } while (norm2 < 1e-12);
    double norm = std::sqrt(norm2);
    for (auto& v : z) v /= norm;
    std::vector<double> y(n);
    for (int i = n - 1; i >= 0; --i) {
        double s = z[i];
        for (int k = i + 1; k < n; ++k) s -= L[k][i] * y[k];
        y[i] = s / L[i][i];
    }
    return y;
}

} // namespace prc
