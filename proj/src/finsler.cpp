#include "prc/finsler.hpp"

#include <cmath>

#include "prc/riemann.hpp"

namespace prc {

namespace {

struct Pipeline {
    const MetricSpec& spec;
    int n;
    LayoutPtr full;
    std::vector<Jet> X; // embedded x-coordinate jets (x-only, order 2)
    std::vector<Jet> Y; // y-coordinate jets
    Matrix<Jet> aEmb;
    std::vector<Jet> bEmb;
    Jet lnSigma; // x-only, embedded

    Pipeline(const MetricSpec& s, std::span<const double> x, std::span<const double> y,
             int extraYOrder)
        : spec(s), n(s.dim) {
        const int oy = 4 + extraYOrder;
        full = JetLayout::get(2 * n, n, 2, oy, oy);

        auto xLayout = JetLayout::get(n, n, 2, 0, 2);
        auto xjets = seedPoint(xLayout, x);
        auto aX = spec.aJets(xjets);
        auto bX = spec.bJets(xjets);
        if (!isPositiveDefinite(valueMatrix(aX)))
            throw AdmissibilityError("metric a_ij not positive definite at x");

        // b^2 and ln sigma_BH (Randers closed form) as x-only jets
        auto aInvX = matInverse(aX);
        Jet b2(xLayout, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) b2 += aInvX[i][j] * bX[i] * bX[j];
        if (b2.value() >= 1.0)
            throw AdmissibilityError("||beta||_alpha >= 1 at x");
        Jet lnSigmaX = 0.5 * (n + 1) * log(1.0 - b2) + 0.5 * log(matDet(aX));

        aEmb = Matrix<Jet>(n, std::vector<Jet>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) aEmb[i][j] = embedXOnly(aX[i][j], full);
        bEmb.reserve(n);
        for (int i = 0; i < n; ++i) bEmb.push_back(embedXOnly(bX[i], full));
        lnSigma = embedXOnly(lnSigmaX, full);

        X.reserve(n);
        Y.reserve(n);
        for (int i = 0; i < n; ++i) X.push_back(Jet::variable(full, i, x[i]));
        for (int i = 0; i < n; ++i) Y.push_back(Jet::variable(full, n + i, y[i]));
    }

    static Matrix<double> valueMatrix(const Matrix<Jet>& m) {
        Matrix<double> out(m.size(), std::vector<double>(m.size()));
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = 0; j < m.size(); ++j) out[i][j] = m[i][j].value();
        return out;
    }

    int yv(int i) const { return n + i; } // y-variable index in the full layout

    Jet alphaSquared() const {
        Jet a2(full, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a2 += aEmb[i][j] * Y[i] * Y[j];
        return a2;
    }

    Jet beta() const {
        Jet bj(full, 0.0);
        for (int i = 0; i < n; ++i) bj += bEmb[i] * Y[i];
        return bj;
    }
};

} // namespace

FinslerEval finslerEval(const MetricSpec& spec, std::span<const double> x,
                        std::span<const double> y, int extraYOrder) {
    Pipeline p(spec, x, y, extraYOrder);
    const int n = p.n;

    FinslerEval ev;
    ev.x.assign(x.begin(), x.end());
    ev.y.assign(y.begin(), y.end());
    ev.dim = n;

    Jet alpha2 = p.alphaSquared();
    if (alpha2.value() <= 0.0) throw AdmissibilityError("y = 0 (or alpha degenerate)");
    Jet F = sqrt(alpha2) + p.beta();
    if (F.value() <= 0.0) throw AdmissibilityError("F <= 0 at (x, y)");
    Jet F2 = F * F;
    ev.Fjet = F;
    ev.F2jet = F2;
    ev.F = F.value();

    // fundamental tensor g_ij = 1/2 d^2 F^2 / dy^i dy^j
    Matrix<Jet> g(n, std::vector<Jet>(n));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            g[i][j] = 0.5 * F2.deriv(p.yv(i)).deriv(p.yv(j));
            if (j != i) g[j][i] = g[i][j];
        }
    ev.g = Pipeline::valueMatrix(g);
    if (!isPositiveDefinite(ev.g))
        throw AdmissibilityError("fundamental tensor not positive definite at (x, y)");
    Matrix<Jet> ginv = matInverse(g);
    ev.ginv = Pipeline::valueMatrix(ginv);

    // spray G^i = 1/4 g^{il} { [F^2]_{x^k y^l} y^k - [F^2]_{x^l} }
    std::vector<Jet> G;
    G.reserve(n);
    {
        std::vector<Jet> B;
        B.reserve(n);
        for (int l = 0; l < n; ++l) {
            Jet dyl = F2.deriv(p.yv(l));
            Jet sum = -F2.deriv(l);
            for (int k = 0; k < n; ++k) sum += dyl.deriv(k) * p.Y[k];
            B.push_back(sum);
        }
        for (int i = 0; i < n; ++i) {
            Jet gi = ginv[i][0] * B[0];
            for (int l = 1; l < n; ++l) gi += ginv[i][l] * B[l];
            G.push_back(0.25 * gi);
        }
    }
    ev.Gjet = G;
    ev.spray.resize(n);
    for (int i = 0; i < n; ++i) ev.spray[i] = G[i].value();

    // Ricci = R^i_i with
    // R^i_k = 2 dG^i/dx^k - y^j d^2G^i/dx^j dy^k + 2 G^j d^2G^i/dy^j dy^k
    //         - dG^i/dy^j dG^j/dy^k
    {
        Jet ric = G[0] * 0.0; // zero in a suitably small layout
        for (int i = 0; i < n; ++i) {
            Jet dxi = G[i].deriv(i);
            ric += 2.0 * dxi;
            for (int j = 0; j < n; ++j) {
                ric -= p.Y[j] * G[i].deriv(j).deriv(p.yv(i));
                ric += 2.0 * G[j] * G[i].deriv(p.yv(j)).deriv(p.yv(i));
                ric -= G[i].deriv(p.yv(j)) * G[j].deriv(p.yv(i));
            }
        }
        ev.Ricjet = ric;
        ev.Ric = ric.value();
    }

    // S-curvature, local formula
    {
        Jet S = G[0].deriv(p.yv(0));
        for (int m = 1; m < n; ++m) S += G[m].deriv(p.yv(m));
        for (int m = 0; m < n; ++m) S -= p.Y[m] * p.lnSigma.deriv(m);
        ev.Sjet = S;
        ev.S = S.value();

        // horizontal derivative S_{|m} y^m = y^m dS/dx^m - 2 G^j dS/dy^j
        Jet shm = p.Y[0] * S.deriv(0);
        for (int m = 1; m < n; ++m) shm += p.Y[m] * S.deriv(m);
        for (int j = 0; j < n; ++j) shm -= 2.0 * G[j] * S.deriv(p.yv(j));
        ev.Shm = shm.value();

        double c1 = static_cast<double>(n - 1) / (n + 1);
        double c2 = static_cast<double>(n - 1) / ((n + 1) * (n + 1));
        ev.PRicjet = ev.Ricjet + c1 * shm + c2 * S * S;
        ev.PRic = ev.PRicjet.value();
    }

    // distortion and the tau-transport route to S
    {
        Jet detg = matDet(g);
        Jet tau = 0.5 * log(detg) - p.lnSigma;
        ev.tau = tau.value();
        double s2 = 0.0;
        for (int i = 0; i < n; ++i) {
            s2 += y[i] * tau.deriv(i).value();
            s2 -= 2.0 * ev.spray[i] * tau.deriv(p.yv(i)).value();
        }
        ev.STransport = s2;
    }

    ev.sigmaBH = bhVolumeDensity(spec, x);
    return ev;
}

Matrix<double> fundamentalTensor(const MetricSpec& spec, std::span<const double> x,
                                 std::span<const double> y) {
    return finslerEval(spec, x, y).g;
}

std::vector<double> spray(const MetricSpec& spec, std::span<const double> x,
                          std::span<const double> y) {
    return finslerEval(spec, x, y).spray;
}

Matrix<double> riemannCurvature(const MetricSpec& spec, std::span<const double> x,
                                std::span<const double> y) {
    FinslerEval ev = finslerEval(spec, x, y);
    const int n = ev.dim;
    const auto& G = ev.Gjet;
    auto yv = [n](int i) { return n + i; };
    Matrix<double> R(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            double v = 2.0 * G[i].deriv(k).value();
            for (int j = 0; j < n; ++j) {
                v -= y[j] * G[i].deriv(j).deriv(yv(k)).value();
                v += 2.0 * ev.spray[j] * G[i].deriv(yv(j)).deriv(yv(k)).value();
                v -= G[i].deriv(yv(j)).value() * G[j].deriv(yv(k)).value();
            }
            R[i][k] = v;
        }
    return R;
}

double ricci(const MetricSpec& spec, std::span<const double> x, std::span<const double> y) {
    return finslerEval(spec, x, y).Ric;
}

double distortion(const MetricSpec& spec, std::span<const double> x, std::span<const double> y) {
    return finslerEval(spec, x, y).tau;
}

double sCurvature(const MetricSpec& spec, std::span<const double> x, std::span<const double> y) {
    return finslerEval(spec, x, y).S;
}

double pricGeneric(const MetricSpec& spec, std::span<const double> x, std::span<const double> y) {
    return finslerEval(spec, x, y).PRic;
}

double bhVolumeDensity(const MetricSpec& spec, std::span<const double> x) {
    auto am = spec.aValue(x);
    if (!isPositiveDefinite(am))
        throw AdmissibilityError("metric a_ij not positive definite at x");
    double b = spec.bNorm(x);
    if (b >= 1.0) throw AdmissibilityError("||beta||_alpha >= 1 at x");
    double det = matDet(am);
    return std::pow(1.0 - b * b, 0.5 * (spec.dim + 1)) * std::sqrt(det);
}

double finslerF(const MetricSpec& spec, std::span<const double> x, std::span<const double> y) {
    auto am = spec.aValue(x);
    auto bv = spec.bValue(x);
    double a2 = 0.0, be = 0.0;
    for (int i = 0; i < spec.dim; ++i) {
        be += bv[i] * y[i];
        for (int j = 0; j < spec.dim; ++j) a2 += am[i][j] * y[i] * y[j];
    }
    return std::sqrt(a2) + be;
}

double bhVolumeDensityQuadrature(const MetricSpec& spec, std::span<const double> x, int panels) {
    if (spec.dim != 2) throw Error("bhVolumeDensityQuadrature: only n = 2 supported");
    if (panels % 2 != 0) ++panels;
    // area of {y : F(x,y) < 1} = int 1/2 r(theta)^2 dtheta, r = 1/F(x, unit dir)
    auto integrand = [&](double theta) {
        double dir[2] = {std::cos(theta), std::sin(theta)};
        double f = finslerF(spec, x, dir);
        return 0.5 / (f * f);
    };
    const double h = 2.0 * M_PI / panels;
    double sum = integrand(0.0) + integrand(2.0 * M_PI);
    for (int i = 1; i < panels; ++i) sum += (i % 2 ? 4.0 : 2.0) * integrand(i * h);
    double area = sum * h / 3.0;
    return M_PI / area;
}

Tensor3<double> verticalThirdDerivative(VerticalQuantity q, const MetricSpec& spec,
                                        std::span<const double> x, std::span<const double> y) {
    const int n = spec.dim;
    Jet quantity;
    if (q == VerticalQuantity::F || q == VerticalQuantity::F2) {
        // only vertical derivatives needed; a cheap y-only seeding suffices
        auto L = JetLayout::get(2 * n, n, 0, 3, 3);
        std::vector<Jet> Y;
        std::vector<Jet> coords;
        for (int i = 0; i < n; ++i) coords.push_back(Jet(L, x[i]));
        auto am = spec.aJets(coords);
        auto bm = spec.bJets(coords);
        for (int i = 0; i < n; ++i) Y.push_back(Jet::variable(L, n + i, y[i]));
        Jet a2(L, 0.0), be(L, 0.0);
        for (int i = 0; i < n; ++i) {
            be += bm[i] * Y[i];
            for (int j = 0; j < n; ++j) a2 += am[i][j] * Y[i] * Y[j];
        }
        Jet F = sqrt(a2) + be;
        quantity = (q == VerticalQuantity::F) ? F : F * F;
    } else {
        FinslerEval ev = finslerEval(spec, x, y, 3);
        quantity = (q == VerticalQuantity::Ric) ? ev.Ricjet : ev.PRicjet;
    }
    Tensor3<double> out(n, Matrix<double>(n, std::vector<double>(n, 0.0)));
    std::vector<int> mi(2 * n, 0);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
                std::fill(mi.begin(), mi.end(), 0);
                mi[n + j] += 1;
                mi[n + k] += 1;
                mi[n + l] += 1;
                out[j][k][l] = quantity.extract(mi);
            }
    return out;
}

} // namespace prc
