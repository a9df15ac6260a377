#include "prc/riemann.hpp"

#include <cmath>

namespace prc {

namespace {

template <class T>
Matrix<T> makeMat(int n, const T& z) {
    return Matrix<T>(n, std::vector<T>(n, z));
}
template <class T>
Tensor3<T> makeT3(int n, const T& z) {
    return Tensor3<T>(n, makeMat(n, z));
}
template <class T>
Tensor4<T> makeT4(int n, const T& z) {
    return Tensor4<T>(n, makeT3(n, z));
}

struct XJetContext {
    int n;
    LayoutPtr layout; // x-only, order 2
    std::vector<Jet> coords;
    Matrix<Jet> a;     // a_ij jets
    Matrix<Jet> ainv;  // a^ij jets
    std::vector<Jet> b;
    Tensor3<Jet> gamma; // Gamma^i_jk as order-1 jets

    XJetContext(const MetricSpec& spec, std::span<const double> x) : n(spec.dim) {
        layout = JetLayout::get(n, n, 2, 0, 2);
        coords = seedPoint(layout, x);
        a = spec.aJets(coords);
        if (!isPositiveDefinite(valueMatrix(a)))
            throw AdmissibilityError("metric a_ij not positive definite at evaluation point");
        ainv = matInverse(a);
        b = spec.bJets(coords);
        buildChristoffel();
    }

    static Matrix<double> valueMatrix(const Matrix<Jet>& m) {
        Matrix<double> out(m.size(), std::vector<double>(m.size()));
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = 0; j < m.size(); ++j) out[i][j] = m[i][j].value();
        return out;
    }

    void buildChristoffel() {
        // Gamma^i_{jk} = 1/2 a^{il} (d_j a_lk + d_k a_lj - d_l a_jk), order-1 jets
        auto da = makeT3<Jet>(n, Jet()); // da[l][k][j] = d_j a_lk
        for (int l = 0; l < n; ++l)
            for (int k = 0; k < n; ++k)
                for (int j = 0; j < n; ++j) da[l][k][j] = a[l][k].deriv(j);
        auto L1 = JetLayout::get(n, n, 1, 0, 1);
        gamma = makeT3<Jet>(n, Jet(L1, 0.0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = j; k < n; ++k) {
                    Jet sum(L1, 0.0);
                    for (int l = 0; l < n; ++l)
                        sum += ainv[i][l] * (da[l][k][j] + da[l][j][k] - da[j][k][l]);
                    sum *= 0.5;
                    gamma[i][j][k] = sum;
                    gamma[i][k][j] = sum;
                }
    }
};

} // namespace

RiemannEval riemannEval(const MetricSpec& spec, std::span<const double> x) {
    XJetContext ctx(spec, x);
    const int n = ctx.n;

    RiemannEval re;
    re.x.assign(x.begin(), x.end());
    re.a = XJetContext::valueMatrix(ctx.a);
    re.ainv = XJetContext::valueMatrix(ctx.ainv);

    re.da = makeT3<double>(n, 0.0);
    re.dda = makeT4<double>(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                Jet dk = ctx.a[i][j].deriv(k);
                re.da[i][j][k] = dk.value();
                for (int l = 0; l < n; ++l) re.dda[i][j][k][l] = dk.deriv(l).value();
            }
        }

    re.gamma = makeT3<double>(n, 0.0);
    re.dgamma = makeT4<double>(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                re.gamma[i][j][k] = ctx.gamma[i][j][k].value();
                for (int l = 0; l < n; ++l)
                    re.dgamma[i][j][k][l] = ctx.gamma[i][j][k].deriv(l).value();
            }

    re.riem = makeT4<double>(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    double v = re.dgamma[i][j][l][k] - re.dgamma[i][j][k][l];
                    for (int m = 0; m < n; ++m)
                        v += re.gamma[i][k][m] * re.gamma[m][j][l] -
                             re.gamma[i][l][m] * re.gamma[m][j][k];
                    re.riem[i][j][k][l] = v;
                }

    re.ricci = makeMat<double>(n, 0.0);
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
            double v = 0.0;
            for (int i = 0; i < n; ++i) v += re.riem[i][j][i][l];
            re.ricci[j][l] = v;
        }

    Jet detJet = matDet(ctx.a);
    re.det = detJet.value();
    re.sqrtDet = std::sqrt(re.det);
    return re;
}

Tensor3<double> christoffel(const MetricSpec& spec, std::span<const double> x) {
    XJetContext ctx(spec, x);
    auto out = makeT3<double>(ctx.n, 0.0);
    for (int i = 0; i < ctx.n; ++i)
        for (int j = 0; j < ctx.n; ++j)
            for (int k = 0; k < ctx.n; ++k) out[i][j][k] = ctx.gamma[i][j][k].value();
    return out;
}

double alphaRicci(const RiemannEval& re, std::span<const double> y) {
    const int n = static_cast<int>(re.ricci.size());
    double v = 0.0;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) v += re.ricci[j][k] * y[j] * y[k];
    return v;
}

double alphaRicci(const MetricSpec& spec, std::span<const double> x, std::span<const double> y) {
    return alphaRicci(riemannEval(spec, x), y);
}

BetaEval betaSuite(const MetricSpec& spec, const RiemannEval& re) {
    XJetContext ctx(spec, re.x);
    const int n = ctx.n;

    BetaEval be;
    be.x = re.x;
    be.bLower.resize(n);
    for (int i = 0; i < n; ++i) be.bLower[i] = ctx.b[i].value();
    be.bUpper.assign(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) be.bUpper[i] += re.ainv[i][j] * be.bLower[j];

    // b^2 and rho as order-2 jets
    auto L2 = ctx.layout;
    Jet b2jet(L2, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b2jet += ctx.ainv[i][j] * ctx.b[i] * ctx.b[j];
    double b2 = b2jet.value();
    if (b2 >= 1.0)
        throw AdmissibilityError("||beta||_alpha >= 1 at evaluation point (b = " +
                                 std::to_string(std::sqrt(b2)) + ")");
    be.bNorm = std::sqrt(std::max(0.0, b2));

    Jet rhoJet = 0.5 * log(1.0 - b2jet);
    be.rho = rhoJet.value();
    be.rhoGrad.resize(n);
    std::vector<Jet> rhoD;
    rhoD.reserve(n);
    for (int i = 0; i < n; ++i) {
        rhoD.push_back(rhoJet.deriv(i));
        be.rhoGrad[i] = rhoD[i].value();
    }
    be.rhoHess = makeMat<double>(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double v = rhoD[i].deriv(j).value();
            for (int m = 0; m < n; ++m) v -= re.gamma[m][i][j] * be.rhoGrad[m];
            be.rhoHess[i][j] = v;
        }

    // b_{i;j} as order-1 jets
    auto L1 = JetLayout::get(n, n, 1, 0, 1);
    Matrix<Jet> bcovJet = makeMat<Jet>(n, Jet(L1, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Jet v = ctx.b[i].deriv(j);
            for (int m = 0; m < n; ++m) v -= ctx.gamma[m][i][j] * ctx.b[m].truncated(L1);
            bcovJet[i][j] = v;
        }

    be.bcov = makeMat<double>(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) be.bcov[i][j] = bcovJet[i][j].value();

    be.bcov2 = makeT3<double>(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double v = bcovJet[i][j].deriv(k).value();
                for (int m = 0; m < n; ++m)
                    v -= re.gamma[m][i][k] * be.bcov[m][j] + re.gamma[m][j][k] * be.bcov[i][m];
                be.bcov2[i][j][k] = v;
            }

    be.r = makeMat<double>(n, 0.0);
    be.s = makeMat<double>(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            be.r[i][j] = 0.5 * (be.bcov[i][j] + be.bcov[j][i]);
            be.s[i][j] = 0.5 * (be.bcov[i][j] - be.bcov[j][i]);
        }

    be.rUp = makeMat<double>(n, 0.0);
    be.sUp = makeMat<double>(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int m = 0; m < n; ++m) {
                be.rUp[i][j] += re.ainv[i][m] * be.r[m][j];
                be.sUp[i][j] += re.ainv[i][m] * be.s[m][j];
            }

    be.rLower.assign(n, 0.0);
    be.sLower.assign(n, 0.0);
    for (int j = 0; j < n; ++j)
        for (int m = 0; m < n; ++m) {
            be.rLower[j] += be.bUpper[m] * be.r[m][j];
            be.sLower[j] += be.bUpper[m] * be.s[m][j];
        }
    be.rScalar = 0.0;
    for (int j = 0; j < n; ++j) be.rScalar += be.bUpper[j] * be.rLower[j];

    be.q = makeMat<double>(n, 0.0);
    be.t = makeMat<double>(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int m = 0; m < n; ++m) {
                be.q[i][j] += be.r[i][m] * be.sUp[m][j];
                be.t[i][j] += be.s[i][m] * be.sUp[m][j];
            }
    be.qLower.assign(n, 0.0);
    be.tLower.assign(n, 0.0);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            be.qLower[j] += be.bUpper[i] * be.q[i][j];
            be.tLower[j] += be.bUpper[i] * be.t[i][j];
        }
    be.tTrace = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) be.tTrace += re.ainv[i][j] * be.t[i][j];

    // (s^m_j)_{;m} with s^m_j as order-1 jets
    Matrix<Jet> sUpJet = makeMat<Jet>(n, Jet(L1, 0.0));
    for (int m = 0; m < n; ++m)
        for (int j = 0; j < n; ++j) {
            Jet v(L1, 0.0);
            for (int k = 0; k < n; ++k)
                v += ctx.ainv[m][k].truncated(L1) *
                     (0.5 * (bcovJet[k][j] - bcovJet[j][k]));
            sUpJet[m][j] = v;
        }
    be.sDiv.assign(n, 0.0);
    for (int j = 0; j < n; ++j) {
        double v = 0.0;
        for (int m = 0; m < n; ++m) {
            v += sUpJet[m][j].deriv(m).value();
            for (int k = 0; k < n; ++k)
                v += re.gamma[m][m][k] * sUpJet[k][j].value() -
                     re.gamma[k][m][j] * sUpJet[m][k].value();
        }
        be.sDiv[j] = v;
    }
    return be;
}

BetaEval betaSuite(const MetricSpec& spec, std::span<const double> x) {
    return betaSuite(spec, riemannEval(spec, x));
}

std::vector<double> covariantDivergenceS(const MetricSpec& spec, std::span<const double> x) {
    return betaSuite(spec, x).sDiv;
}

Matrix<double> rhoHessian(const MetricSpec& spec, std::span<const double> x) {
    return betaSuite(spec, x).rhoHess;
}

} // namespace prc
