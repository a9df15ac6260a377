#pragma once
#include <span>
#include <vector>

#include "prc/metric_spec.hpp"

namespace prc {

// Everything the base Riemannian metric alpha contributes at a point x.
// Index conventions:
//   gamma[i][j][k]    = Gamma^i_{jk}          (symmetric in j,k)
//   dgamma[i][j][k][l]= d Gamma^i_{jk} / dx^l
//   riem[i][j][k][l]  = R^i_{jkl} = d_k Gamma^i_{jl} - d_l Gamma^i_{jk}
//                       + Gamma^i_{km} Gamma^m_{jl} - Gamma^i_{lm} Gamma^m_{jk}
//   ricci[j][l]       = R^i_{jil}
// This sign convention gives Ricci = metric on the unit 2-sphere.
struct RiemannEval {
    std::vector<double> x;
    Matrix<double> a, ainv;
    Tensor3<double> da;   // da[i][j][k] = d a_ij / dx^k
    Tensor4<double> dda;  // dda[i][j][k][l] = d^2 a_ij / dx^k dx^l
    Tensor3<double> gamma;
    Tensor4<double> dgamma;
    Tensor4<double> riem;
    Matrix<double> ricci;
    double det = 0.0;
    double sqrtDet = 0.0;
};

// The 1-form beta and its full tensor suite at x.
struct BetaEval {
    std::vector<double> x;
    std::vector<double> bLower; // b_i
    std::vector<double> bUpper; // b^i
    double bNorm = 0.0;         // ||beta||_alpha

    Matrix<double> bcov;    // b_{i;j}
    Tensor3<double> bcov2;  // b_{i;j;k}
    Matrix<double> r, s;    // r_ij, s_ij
    Matrix<double> rUp, sUp; // r^i_j, s^i_j
    std::vector<double> rLower, sLower; // r_j, s_j
    double rScalar = 0.0;   // r = r_ij b^i b^j
    Matrix<double> q, t;    // q_ij, t_ij
    std::vector<double> qLower, tLower; // q_j, t_j
    double tTrace = 0.0;    // t^m_m

    double rho = 0.0;             // ln sqrt(1 - b^2)
    std::vector<double> rhoGrad;  // rho_i
    Matrix<double> rhoHess;       // rho_{i;j}
    std::vector<double> sDiv;     // (s^m_j)_{;m}
};

RiemannEval riemannEval(const MetricSpec& spec, std::span<const double> x);

// Gamma^i_{jk} only (subset of riemannEval).
Tensor3<double> christoffel(const MetricSpec& spec, std::span<const double> x);

// alpha-Ricci quadratic form R_jk y^j y^k.
double alphaRicci(const RiemannEval& re, std::span<const double> y);
double alphaRicci(const MetricSpec& spec, std::span<const double> x, std::span<const double> y);

BetaEval betaSuite(const MetricSpec& spec, const RiemannEval& re);
BetaEval betaSuite(const MetricSpec& spec, std::span<const double> x);

// Covector j -> (s^m_j)_{;m}; contraction with y^j gives s^m_{0;m}.
std::vector<double> covariantDivergenceS(const MetricSpec& spec, std::span<const double> x);

// Covariant Hessian rho_{i;j} of rho = ln sqrt(1 - b^2).
Matrix<double> rhoHessian(const MetricSpec& spec, std::span<const double> x);

} // namespace prc
