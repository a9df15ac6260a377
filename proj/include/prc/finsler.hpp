#pragma once
#include <span>
#include <vector>

#include "prc/metric_spec.hpp"

namespace prc {

// Definition-level Finsler pipeline, fully via jets and independent of the
// Randers closed forms: F, fundamental tensor, spray, Riemann/Ricci
// curvature, Busemann-Hausdorff density, distortion, S-curvature and the
// generic projective Ricci curvature.
//
// Jet order budget: the spray needs one x- and one y-derivative of F^2, the
// Ricci trace needs up to (1 x, 1 y) and (0 x, 2 y) derivatives of the spray
// (so fourth vertical derivatives of F^2 through g^{-1}), and the horizontal
// S-derivative needs one more of each on S.  Seeds therefore carry x-order 2
// and y-order 4 (+3 more y-orders when third vertical derivatives of Ric or
// PRic are requested).
struct FinslerEval {
    std::vector<double> x, y;
    int dim = 0;

    double F = 0.0;
    Matrix<double> g, ginv;
    std::vector<double> spray; // G^i values
    double Ric = 0.0;
    double sigmaBH = 0.0;
    double tau = 0.0;
    double S = 0.0;          // local formula
    double STransport = 0.0; // S from tau-transport (independent route)
    double Shm = 0.0;        // S_{|m} y^m
    double PRic = 0.0;

    // jets retained for vertical-derivative work
    Jet Fjet, F2jet, Sjet, Ricjet, PRicjet;
    std::vector<Jet> Gjet;
};

// extraYOrder > 0 raises the seed y-order (needed for third vertical
// derivatives of Ric / PRic).
FinslerEval finslerEval(const MetricSpec& spec, std::span<const double> x,
                        std::span<const double> y, int extraYOrder = 0);

// Individual operations (each runs the pipeline as far as needed).
Matrix<double> fundamentalTensor(const MetricSpec& spec, std::span<const double> x,
                                 std::span<const double> y);
std::vector<double> spray(const MetricSpec& spec, std::span<const double> x,
                          std::span<const double> y);
Matrix<double> riemannCurvature(const MetricSpec& spec, std::span<const double> x,
                                std::span<const double> y); // R^i_k
double ricci(const MetricSpec& spec, std::span<const double> x, std::span<const double> y);
double distortion(const MetricSpec& spec, std::span<const double> x, std::span<const double> y);
double sCurvature(const MetricSpec& spec, std::span<const double> x, std::span<const double> y);
double pricGeneric(const MetricSpec& spec, std::span<const double> x, std::span<const double> y);

// Closed-form Randers BH density (1 - b^2)^{(n+1)/2} sqrt(det a).
double bhVolumeDensity(const MetricSpec& spec, std::span<const double> x);
// n = 2 oracle: sigma from adaptive Simpson quadrature of the unit-ball area.
double bhVolumeDensityQuadrature(const MetricSpec& spec, std::span<const double> x,
                                 int panels = 2048);

// Plain value of F (no jets).
double finslerF(const MetricSpec& spec, std::span<const double> x, std::span<const double> y);

enum class VerticalQuantity { F, F2, Ric, PRic };

// Third vertical derivative d^3 Q / dy^j dy^k dy^l, symmetric rank-3 array.
Tensor3<double> verticalThirdDerivative(VerticalQuantity q, const MetricSpec& spec,
                                        std::span<const double> x, std::span<const double> y);

} // namespace prc
