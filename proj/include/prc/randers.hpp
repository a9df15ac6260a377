#pragma once
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "prc/finsler.hpp"
#include "prc/riemann.hpp"

namespace prc {

// All y-contractions of the beta-tensor suite at one (x, y).
struct RandersDirectionEval {
    std::vector<double> y;
    double alpha = 0.0, beta = 0.0, F = 0.0;
    double alphaRic = 0.0;
    double r00 = 0.0, r0 = 0.0, s0 = 0.0, t00 = 0.0;
    std::vector<double> ri0, si0;
    double rho0 = 0.0, rho00 = 0.0;
    double sDiv0 = 0.0;  // s^m_{0;m}
    double rhoS0 = 0.0;  // rho_m s^m_0
};

RandersDirectionEval randersDirectionEval(const RiemannEval& re, const BetaEval& be,
                                          std::span<const double> y);

// Closed-form projective Ricci curvature of a Randers metric:
//   PRic = aRic + 2 alpha s^m_{0;m} - 2 t_00 - alpha^2 t^m_m
//        + (n-1) { 2 alpha rho_m s^m_0 - rho_{0;0} + rho_0^2 }
// Validated term by term against the definitional spray pipeline; a
// commonly quoted variant carries an extra -(n-1) alpha s_0 (r_00 +
// 2 beta s_0) / F^2 block, which the definitional pipeline rules out.
double pricRanders(const RiemannEval& re, const BetaEval& be, std::span<const double> y);
double pricRanders(const MetricSpec& spec, std::span<const double> x, std::span<const double> y);

// Coefficients of F^2 (PRic - (n-1) c F^2) = e4 a^4 + e3 a^3 + e2 a^2 + e1 a + e0
// (global sign +1, calibrated once and frozen; see kEPolySign).
struct ECoefficients {
    double e0 = 0, e1 = 0, e2 = 0, e3 = 0, e4 = 0;
    double c = 0;
};
inline constexpr double kEPolySign = 1.0;
ECoefficients eCoefficients(const RiemannEval& re, const BetaEval& be, std::span<const double> y,
                            double c);
ECoefficients eCoefficients(const MetricSpec& spec, std::span<const double> x,
                            std::span<const double> y, double c);

// Odd-part coefficients N_1, N_2, N_3.  The odd part itself is simply
// PRic(y) - PRic(-y) = N3 a; the exact relation to the traditional
// three-coefficient display (numerically calibrated and frozen) is
//   F(y)^2 (PRic(y) - PRic(-y))
//     = N3 a^3 + N2 a^2 + N1 a + 2 (n-1) a s_0 (r_00 + 2 b s_0).
struct NCoefficients {
    double n1 = 0, n2 = 0, n3 = 0;
};
NCoefficients nCoefficients(const RiemannEval& re, const BetaEval& be, std::span<const double> y);
NCoefficients nCoefficients(const MetricSpec& spec, std::span<const double> x,
                            std::span<const double> y);

// ------------------------------------------------------------- verification

struct ConditionResult {
    std::string id;
    double maxResidual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerificationReport {
    std::string theorem;
    std::string specName;
    std::uint64_t seed = 0;
    double tolerance = 0.0;
    int samplesRequested = 0;
    int samplesUsed = 0;
    int skipped = 0;
    std::vector<std::string> skippedLog;
    std::vector<ConditionResult> conditions;
    bool pass = false;

    // per-sample records for the report file
    struct Sample {
        std::vector<double> x;
        std::vector<double> residuals; // one per condition, same order
        double fittedC = 0.0;
    };
    std::vector<Sample> samples;

    double maxResidual() const;
    std::string toJsonText() const;
};

struct VerifyOptions {
    int samples = 50;
    std::uint64_t seed = 1;
    double tolerance = 1e-7;
    bool fitC = false;   // estimate c(x) per point from condition (i)
    double cValue = 0.0; // used when fitC is false
};

VerificationReport verifyIsotropic(const MetricSpec& spec, const VerifyOptions& opts);
VerificationReport verifyFlat(const MetricSpec& spec, VerifyOptions opts);
VerificationReport verifyReversible(const MetricSpec& spec, const VerifyOptions& opts);
VerificationReport verifySquarePRic(const MetricSpec& spec, const VerifyOptions& opts);

// Isotropic-S fit: S / ((n+1) F) over a fan of directions at each point.
struct SCurvatureFit {
    double c = 0.0;              // mean candidate over all samples
    double spread = 0.0;         // max direction-spread of c at any point
    std::vector<double> cGrad;   // c_m = dc/dx^m at the last sample point
    double c0 = 0.0;             // c_m y^m at the last sample point
    bool isotropic = false;
    double maxAbsS = 0.0;
};
SCurvatureFit fitIsotropicS(const MetricSpec& spec, const VerifyOptions& opts);

// ------------------------------------------------------------- identities

struct IdentityResult {
    std::string identity;
    std::string specName;
    std::uint64_t seed = 0;
    int samples = 0;
    double maxResidual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string toJsonText() const;
};

// name in {eq7, epoly, npoly, homogeneity, sTwoPath}
IdentityResult runIdentity(const MetricSpec& spec, const std::string& name, int samples,
                           std::uint64_t seed, std::optional<double> tolerance = std::nullopt);

} // namespace prc
