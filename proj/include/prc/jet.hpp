#pragma once
#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "prc/errors.hpp"

namespace prc {

// Truncated multivariate Taylor arithmetic ("jets").
//
// Variables are split into two groups: indices [0, nx) are base-point
// coordinates x^i, indices [nx, nvars) are direction coordinates y^i.
// A layout stores every monomial x^dx y^dy with
//     |dx| <= orderX,  |dy| <= orderY,  |dx| + |dy| <= orderTotal.
// Coefficients are Taylor-normalized: c_m = (d^m f) / m!.  extract()
// restores the raw partial derivative.
//
// Taking a partial derivative shifts the coefficient table and returns a
// jet in the shrunken layout (one order less in the variable's group and
// in total); within its layout every stored coefficient remains exact.
// Binary operations on jets with different layouts truncate both operands
// to the componentwise-minimum layout first.

inline constexpr int kMaxVars = 8;
inline constexpr int kMaxOrder = 8;

using Exponents = std::array<std::uint8_t, kMaxVars>;

class JetLayout {
public:
    int nvars;
    int nx; // variables [0, nx) form the x-group
    int orderX;
    int orderY;
    int orderTotal;

    std::vector<Exponents> monomials; // index -> exponents
    std::vector<double> factorials;   // m! per monomial

    struct Triple {
        std::uint32_t a, b, dst;
    };
    std::vector<Triple> mulTriples;

    // Cached layout lookup; layouts are immutable and shared.
    static std::shared_ptr<const JetLayout> get(int nvars, int nx, int orderX,
                                                int orderY, int orderTotal);

    int indexOf(const Exponents& e) const; // -1 if not present
    bool contains(const Exponents& e) const { return indexOf(e) >= 0; }
    std::size_t size() const { return monomials.size(); }

private:
    std::vector<std::int32_t> lookup_; // dense table keyed by mixed radix
    std::uint64_t radixKey(const Exponents& e) const;
    friend struct JetLayoutBuilder;
};

using LayoutPtr = std::shared_ptr<const JetLayout>;

class Jet {
public:
    Jet() = default;
    // Constant jet.
    Jet(LayoutPtr layout, double value);
    // Coordinate jet: value + the linear monomial of variable `var`.
    static Jet variable(LayoutPtr layout, int var, double value);

    const LayoutPtr& layout() const { return layout_; }
    double value() const { return c_.empty() ? 0.0 : c_[0]; }
    std::span<const double> coefficients() const { return c_; }
    double& coeff(std::size_t i) { return c_[i]; }
    double coeff(std::size_t i) const { return c_[i]; }

    // Raw partial derivative for the given multi-index (factorial-corrected).
    double extract(std::span<const int> multiIndex) const;

    // Coefficient-shift derivative; result lives in the shrunken layout.
    Jet deriv(int var) const;

    // Truncate to a (coarser or equal) layout over the same variables.
    Jet truncated(const LayoutPtr& target) const;

    Jet operator-() const;
    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator+=(double s);
    Jet& operator-=(double s);
    Jet& operator*=(double s);
    Jet& operator/=(double s);

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator+(Jet a, double s) { return a += s; }
    friend Jet operator+(double s, Jet a) { return a += s; }
    friend Jet operator-(Jet a, double s) { return a -= s; }
    friend Jet operator-(double s, const Jet& a) { return -a + s; }
    friend Jet operator*(Jet a, double s) { return a *= s; }
    friend Jet operator*(double s, Jet a) { return a *= s; }
    friend Jet operator/(Jet a, double s) { return a /= s; }
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator/(const Jet& a, const Jet& b);
    friend Jet operator/(double s, const Jet& b);

    // Compose a univariate Taylor series (coefficients at this jet's value)
    // onto the jet.  Used by all transcendental functions.
    Jet composed(std::span<const double> univariateCoeffs) const;

private:
    LayoutPtr layout_;
    std::vector<double> c_;
    void alignWith(Jet& other); // truncate *this and other to common layout
    friend Jet alignedBinary(const Jet& a, const Jet& b, bool multiply);
};

// Transcendental / power functions (exact Taylor composition).
Jet sqrt(const Jet& a);
Jet log(const Jet& a);
Jet exp(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet tanh(const Jet& a);
Jet powi(const Jet& a, long n);
Jet pow(const Jet& a, double r); // non-integer exponent: requires value > 0

// Coordinate jets for all layout variables at the given point.
std::vector<Jet> seedPoint(const LayoutPtr& layout, std::span<const double> point);

// Embed a jet over x-only variables (layout nvars == nx) into a full layout
// whose x-group matches; valid when full->orderX <= source total order.
Jet embedXOnly(const Jet& xjet, const LayoutPtr& full);

} // namespace prc
