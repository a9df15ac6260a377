#pragma once
#include <array>
#include <span>
#include <string>
#include <vector>

#include "prc/expr.hpp"
#include "prc/linalg.hpp"

namespace prc {

// A Randers metric F = alpha + beta given by analytic coefficient
// expressions a_ij(x) (symmetric, positive definite) and b_i(x), with a
// rectangular sampling domain.
struct MetricSpec {
    std::string name;
    int dim = 0;
    std::vector<std::vector<Expression>> a; // dim x dim, a[i][j] == a[j][i] structurally
    std::vector<Expression> b;              // dim
    std::vector<std::array<double, 2>> domain;

    // value-level evaluation
    Matrix<double> aValue(std::span<const double> x) const;
    std::vector<double> bValue(std::span<const double> x) const;

    // jet-level evaluation (coords are coordinate jets for x1..xn)
    Matrix<Jet> aJets(std::span<const Jet> coords) const;
    std::vector<Jet> bJets(std::span<const Jet> coords) const;

    // ||beta_x||_alpha at x
    double bNorm(std::span<const double> x) const;

    // a(x) positive definite and b(x) < bMax
    bool admissible(std::span<const double> x, double bMax = 1.0) const;

    void validate() const; // dimensions, symmetry

    // JSON metric-spec file round trip
    static MetricSpec fromJsonText(const std::string& text);
    std::string toJsonText() const;
    static MetricSpec load(const std::string& path);
    void save(const std::string& path) const;
};

} // namespace prc
