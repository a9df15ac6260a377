#pragma once
#include <cmath>
#include <vector>

#include "prc/errors.hpp"
#include "prc/jet.hpp"

namespace prc {

// Dense n x n helpers for n <= 4, templated so entries can be doubles or
// jets (the fundamental tensor must be inverted over jet scalars).

template <class T>
using Matrix = std::vector<std::vector<T>>;
template <class T>
using Tensor3 = std::vector<std::vector<std::vector<T>>>;
template <class T>
using Tensor4 = std::vector<std::vector<std::vector<std::vector<T>>>>;

inline double scalarValue(double v) { return v; }
inline double scalarValue(const Jet& j) { return j.value(); }

inline double zeroLike(double) { return 0.0; }
inline Jet zeroLike(const Jet& j) { return Jet(j.layout(), 0.0); }

template <class T>
Matrix<T> matIdentityLike(const Matrix<T>& a) {
    const std::size_t n = a.size();
    Matrix<T> id(n, std::vector<T>(n, zeroLike(a[0][0])));
    for (std::size_t i = 0; i < n; ++i) id[i][i] += 1.0;
    return id;
}

// Gauss-Jordan with partial pivoting on the value part.
template <class T>
Matrix<T> matInverse(Matrix<T> a) {
    const std::size_t n = a.size();
    Matrix<T> inv = matIdentityLike(a);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(scalarValue(a[r][col])) > std::abs(scalarValue(a[piv][col]))) piv = r;
        if (scalarValue(a[piv][col]) == 0.0) throw Error("matInverse: singular matrix");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        T d = a[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] = a[col][j] / d;
            inv[col][j] = inv[col][j] / d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            T f = a[r][col];
            if (scalarValue(f) == 0.0) {
                bool allZero = true;
                // jets can have zero value but nonzero derivatives
                if constexpr (!std::is_same_v<T, double>) {
                    for (double c : f.coefficients())
                        if (c != 0.0) allZero = false;
                }
                if (allZero) continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] = a[r][j] - f * a[col][j];
                inv[r][j] = inv[r][j] - f * inv[col][j];
            }
        }
    }
    return inv;
}

// Determinant via LU with partial pivoting on the value part.
template <class T>
T matDet(Matrix<T> a) {
    const std::size_t n = a.size();
    T det = zeroLike(a[0][0]);
    det += 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(scalarValue(a[r][col])) > std::abs(scalarValue(a[piv][col]))) piv = r;
        if (scalarValue(a[piv][col]) == 0.0) throw Error("matDet: singular matrix");
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = det * (-1.0);
        }
        det = det * a[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            T f = a[r][col] / a[col][col];
            for (std::size_t j = col; j < n; ++j) a[r][j] = a[r][j] - f * a[col][j];
        }
    }
    return det;
}

// Cholesky a = L L^T; returns false if a is not positive definite.
bool cholesky(const Matrix<double>& a, Matrix<double>& L);

inline bool isPositiveDefinite(const Matrix<double>& a) {
    Matrix<double> L;
    return cholesky(a, L);
}

} // namespace prc
