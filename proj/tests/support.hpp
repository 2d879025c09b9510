#pragma once

// Shared test fixtures, random generators, and independent oracles. Oracles
// deliberately avoid the library's algorithm paths: determinants by cofactor
// expansion, products by a plain triple loop, eigenvalues by bisecting the
// characteristic polynomial.

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "gvsm/gvsm.hpp"

namespace testsupport {

using gvsm::DenseMatrix;
using gvsm::DenseVector;

// --- reference corpus shared across suites -----------------------------------
// Three documents over six terms with hand-checked df/idf/weights,
// similarities (0.245 / 0.105 / 0.949 against "term1 term2"), and ranking.

inline std::vector<std::string> sample_corpus_lines() {
    return {
        "term5 term1 term1 term5",
        "term2 term3 term3 term6 term4",
        "term2 term1 term2",
    };
}

inline std::string sample_query() { return "term1 term2"; }

// --- random generators -------------------------------------------------------

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline DenseVector random_vector(std::mt19937_64& g, std::size_t n, double lo = -1.0, double hi = 1.0) {
    DenseVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = uniform(g, lo, hi);
    return v;
}

inline DenseVector random_unit_vector(std::mt19937_64& g, std::size_t n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    DenseVector v(n);
    double len = 0.0;
    while (len < 1e-3) {
        for (std::size_t i = 0; i < n; ++i) v[i] = gauss(g);
        len = gvsm::norm(v);
    }
    for (std::size_t i = 0; i < n; ++i) v[i] /= len;
    return v;
}

inline DenseVector random_nonzero_vector(std::mt19937_64& g, std::size_t n) {
    DenseVector v = random_vector(g, n);
    while (gvsm::norm(v) < 1e-3) v = random_vector(g, n);
    return v;
}

inline DenseMatrix random_matrix(std::mt19937_64& g, std::size_t rows, std::size_t cols) {
    DenseMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform(g, -1.0, 1.0);
    return m;
}

inline DenseMatrix random_symmetric(std::mt19937_64& g, std::size_t n) {
    const DenseMatrix b = random_matrix(g, n, n);
    DenseMatrix s(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) s(i, j) = b(i, j) + b(j, i);
    return s;
}

inline std::vector<std::size_t> random_permutation_array(std::mt19937_64& g, std::size_t n) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    std::shuffle(p.begin(), p.end(), g);
    return p;
}

/// Exactly orthogonal by construction: a product of 3..6 random Householder
/// reflections times a random coordinate permutation.
inline gvsm::GroupElement random_orthogonal(std::mt19937_64& g, std::size_t n) {
    DenseMatrix m = gvsm::make_permutation(random_permutation_array(g, n)).matrix();
    const int reflections = 3 + static_cast<int>(g() % 4);
    for (int k = 0; k < reflections; ++k)
        m = gvsm::mat_mul(gvsm::householder(random_unit_vector(g, n)), m);
    return gvsm::make_element(m, gvsm::GroupKind::orthogonal);
}

/// Diagonal factors drawn from ±[0.5, 2].
inline gvsm::GroupElement random_scaling(std::mt19937_64& g, std::size_t n) {
    DenseMatrix m(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double mag = uniform(g, 0.5, 2.0);
        m(i, i) = (g() % 2 == 0) ? mag : -mag;
    }
    return gvsm::make_element(m, gvsm::GroupKind::scaling);
}

/// Upper triangular with diagonal in ±[0.5, 2].
inline gvsm::GroupElement random_borel(std::mt19937_64& g, std::size_t n) {
    DenseMatrix m(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double mag = uniform(g, 0.5, 2.0);
        m(i, i) = (g() % 2 == 0) ? mag : -mag;
        for (std::size_t j = i + 1; j < n; ++j) m(i, j) = uniform(g, -1.0, 1.0);
    }
    return gvsm::make_element(m, gvsm::GroupKind::borel);
}

inline gvsm::GroupElement random_permutation_element(std::mt19937_64& g, std::size_t n) {
    return gvsm::make_permutation(random_permutation_array(g, n));
}

/// Well-conditioned invertible matrix: Q1 diag([0.5,2]) Q2 keeps the
/// condition number at or below 4.
inline gvsm::GroupElement random_general(std::mt19937_64& g, std::size_t n) {
    DenseMatrix d(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = uniform(g, 0.5, 2.0);
    const DenseMatrix m = gvsm::mat_mul(gvsm::mat_mul(random_orthogonal(g, n).matrix(), d),
                                        random_orthogonal(g, n).matrix());
    return gvsm::make_element(m, gvsm::GroupKind::general);
}

inline gvsm::GroupElement random_element(std::mt19937_64& g, gvsm::GroupKind kind, std::size_t n) {
    switch (kind) {
        case gvsm::GroupKind::orthogonal: return random_orthogonal(g, n);
        case gvsm::GroupKind::scaling: return random_scaling(g, n);
        case gvsm::GroupKind::borel: return random_borel(g, n);
        case gvsm::GroupKind::permutation: return random_permutation_element(g, n);
        case gvsm::GroupKind::general: return random_general(g, n);
    }
    return random_general(g, n);
}

// --- oracles -----------------------------------------------------------------

inline DenseMatrix naive_mat_mul(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix out(a.rows(), b.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            for (std::size_t k = 0; k < a.cols(); ++k) out(i, j) += a(i, k) * b(k, j);
    return out;
}

inline double cofactor_det(const DenseMatrix& a) {
    const std::size_t n = a.rows();
    if (n == 1) return a(0, 0);
    double det = 0.0;
    double sign = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        DenseMatrix minor(n - 1, n - 1, 0.0);
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor(r - 1, cc++) = a(r, c);
            }
        }
        det += sign * a(0, j) * cofactor_det(minor);
        sign = -sign;
    }
    return det;
}

/// Characteristic polynomial evaluated by cofactor expansion of (a - x I).
inline double charpoly(const DenseMatrix& a, double x) {
    DenseMatrix shifted = a;
    for (std::size_t i = 0; i < a.rows(); ++i) shifted(i, i) -= x;
    return cofactor_det(shifted);
}

/// Real eigenvalues of a symmetric matrix by scanning the characteristic
/// polynomial for sign changes over the Gershgorin interval and bisecting
/// each bracket. Suitable when the eigenvalues are simple.
inline std::vector<double> bisection_eigenvalues(const DenseMatrix& a) {
    const std::size_t n = a.rows();
    double radius = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += std::abs(a(i, j));
        radius = std::max(radius, row);
    }
    radius += 1.0;

    const int samples = 20000;
    std::vector<double> roots;
    double prev_x = -radius;
    double prev_p = charpoly(a, prev_x);
    for (int s = 1; s <= samples; ++s) {
        const double x = -radius + 2.0 * radius * s / samples;
        const double p = charpoly(a, x);
        if (p == 0.0) {
            roots.push_back(x);
        } else if (prev_p != 0.0 && ((prev_p < 0) != (p < 0))) {
            double lo = prev_x, hi = x, plo = prev_p;
            for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
                const double mid = (lo + hi) / 2.0;
                const double pm = charpoly(a, mid);
                if (pm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((plo < 0) != (pm < 0)) {
                    hi = mid;
                } else {
                    lo = mid;
                    plo = pm;
                }
            }
            roots.push_back((lo + hi) / 2.0);
        }
        prev_x = x;
        prev_p = p;
    }
    std::sort(roots.begin(), roots.end(), std::greater<double>());
    return roots;
}

}  // namespace testsupport
