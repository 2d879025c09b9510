#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

#include "gvsm/matrix.hpp"

namespace gvsm {

/// Result of a symmetric eigendecomposition. Eigenvalues are sorted
/// descending; column j of eigenvectors is the unit eigenvector for
/// eigenvalues[j], sign-fixed so the largest-magnitude component is positive.
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    DenseMatrix eigenvectors;
};

/// Transition matrix P together with the diagonal matrix P^-1 A P.
struct Diagonalization {
    DenseMatrix transition;
    DenseMatrix diagonal;
};

/// Determinant via LU with partial pivoting; the sign tracks row swaps.
inline double determinant(const DenseMatrix& a) {
    if (!a.square()) throw ShapeError("determinant requires a square matrix, got " + a.shape_string());
    const std::size_t n = a.rows();
    DenseMatrix lu = a;
    double det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(lu(i, k)) > std::abs(lu(pivot, k))) pivot = i;
        if (lu(pivot, k) == 0.0) return 0.0;
        if (pivot != k) {
            lu.swap_rows(pivot, k);
            det = -det;
        }
        det *= lu(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = lu(i, k) / lu(k, k);
            for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
        }
    }
    return det;
}

/// Gauss-Jordan inverse. Inputs with |det| <= tol::singular_det are rejected.
inline DenseMatrix inverse(const DenseMatrix& a) {
    if (!a.square()) throw ShapeError("inverse requires a square matrix, got " + a.shape_string());
    const double det = determinant(a);
    if (std::abs(det) <= tol::singular_det)
        throw SingularMatrixError("matrix is singular: |det| = " + detail::fmt(std::abs(det)));
    const std::size_t n = a.rows();
    DenseMatrix w = a;
    DenseMatrix inv = DenseMatrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(w(i, k)) > std::abs(w(pivot, k))) pivot = i;
        if (w(pivot, k) == 0.0)
            throw SingularMatrixError("matrix is numerically singular at pivot " + std::to_string(k));
        w.swap_rows(pivot, k);
        inv.swap_rows(pivot, k);
        const double p = w(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            w(k, j) /= p;
            inv(k, j) /= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            const double f = w(i, k);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                w(i, j) -= f * w(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

/// Number of pivots after row reduction with pivot tolerance tol::pivot.
inline std::size_t rank(const DenseMatrix& a) {
    DenseMatrix w = a;
    std::size_t r = 0;
    for (std::size_t col = 0; col < w.cols() && r < w.rows(); ++col) {
        std::size_t pivot = r;
        for (std::size_t i = r + 1; i < w.rows(); ++i)
            if (std::abs(w(i, col)) > std::abs(w(pivot, col))) pivot = i;
        if (std::abs(w(pivot, col)) <= tol::pivot) continue;
        w.swap_rows(pivot, r);
        for (std::size_t i = r + 1; i < w.rows(); ++i) {
            const double f = w(i, col) / w(r, col);
            for (std::size_t j = col; j < w.cols(); ++j) w(i, j) -= f * w(r, j);
        }
        ++r;
    }
    return r;
}

/// Reflection through the hyperplane orthogonal to the unit vector u: I - 2uu^T.
inline DenseMatrix householder(const DenseVector& u) {
    const double len = norm(u);
    if (std::abs(len - 1.0) > tol::unit_norm)
        throw PreconditionError("householder requires a unit vector, got ||u|| = " + detail::fmt(len));
    const std::size_t n = u.dim();
    DenseMatrix h = DenseMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h(i, j) -= 2.0 * u[i] * u[j];
    return h;
}

namespace detail {

/// Flip the column sign so its largest-magnitude component (first on ties)
/// is positive. Keeps eigenvector output deterministic.
inline void fix_column_sign(DenseMatrix& m, std::size_t col) {
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const double mag = std::abs(m(i, col));
        if (mag > best) {
            best = mag;
            arg = i;
        }
    }
    if (m(arg, col) < 0.0)
        for (std::size_t i = 0; i < m.rows(); ++i) m(i, col) = -m(i, col);
}

inline double max_offdiag(const DenseMatrix& m) {
    double v = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j) v = std::max(v, std::abs(m(i, j)));
    return v;
}

/// Orthogonal reduction to upper Hessenberg form (Householder similarity).
inline DenseMatrix hessenberg(const DenseMatrix& a) {
    const std::size_t n = a.rows();
    DenseMatrix h = a;
    if (n < 3) return h;
    std::vector<double> ort(n, 0.0);
    for (std::size_t m = 1; m + 1 < n; ++m) {
        double scale = 0.0;
        for (std::size_t i = m; i < n; ++i) scale += std::abs(h(i, m - 1));
        if (scale == 0.0) continue;
        double sq = 0.0;
        for (std::size_t i = n; i-- > m;) {
            ort[i] = h(i, m - 1) / scale;
            sq += ort[i] * ort[i];
        }
        double g = std::sqrt(sq);
        if (ort[m] > 0) g = -g;
        sq -= ort[m] * g;
        ort[m] -= g;
        // apply I - uu^T/sq from the left, then from the right
        for (std::size_t j = m; j < n; ++j) {
            double f = 0.0;
            for (std::size_t i = n; i-- > m;) f += ort[i] * h(i, j);
            f /= sq;
            for (std::size_t i = m; i < n; ++i) h(i, j) -= f * ort[i];
        }
        for (std::size_t i = 0; i < n; ++i) {
            double f = 0.0;
            for (std::size_t j = n; j-- > m;) f += ort[j] * h(i, j);
            f /= sq;
            for (std::size_t j = m; j < n; ++j) h(i, j) -= f * ort[j];
        }
        h(m, m - 1) = scale * g;
    }
    for (std::size_t i = 2; i < n; ++i)
        for (std::size_t j = 0; j + 1 < i; ++j) h(i, j) = 0.0;
    return h;
}

/// Eigenvalues of a real square matrix: Hessenberg form followed by implicit
/// double-shift QR with deflation. Returns (real parts, imaginary parts);
/// imaginary parts are exactly zero for real eigenvalues.
inline std::pair<std::vector<double>, std::vector<double>> real_eigenvalues(const DenseMatrix& a) {
    const int nn = static_cast<int>(a.rows());
    DenseMatrix h = hessenberg(a);
    std::vector<double> d(nn, 0.0), e(nn, 0.0);

    const int low = 0;
    const double eps = std::numeric_limits<double>::epsilon();
    double exshift = 0.0;
    double p = 0, q = 0, r = 0, s = 0, z = 0, w = 0, x = 0, y = 0;

    double hnorm = 0.0;
    for (int i = 0; i < nn; ++i)
        for (int j = std::max(i - 1, 0); j < nn; ++j) hnorm += std::abs(h(i, j));

    int n = nn - 1;
    int iter = 0;
    while (n >= low) {
        int l = n;
        while (l > low) {
            s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
            if (s == 0.0) s = hnorm;
            if (std::abs(h(l, l - 1)) < eps * s) break;
            --l;
        }

        if (l == n) {
            // one real root
            h(n, n) += exshift;
            d[n] = h(n, n);
            e[n] = 0.0;
            --n;
            iter = 0;
        } else if (l == n - 1) {
            // two roots from the trailing 2x2 block
            w = h(n, n - 1) * h(n - 1, n);
            p = (h(n - 1, n - 1) - h(n, n)) / 2.0;
            q = p * p + w;
            z = std::sqrt(std::abs(q));
            h(n, n) += exshift;
            h(n - 1, n - 1) += exshift;
            x = h(n, n);
            if (q >= 0) {
                z = (p >= 0) ? p + z : p - z;
                d[n - 1] = x + z;
                d[n] = d[n - 1];
                if (z != 0.0) d[n] = x - w / z;
                e[n - 1] = 0.0;
                e[n] = 0.0;
            } else {
                d[n - 1] = x + p;
                d[n] = x + p;
                e[n - 1] = z;
                e[n] = -z;
            }
            n -= 2;
            iter = 0;
        } else {
            // form shift
            x = h(n, n);
            y = 0.0;
            w = 0.0;
            if (l < n) {
                y = h(n - 1, n - 1);
                w = h(n, n - 1) * h(n - 1, n);
            }
            if (iter == 10 || iter == 20) {
                // exceptional shift
                exshift += x;
                for (int i = low; i <= n; ++i) h(i, i) -= x;
                s = std::abs(h(n, n - 1)) + std::abs(h(n - 1, n - 2));
                x = y = 0.75 * s;
                w = -0.4375 * s * s;
            }
            ++iter;
            if (iter > 50) throw Error("eigenvalue QR iteration did not converge");

            // look for two consecutive small subdiagonal elements
            int m = n - 2;
            while (m >= l) {
                z = h(m, m);
                r = x - z;
                s = y - z;
                p = (r * s - w) / h(m + 1, m) + h(m, m + 1);
                q = h(m + 1, m + 1) - z - r - s;
                r = h(m + 2, m + 1);
                s = std::abs(p) + std::abs(q) + std::abs(r);
                p /= s;
                q /= s;
                r /= s;
                if (m == l) break;
                if (std::abs(h(m, m - 1)) * (std::abs(q) + std::abs(r)) <
                    eps * (std::abs(p) *
                           (std::abs(h(m - 1, m - 1)) + std::abs(z) + std::abs(h(m + 1, m + 1)))))
                    break;
                --m;
            }
            for (int i = m + 2; i <= n; ++i) {
                h(i, i - 2) = 0.0;
                if (i > m + 2) h(i, i - 3) = 0.0;
            }

            // double QR sweep on rows l..n
            for (int k = m; k <= n - 1; ++k) {
                const bool notlast = (k != n - 1);
                if (k != m) {
                    p = h(k, k - 1);
                    q = h(k + 1, k - 1);
                    r = notlast ? h(k + 2, k - 1) : 0.0;
                    x = std::abs(p) + std::abs(q) + std::abs(r);
                    if (x == 0.0) continue;
                    p /= x;
                    q /= x;
                    r /= x;
                }
                s = std::sqrt(p * p + q * q + r * r);
                if (p < 0) s = -s;
                if (s != 0.0) {
                    if (k != m)
                        h(k, k - 1) = -s * x;
                    else if (l != m)
                        h(k, k - 1) = -h(k, k - 1);
                    p += s;
                    x = p / s;
                    y = q / s;
                    z = r / s;
                    q /= p;
                    r /= p;
                    for (int j = k; j < nn; ++j) {
                        double f = h(k, j) + q * h(k + 1, j);
                        if (notlast) {
                            f += r * h(k + 2, j);
                            h(k + 2, j) -= f * z;
                        }
                        h(k, j) -= f * x;
                        h(k + 1, j) -= f * y;
                    }
                    for (int i = 0; i <= std::min(n, k + 3); ++i) {
                        double f = x * h(i, k) + y * h(i, k + 1);
                        if (notlast) {
                            f += z * h(i, k + 2);
                            h(i, k + 2) -= f * r;
                        }
                        h(i, k) -= f;
                        h(i, k + 1) -= f * q;
                    }
                }
            }
        }
    }
    return {std::move(d), std::move(e)};
}

/// Unit basis of the null space of m, via reduced row echelon form with
/// pivot tolerance tol::pivot.
inline std::vector<DenseVector> null_space(DenseMatrix m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t pivot = r;
        for (std::size_t i = r + 1; i < rows; ++i)
            if (std::abs(m(i, col)) > std::abs(m(pivot, col))) pivot = i;
        if (std::abs(m(pivot, col)) <= tol::pivot) continue;
        m.swap_rows(pivot, r);
        const double p = m(r, col);
        for (std::size_t j = col; j < cols; ++j) m(r, j) /= p;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            const double f = m(i, col);
            if (f == 0.0) continue;
            for (std::size_t j = col; j < cols; ++j) m(i, j) -= f * m(r, j);
        }
        pivot_col.push_back(col);
        ++r;
    }
    std::vector<DenseVector> basis;
    for (std::size_t col = 0; col < cols; ++col) {
        if (std::find(pivot_col.begin(), pivot_col.end(), col) != pivot_col.end()) continue;
        DenseVector v(cols, 0.0);
        v[col] = 1.0;
        for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -m(i, col);
        const double len = norm(v);
        for (std::size_t i = 0; i < cols; ++i) v[i] /= len;
        basis.push_back(v);
    }
    return basis;
}

}  // namespace detail

/// Symmetric eigendecomposition by cyclic Jacobi rotations. Sweeps run until
/// every off-diagonal magnitude is below tol::jacobi_offdiag.
inline EigenDecomposition symmetric_eigen(const DenseMatrix& a) {
    if (!a.square()) throw ShapeError("symmetric_eigen requires a square matrix, got " + a.shape_string());
    const double asym = max_asymmetry(a);
    if (asym > tol::symmetry)
        throw PreconditionError("symmetric_eigen requires a symmetric matrix; max |a[i,j]-a[j,i]| = " +
                                detail::fmt(asym));
    const std::size_t n = a.rows();
    DenseMatrix m = a;
    DenseMatrix v = DenseMatrix::identity(n);

    bool converged = false;
    for (int sweep = 0; sweep < 100; ++sweep) {
        if (detail::max_offdiag(m) < tol::jacobi_offdiag) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(m(p, q)) < tol::jacobi_offdiag) continue;
                const double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double mkp = m(k, p), mkq = m(k, q);
                    m(k, p) = c * mkp - s * mkq;
                    m(k, q) = s * mkp + c * mkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double mpk = m(p, k), mqk = m(q, k);
                    m(p, k) = c * mpk - s * mqk;
                    m(q, k) = s * mpk + c * mqk;
                }
                m(p, q) = 0.0;
                m(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    if (!converged && detail::max_offdiag(m) >= tol::jacobi_offdiag)
        throw Error("Jacobi eigendecomposition did not converge in 100 sweeps");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return m(i, i) > m(j, j); });

    EigenDecomposition out{std::vector<double>(n), DenseMatrix(n, n)};
    for (std::size_t j = 0; j < n; ++j) {
        out.eigenvalues[j] = m(order[j], order[j]);
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, j) = v(i, order[j]);
        detail::fix_column_sign(out.eigenvectors, j);
    }
    return out;
}

/// Diagonalize over the reals. Symmetric inputs go through symmetric_eigen;
/// general inputs use Hessenberg-QR eigenvalues plus null-space eigenvectors.
/// Complex spectra and defective matrices are reported as errors.
inline Diagonalization diagonalize(const DenseMatrix& a) {
    if (!a.square()) throw ShapeError("diagonalize requires a square matrix, got " + a.shape_string());
    const std::size_t n = a.rows();

    if (max_asymmetry(a) <= tol::symmetry) {
        EigenDecomposition eig = symmetric_eigen(a);
        return {eig.eigenvectors, DenseMatrix::diagonal(eig.eigenvalues)};
    }

    auto [re, im] = detail::real_eigenvalues(a);
    for (std::size_t i = 0; i < re.size(); ++i) {
        if (im[i] != 0.0)
            throw NotDiagonalizableError(NotDiagonalizableError::Reason::complex_spectrum,
                                         "complex spectrum: eigenvalue " + detail::fmt(re[i]) +
                                             (im[i] > 0 ? " + " : " - ") + detail::fmt(std::abs(im[i])) +
                                             "i is not real");
    }
    std::sort(re.begin(), re.end(), std::greater<double>());

    double scale = 1.0;
    for (double x : re) scale = std::max(scale, std::abs(x));
    const double cluster_tol = 1e-8 * scale;

    DenseMatrix p(n, n, 0.0);
    std::size_t filled = 0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i + 1;
        while (j < n && std::abs(re[j] - re[i]) <= cluster_tol) ++j;
        const std::size_t multiplicity = j - i;
        double lambda = 0.0;
        for (std::size_t k = i; k < j; ++k) lambda += re[k];
        lambda /= static_cast<double>(multiplicity);

        DenseMatrix shifted = a;
        for (std::size_t k = 0; k < n; ++k) shifted(k, k) -= lambda;
        std::vector<DenseVector> basis = detail::null_space(shifted);
        if (basis.size() < multiplicity)
            throw NotDiagonalizableError(
                NotDiagonalizableError::Reason::defective,
                "defective: eigenvalue " + detail::fmt(lambda) + " has geometric multiplicity " +
                    std::to_string(basis.size()) + " < algebraic multiplicity " +
                    std::to_string(multiplicity));
        for (std::size_t k = 0; k < multiplicity; ++k) {
            p.set_col(filled, basis[k]);
            detail::fix_column_sign(p, filled);
            ++filled;
        }
        i = j;
    }

    if (rank(p) < n)
        throw NotDiagonalizableError(NotDiagonalizableError::Reason::defective,
                                     "defective: eigenvectors span rank " + std::to_string(rank(p)) +
                                         " < " + std::to_string(n));
    return {p, DenseMatrix::diagonal(re)};
}

/// Similarity transform S^-1 A S for an invertible transition matrix S.
inline DenseMatrix change_of_basis(const DenseMatrix& t_b, const DenseMatrix& s) {
    if (!t_b.square() || !s.square())
        throw ShapeError("change_of_basis requires square matrices, got " + t_b.shape_string() +
                         " and " + s.shape_string());
    if (t_b.rows() != s.rows())
        throw ShapeError("change_of_basis requires matching sizes, got " + t_b.shape_string() +
                         " and " + s.shape_string());
    return mat_mul(mat_mul(inverse(s), t_b), s);
}

}  // namespace gvsm
