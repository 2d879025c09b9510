#pragma once

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "gvsm/errors.hpp"

namespace gvsm {

/// Tolerances used across the library. Structural checks are tighter than
/// data-driven golden comparisons.
namespace tol {
inline constexpr double singular_det = 1e-12;   // |det| at or below this is singular
inline constexpr double pivot = 1e-9;           // row-reduction pivot threshold
inline constexpr double symmetry = 1e-9;        // max |a[i,j]-a[j,i]| for symmetric input
inline constexpr double jacobi_offdiag = 1e-12; // Jacobi sweep convergence
inline constexpr double unit_norm = 1e-9;       // | ||u|| - 1 | for reflector axes
inline constexpr double orthogonality = 1e-9;   // max |(M^T M - I)[i,j]|
inline constexpr double structural_zero = 1e-12;// zero-pattern checks (scaling/borel/permutation)
inline constexpr double flag = 1e-12;           // subspace membership for the standard flag
inline constexpr double invariance = 1e-9;      // pass threshold for invariance reports
}  // namespace tol

namespace detail {

/// Decimal rendering at 9 significant digits, shared by writers and messages.
inline std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

inline void require_all_finite(const std::vector<double>& entries, const char* what) {
    for (double x : entries) {
        if (!std::isfinite(x)) throw PreconditionError(std::string(what) + " has a non-finite entry");
    }
}

}  // namespace detail

/// Dense real vector of fixed positive dimension. Entries are finite.
class DenseVector {
public:
    explicit DenseVector(std::size_t dim, double fill = 0.0) : entries_(dim, fill) {
        if (dim == 0) throw PreconditionError("vector dimension must be positive");
        if (!std::isfinite(fill)) throw PreconditionError("vector fill value must be finite");
    }

    DenseVector(std::initializer_list<double> entries)
        : DenseVector(std::vector<double>(entries)) {}

    explicit DenseVector(std::vector<double> entries) : entries_(std::move(entries)) {
        if (entries_.empty()) throw PreconditionError("vector dimension must be positive");
        detail::require_all_finite(entries_, "vector");
    }

    std::size_t dim() const { return entries_.size(); }
    double operator[](std::size_t i) const { return entries_[i]; }
    double& operator[](std::size_t i) { return entries_[i]; }
    const std::vector<double>& entries() const { return entries_; }

private:
    std::vector<double> entries_;
};

/// Dense real matrix, row-major. Dimensions are positive and entries finite.
class DenseMatrix {
public:
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {
        if (rows == 0 || cols == 0) throw PreconditionError("matrix dimensions must be positive");
        if (!std::isfinite(fill)) throw PreconditionError("matrix fill value must be finite");
    }

    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> row_major)
        : rows_(rows), cols_(cols), data_(std::move(row_major)) {
        if (rows == 0 || cols == 0) throw PreconditionError("matrix dimensions must be positive");
        if (data_.size() != rows * cols)
            throw ShapeError("matrix data has " + std::to_string(data_.size()) + " entries, expected " +
                             std::to_string(rows * cols));
        detail::require_all_finite(data_, "matrix");
    }

    DenseMatrix(std::initializer_list<std::initializer_list<double>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        if (rows_ == 0 || cols_ == 0) throw PreconditionError("matrix dimensions must be positive");
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw ShapeError("matrix rows have inconsistent lengths");
            data_.insert(data_.end(), r.begin(), r.end());
        }
        detail::require_all_finite(data_, "matrix");
    }

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n, 0.0);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static DenseMatrix diagonal(const std::vector<double>& d) {
        DenseMatrix m(d.size(), d.size(), 0.0);
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const std::vector<double>& data() const { return data_; }

    DenseVector col(std::size_t j) const {
        DenseVector v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    DenseVector row(std::size_t i) const {
        DenseVector v(cols_);
        for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
        return v;
    }

    void set_col(std::size_t j, const DenseVector& v) {
        if (v.dim() != rows_) throw ShapeError("column has dimension " + std::to_string(v.dim()) +
                                               ", matrix has " + std::to_string(rows_) + " rows");
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
    }

    DenseMatrix transpose() const {
        DenseMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    std::string shape_string() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Standard matrix product; throws ShapeError naming both shapes on mismatch.
inline DenseMatrix mat_mul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows())
        throw ShapeError("cannot multiply " + a.shape_string() + " by " + b.shape_string());
    DenseMatrix out(a.rows(), b.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            double sum = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) sum += a(i, k) * b(k, j);
            out(i, j) = sum;
        }
    return out;
}

/// Matrix-vector product, treating v as a column.
inline DenseVector mat_vec(const DenseMatrix& a, const DenseVector& v) {
    if (a.cols() != v.dim())
        throw ShapeError("cannot apply " + a.shape_string() + " to a vector of dimension " +
                         std::to_string(v.dim()));
    DenseVector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double sum = 0.0;
        for (std::size_t k = 0; k < a.cols(); ++k) sum += a(i, k) * v[k];
        out[i] = sum;
    }
    return out;
}

inline DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) { return mat_mul(a, b); }
inline DenseVector operator*(const DenseMatrix& a, const DenseVector& v) { return mat_vec(a, v); }

/// Sum of coordinatewise products.
inline double inner_product(const DenseVector& u, const DenseVector& v) {
    if (u.dim() != v.dim())
        throw ShapeError("inner product of dimension " + std::to_string(u.dim()) + " with dimension " +
                         std::to_string(v.dim()));
    double sum = 0.0;
    for (std::size_t k = 0; k < u.dim(); ++k) sum += u[k] * v[k];
    return sum;
}

/// Euclidean norm.
inline double norm(const DenseVector& v) {
    double sum = 0.0;
    for (std::size_t k = 0; k < v.dim(); ++k) sum += v[k] * v[k];
    return std::sqrt(sum);
}

inline double max_abs(const DenseMatrix& a) {
    double m = 0.0;
    for (double x : a.data()) m = std::max(m, std::abs(x));
    return m;
}

inline double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeError("cannot compare " + a.shape_string() + " with " + b.shape_string());
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

inline double max_abs_diff(const DenseVector& a, const DenseVector& b) {
    if (a.dim() != b.dim())
        throw ShapeError("cannot compare vectors of dimension " + std::to_string(a.dim()) + " and " +
                         std::to_string(b.dim()));
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

/// Largest |a[i,j] - a[j,i]|; zero for symmetric matrices.
inline double max_asymmetry(const DenseMatrix& a) {
    if (!a.square()) throw ShapeError("symmetry is defined for square matrices, got " + a.shape_string());
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - a(j, i)));
    return m;
}

}  // namespace gvsm
