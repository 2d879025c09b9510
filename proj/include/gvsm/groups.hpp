#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gvsm/linalg.hpp"
#include "gvsm/vsm.hpp"

namespace gvsm {

enum class GroupKind { orthogonal, scaling, borel, permutation, general };

inline const char* to_string(GroupKind k) {
    switch (k) {
        case GroupKind::orthogonal: return "orthogonal";
        case GroupKind::scaling: return "scaling";
        case GroupKind::borel: return "borel";
        case GroupKind::permutation: return "permutation";
        case GroupKind::general: return "general";
    }
    return "general";
}

inline std::optional<GroupKind> parse_group_kind(const std::string& name) {
    if (name == "orthogonal") return GroupKind::orthogonal;
    if (name == "scaling") return GroupKind::scaling;
    if (name == "borel") return GroupKind::borel;
    if (name == "permutation") return GroupKind::permutation;
    if (name == "general") return GroupKind::general;
    return std::nullopt;
}

class GroupElement;
GroupElement make_element(const DenseMatrix& matrix, GroupKind claimed_kind);
GroupElement make_permutation(const std::vector<std::size_t>& perm);
GroupElement compose(const GroupElement& g, const GroupElement& h);
GroupElement inverse_element(const GroupElement& g);

/// An invertible matrix validated against the membership predicate of its
/// declared group. Immutable after construction.
class GroupElement {
public:
    GroupKind kind() const { return kind_; }
    const DenseMatrix& matrix() const { return matrix_; }
    std::size_t dim() const { return matrix_.rows(); }

    /// g(i) per coordinate axis; empty unless kind is permutation.
    const std::vector<std::size_t>& perm() const { return perm_; }

private:
    GroupElement(GroupKind kind, DenseMatrix matrix, std::vector<std::size_t> perm)
        : kind_(kind), matrix_(std::move(matrix)), perm_(std::move(perm)) {}

    friend GroupElement make_element(const DenseMatrix&, GroupKind);
    friend GroupElement make_permutation(const std::vector<std::size_t>&);
    friend GroupElement compose(const GroupElement&, const GroupElement&);
    friend GroupElement inverse_element(const GroupElement&);

    GroupKind kind_;
    DenseMatrix matrix_;
    std::vector<std::size_t> perm_;
};

namespace detail {

struct WorstEntry {
    std::size_t i = 0, j = 0;
    double value = 0.0;
};

inline std::string entry_string(const WorstEntry& w) {
    return "[" + std::to_string(w.i) + "," + std::to_string(w.j) + "] = " + fmt(w.value);
}

/// Extract g(i) from a permutation matrix whose column i carries its 1 in row
/// g(i). Throws ClassificationError if the matrix is not a permutation matrix.
inline std::vector<std::size_t> permutation_of_matrix(const DenseMatrix& m) {
    const std::size_t n = m.rows();
    std::vector<std::size_t> perm(n, n);
    std::vector<bool> row_used(n, false);
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t ones = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double x = m(i, j);
            if (std::abs(x - 1.0) <= tol::structural_zero) {
                perm[j] = i;
                ++ones;
            } else if (std::abs(x) > tol::structural_zero) {
                throw ClassificationError("permutation predicate violated: entry " +
                                          entry_string({i, j, x}) + " is neither 0 nor 1");
            }
        }
        if (ones != 1)
            throw ClassificationError("permutation predicate violated: column " + std::to_string(j) +
                                      " has " + std::to_string(ones) + " unit entries");
        if (row_used[perm[j]])
            throw ClassificationError("permutation predicate violated: row " + std::to_string(perm[j]) +
                                      " has more than one unit entry");
        row_used[perm[j]] = true;
    }
    return perm;
}

}  // namespace detail

/// Validate a matrix against a claimed group kind and tag it. Invertibility
/// (|det| > tol::singular_det) is required for every kind; structural zero
/// patterns are checked at tol::structural_zero so that validated elements
/// satisfy their kind's exact predicates downstream, and the orthogonality
/// residual is checked at tol::orthogonality.
inline GroupElement make_element(const DenseMatrix& matrix, GroupKind claimed_kind) {
    if (!matrix.square())
        throw ShapeError("group elements must be square, got " + matrix.shape_string());
    const double det = determinant(matrix);
    if (std::abs(det) <= tol::singular_det)
        throw SingularMatrixError("matrix is singular: |det| = " + detail::fmt(std::abs(det)));

    const std::size_t n = matrix.rows();
    std::vector<std::size_t> perm;
    switch (claimed_kind) {
        case GroupKind::orthogonal: {
            const DenseMatrix gram = mat_mul(matrix.transpose(), matrix);
            detail::WorstEntry worst;
            double worst_dev = -1.0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    const double dev = std::abs(gram(i, j) - (i == j ? 1.0 : 0.0));
                    if (dev > worst_dev) {
                        worst_dev = dev;
                        worst = {i, j, gram(i, j)};
                    }
                }
            if (worst_dev > tol::orthogonality)
                throw ClassificationError("orthogonality predicate violated: (M^T M)" +
                                          detail::entry_string(worst));
            break;
        }
        case GroupKind::scaling: {
            detail::WorstEntry worst;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    if (i == j) continue;
                    if (std::abs(matrix(i, j)) > std::abs(worst.value)) worst = {i, j, matrix(i, j)};
                }
            if (std::abs(worst.value) > tol::structural_zero)
                throw ClassificationError("scaling predicate violated: off-diagonal entry " +
                                          detail::entry_string(worst));
            for (std::size_t i = 0; i < n; ++i)
                if (std::abs(matrix(i, i)) <= tol::singular_det)
                    throw ClassificationError("scaling predicate violated: zero diagonal entry " +
                                              detail::entry_string({i, i, matrix(i, i)}));
            break;
        }
        case GroupKind::borel: {
            detail::WorstEntry worst;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < i; ++j)
                    if (std::abs(matrix(i, j)) > std::abs(worst.value)) worst = {i, j, matrix(i, j)};
            if (std::abs(worst.value) > tol::structural_zero)
                throw ClassificationError("borel predicate violated: sub-diagonal entry " +
                                          detail::entry_string(worst));
            for (std::size_t i = 0; i < n; ++i)
                if (std::abs(matrix(i, i)) <= tol::singular_det)
                    throw ClassificationError("borel predicate violated: zero diagonal entry " +
                                              detail::entry_string({i, i, matrix(i, i)}));
            break;
        }
        case GroupKind::permutation:
            perm = detail::permutation_of_matrix(matrix);
            break;
        case GroupKind::general:
            break;
    }
    return GroupElement(claimed_kind, matrix, std::move(perm));
}

/// Tag a matrix with the preferred kind when it validates, falling back to
/// general otherwise. Invertibility failures still throw.
inline GroupElement classify_element(const DenseMatrix& matrix, GroupKind preferred) {
    try {
        return make_element(matrix, preferred);
    } catch (const ClassificationError&) {
        return make_element(matrix, GroupKind::general);
    }
}

/// Matrix of g in S_n acting by g(sum c_i b_i) = sum c_i b_{g(i)}: column i
/// carries its 1 in row g(i).
inline GroupElement make_permutation(const std::vector<std::size_t>& perm) {
    const std::size_t n = perm.size();
    if (n == 0) throw InvalidPermutationError("permutation must have positive length");
    std::vector<bool> seen(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (perm[i] >= n)
            throw InvalidPermutationError("permutation image " + std::to_string(perm[i]) +
                                          " is out of range for n = " + std::to_string(n));
        if (seen[perm[i]])
            throw InvalidPermutationError("permutation image " + std::to_string(perm[i]) +
                                          " appears more than once");
        seen[perm[i]] = true;
    }
    DenseMatrix m(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) m(perm[i], i) = 1.0;
    return GroupElement(GroupKind::permutation, std::move(m), perm);
}

/// Apply g to an information-object vector by matrix multiplication.
inline DenseVector act_vector(const GroupElement& g, const DenseVector& v) {
    return mat_vec(g.matrix(), v);
}

/// Apply g to every document column of the index. The vocabulary and df are
/// unchanged; the scheme is flagged transformed and idf kept for reference.
inline TermDocumentMatrix act_tdm(const GroupElement& g, const TermDocumentMatrix& tdm) {
    if (g.dim() != tdm.term_count())
        throw ShapeError("transform dimension " + std::to_string(g.dim()) +
                         " does not match vocabulary size " + std::to_string(tdm.term_count()));
    TermDocumentMatrix out = tdm;
    out.weights = mat_mul(g.matrix(), tdm.weights);
    out.transformed = true;
    return out;
}

/// Group product g.h (apply h first). The result keeps the common kind when
/// both operands share it (the listed groups are closed under products) and
/// demotes to general otherwise.
inline GroupElement compose(const GroupElement& g, const GroupElement& h) {
    if (g.dim() != h.dim())
        throw ShapeError("cannot compose elements of dimension " + std::to_string(g.dim()) + " and " +
                         std::to_string(h.dim()));
    const GroupKind kind = g.kind() == h.kind() ? g.kind() : GroupKind::general;
    std::vector<std::size_t> perm;
    if (kind == GroupKind::permutation) {
        perm.resize(g.dim());
        for (std::size_t i = 0; i < g.dim(); ++i) perm[i] = g.perm()[h.perm()[i]];
    }
    return GroupElement(kind, mat_mul(g.matrix(), h.matrix()), std::move(perm));
}

/// Group inverse; each supported subgroup is inverse-closed, so the kind is
/// preserved. Orthogonal, scaling, and permutation inverses are formed
/// directly (transpose / reciprocal diagonal / inverse permutation).
inline GroupElement inverse_element(const GroupElement& g) {
    const std::size_t n = g.dim();
    switch (g.kind()) {
        case GroupKind::orthogonal:
            return GroupElement(GroupKind::orthogonal, g.matrix().transpose(), {});
        case GroupKind::scaling: {
            DenseMatrix m(n, n, 0.0);
            for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0 / g.matrix()(i, i);
            return GroupElement(GroupKind::scaling, std::move(m), {});
        }
        case GroupKind::permutation: {
            std::vector<std::size_t> inv(n);
            for (std::size_t i = 0; i < n; ++i) inv[g.perm()[i]] = i;
            DenseMatrix m(n, n, 0.0);
            for (std::size_t i = 0; i < n; ++i) m(inv[i], i) = 1.0;
            return GroupElement(GroupKind::permutation, std::move(m), std::move(inv));
        }
        case GroupKind::borel:
        case GroupKind::general:
            return GroupElement(g.kind(), inverse(g.matrix()), {});
    }
    return GroupElement(GroupKind::general, inverse(g.matrix()), {});
}

/// The ascending chain {0} c R^1 c ... c R^n spanned by standard basis
/// prefixes.
struct StandardFlag {
    std::size_t dim;

    /// Membership of v in V_level (span of e_1..e_level): coordinates past
    /// level must vanish within tol::flag.
    bool contains(std::size_t level, const DenseVector& v) const {
        for (std::size_t i = level; i < v.dim(); ++i)
            if (std::abs(v[i]) > tol::flag) return false;
        return true;
    }
};

/// True iff g V_i = V_i for every prefix subspace of the standard complete
/// flag; equivalently the matrix is upper triangular within tol::flag.
inline bool stabilizes_flag(const GroupElement& g) {
    const StandardFlag flag{g.dim()};
    for (std::size_t j = 0; j < g.dim(); ++j)
        if (!flag.contains(j + 1, g.matrix().col(j))) return false;
    return true;
}

/// Deviation measurement for an invariance claim; pass means the maximum
/// deviation stayed below tol::invariance.
struct DeviationReport {
    double max_deviation = 0.0;
    bool pass = true;
};

/// Measure |sim(gu, gv) - sim(u, v)| over all pairs of the given vectors.
inline DeviationReport preserves_cosine(const GroupElement& g, const std::vector<DenseVector>& vectors) {
    if (vectors.size() < 2)
        throw PreconditionError("cosine preservation needs at least 2 vectors, got " +
                                std::to_string(vectors.size()));
    for (const DenseVector& v : vectors)
        if (norm(v) == 0.0) throw ZeroVectorError("cosine preservation is undefined for a zero vector");
    DeviationReport report;
    std::vector<DenseVector> images;
    images.reserve(vectors.size());
    for (const DenseVector& v : vectors) images.push_back(act_vector(g, v));
    for (std::size_t i = 0; i < vectors.size(); ++i)
        for (std::size_t j = i + 1; j < vectors.size(); ++j) {
            const double before = cosine_similarity(vectors[i], vectors[j]);
            const double after = cosine_similarity(images[i], images[j]);
            report.max_deviation = std::max(report.max_deviation, std::abs(after - before));
        }
    report.pass = report.max_deviation < tol::invariance;
    return report;
}

enum class AxisClass { dilation, contraction, reflection, identity, other_negative, other };

inline const char* to_string(AxisClass c) {
    switch (c) {
        case AxisClass::dilation: return "dilation";
        case AxisClass::contraction: return "contraction";
        case AxisClass::reflection: return "reflection";
        case AxisClass::identity: return "identity";
        case AxisClass::other_negative: return "other-negative";
        case AxisClass::other: return "other";
    }
    return "other";
}

/// Per-axis scaling factors with their classes. Thresholds are exact:
/// s > 1 dilation, 0 < s < 1 contraction, s = -1 reflection, s = 1 identity.
struct ScalingProfile {
    std::vector<double> factors;
    std::vector<AxisClass> classes;
};

inline ScalingProfile scaling_profile(const GroupElement& g) {
    if (g.kind() != GroupKind::scaling)
        throw KindError("scaling_profile requires a scaling element, got kind " +
                        std::string(to_string(g.kind())));
    ScalingProfile profile;
    for (std::size_t i = 0; i < g.dim(); ++i) {
        const double s = g.matrix()(i, i);
        profile.factors.push_back(s);
        AxisClass c = AxisClass::other;
        if (s > 1.0) c = AxisClass::dilation;
        else if (s == 1.0) c = AxisClass::identity;
        else if (s > 0.0) c = AxisClass::contraction;
        else if (s == -1.0) c = AxisClass::reflection;
        else if (s < 0.0) c = AxisClass::other_negative;
        profile.classes.push_back(c);
    }
    return profile;
}

/// Outcome of testing whether a matrix represents a diagonalizable scaling
/// linear operator: true iff it has a full real eigenbasis.
struct DiagonalizableVerdict {
    bool diagonalizable = false;
    std::optional<Diagonalization> diagonalization;
    std::string reason;  // set when not diagonalizable
};

inline DiagonalizableVerdict is_diagonalizable_scaling(const DenseMatrix& matrix) {
    if (!matrix.square())
        throw ShapeError("diagonalizability requires a square matrix, got " + matrix.shape_string());
    const double det = determinant(matrix);
    if (std::abs(det) <= tol::singular_det)
        throw SingularMatrixError("matrix is singular: |det| = " + detail::fmt(std::abs(det)));
    DiagonalizableVerdict verdict;
    try {
        verdict.diagonalization = diagonalize(matrix);
        verdict.diagonalizable = true;
    } catch (const NotDiagonalizableError& e) {
        verdict.diagonalizable = false;
        verdict.reason = e.what();
    }
    return verdict;
}

}  // namespace gvsm
