#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <utility>

#include "gvsm/groups.hpp"

namespace gvsm {

/// Tag of the standard ordered basis; functionals default to coordinates in
/// its dual basis.
inline constexpr const char* standard_basis_tag = "standard";

/// A linear functional stored as coordinates in the dual basis of the primal
/// ordered basis named by basis_tag, so pairing with basis vector j returns
/// coefficient j.
struct LinearFunctional {
    DenseVector coefficients;
    std::string basis_tag = standard_basis_tag;
};

/// Natural pairing <phi, v> = sum phi_i v_i, valid only when v's coordinates
/// are expressed in the functional's declared primal basis. A tag mismatch is
/// a hard error; silent rebasing would hide change-of-basis bookkeeping bugs.
inline double pairing(const LinearFunctional& phi, const DenseVector& v,
                      const std::string& vector_basis_tag = standard_basis_tag) {
    if (phi.basis_tag != vector_basis_tag)
        throw BasisMismatchError("functional is expressed over basis \"" + phi.basis_tag +
                                 "\" but the vector over basis \"" + vector_basis_tag + "\"");
    return inner_product(phi.coefficients, v);
}

/// A group element together with its dual-space action [rho(g^-1)]^T.
class DualRepresentation {
public:
    DualRepresentation(GroupElement primal, GroupElement dual)
        : primal_(std::move(primal)), dual_(std::move(dual)) {
        const DenseMatrix expected = inverse(primal_.matrix()).transpose();
        const double dev = max_abs_diff(dual_.matrix(), expected);
        if (dev > tol::invariance)
            throw PreconditionError("dual matrix deviates from [rho(g^-1)]^T by " + detail::fmt(dev));
    }

    const GroupElement& primal() const { return primal_; }
    const GroupElement& dual() const { return dual_; }

private:
    GroupElement primal_;
    GroupElement dual_;
};

/// Build the dual representation of g. The dual matrix keeps g's kind when it
/// still satisfies that kind's predicate (orthogonal, scaling and permutation
/// always do; a borel inverse-transpose is lower triangular and demotes to
/// general).
inline DualRepresentation dual_representation(const GroupElement& g) {
    const DenseMatrix dual_matrix = inverse(g.matrix()).transpose();
    return DualRepresentation(g, classify_element(dual_matrix, g.kind()));
}

/// Transform a functional by the dual action.
inline LinearFunctional act_functional(const DualRepresentation& dr, const LinearFunctional& phi) {
    return {mat_vec(dr.dual().matrix(), phi.coefficients), phi.basis_tag};
}

/// Evaluate both sides of <rho_hat(g) phi, rho(g) v> = <phi, v> and report the
/// absolute deviation, passing at tol::invariance.
inline DeviationReport verify_pairing_invariance(const GroupElement& g, const LinearFunctional& phi,
                                                 const DenseVector& v) {
    const DualRepresentation dr = dual_representation(g);
    const double before = pairing(phi, v);
    const double after = pairing(act_functional(dr, phi), act_vector(g, v), phi.basis_tag);
    DeviationReport report;
    report.max_deviation = std::abs(after - before);
    report.pass = report.max_deviation < tol::invariance;
    return report;
}

/// Pair a per-term cost functional with one document column. The frequency
/// scheme pairs against raw counts (cost arithmetic over term multiplicities);
/// other schemes pair against the stored weights.
inline double total_cost(const std::map<std::string, double>& costs, const TermDocumentMatrix& tdm,
                         std::size_t doc_id) {
    if (doc_id < 1 || doc_id > tdm.doc_count())
        throw DocRangeError("document id " + std::to_string(doc_id) + " is outside 1.." +
                            std::to_string(tdm.doc_count()));
    DenseVector coefficients(tdm.term_count(), 0.0);
    for (std::size_t i = 0; i < tdm.term_count(); ++i) {
        auto it = costs.find(tdm.vocabulary.term(i));
        if (it == costs.end())
            throw MissingCostError("no cost entry for term \"" + tdm.vocabulary.term(i) + "\"");
        coefficients[i] = it->second;
    }
    const LinearFunctional phi{std::move(coefficients), standard_basis_tag};
    return pairing(phi, tdm.weights.col(doc_id - 1));
}

}  // namespace gvsm
