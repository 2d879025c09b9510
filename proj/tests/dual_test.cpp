#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gvsm/dual.hpp"
#include "gtest_util.hpp"
#include "support.hpp"

using namespace gvsm;
using testsupport::expect_throw_containing;

namespace {

TermDocumentMatrix sample_frequency() { return frequency_weights(ingest(testsupport::sample_corpus_lines())); }

std::map<std::string, double> sample_costs() {
    return {{"term1", 3}, {"term2", 4}, {"term3", 5}, {"term4", 6}, {"term5", 6}, {"term6", 7}};
}

}  // namespace

TEST(Pairing, CostOfSecondDocument) {
    // phi and the count vector of D2, both in term1..term6 coordinates
    const LinearFunctional phi{DenseVector{3, 4, 5, 6, 6, 7}};
    const DenseVector d2{0, 1, 2, 1, 0, 1};
    EXPECT_DOUBLE_EQ(pairing(phi, d2), 27.0);
}

TEST(Pairing, DualBasisIsDeltaOnBasisVectors) {
    const std::size_t n = 5;
    for (std::size_t i = 0; i < n; ++i) {
        DenseVector coeff(n, 0.0);
        coeff[i] = 1.0;
        const LinearFunctional vhat{coeff};
        for (std::size_t j = 0; j < n; ++j) {
            DenseVector e(n, 0.0);
            e[j] = 1.0;
            EXPECT_DOUBLE_EQ(pairing(vhat, e), i == j ? 1.0 : 0.0);
        }
    }
}

TEST(Pairing, BilinearInBothSlots) {
    auto g = testsupport::rng(301);
    const DenseVector a = testsupport::random_vector(g, 6);
    const DenseVector b = testsupport::random_vector(g, 6);
    const DenseVector v = testsupport::random_vector(g, 6);
    const double k = testsupport::uniform(g, -2.0, 2.0);
    DenseVector ka_plus_b(6);
    for (std::size_t i = 0; i < 6; ++i) ka_plus_b[i] = k * a[i] + b[i];
    EXPECT_NEAR(pairing(LinearFunctional{ka_plus_b}, v),
                k * pairing(LinearFunctional{a}, v) + pairing(LinearFunctional{b}, v), 1e-9);
    EXPECT_NEAR(pairing(LinearFunctional{v}, ka_plus_b),
                k * pairing(LinearFunctional{v}, a) + pairing(LinearFunctional{v}, b), 1e-9);
}

TEST(Pairing, DimensionMismatch) {
    EXPECT_THROW(pairing(LinearFunctional{DenseVector{1, 2}}, DenseVector{1, 2, 3}), ShapeError);
}

TEST(Pairing, BasisTagMismatchIsAHardError) {
    const LinearFunctional phi{DenseVector{1, 2}, "rotated"};
    expect_throw_containing<BasisMismatchError>([&] { pairing(phi, DenseVector{1, 1}); }, "rotated");
    EXPECT_DOUBLE_EQ(pairing(phi, DenseVector{1, 1}, "rotated"), 3.0);
}

TEST(DualRepresentation, ScalingInverseTranspose) {
    const GroupElement g = make_element(DenseMatrix::diagonal({1, 2}), GroupKind::scaling);
    const DualRepresentation dr = dual_representation(g);
    EXPECT_EQ(dr.dual().kind(), GroupKind::scaling);
    EXPECT_DOUBLE_EQ(dr.dual().matrix()(0, 0), 1.0);
    EXPECT_DOUBLE_EQ(dr.dual().matrix()(1, 1), 0.5);
}

TEST(DualRepresentation, IdentityIsSelfDual) {
    const GroupElement id = make_element(DenseMatrix::identity(3), GroupKind::general);
    EXPECT_EQ(max_abs_diff(dual_representation(id).dual().matrix(), DenseMatrix::identity(3)), 0.0);
}

TEST(DualRepresentation, OrthogonalElementsAreSelfDual) {
    auto g = testsupport::rng(302);
    const GroupElement q = testsupport::random_orthogonal(g, 5);
    const DualRepresentation dr = dual_representation(q);
    EXPECT_LT(max_abs_diff(dr.dual().matrix(), q.matrix()), 1e-9);
    EXPECT_EQ(dr.dual().kind(), GroupKind::orthogonal);
}

TEST(DualRepresentation, PermutationStaysPermutation) {
    const GroupElement g = make_permutation({2, 0, 1});
    const DualRepresentation dr = dual_representation(g);
    EXPECT_EQ(dr.dual().kind(), GroupKind::permutation);
    EXPECT_LT(max_abs_diff(dr.dual().matrix(), g.matrix()), 1e-12);
}

TEST(DualRepresentation, BorelDualDemotesToGeneral) {
    const GroupElement g =
        make_element(DenseMatrix{{1, 1, 0}, {0, 1, 2}, {0, 0, 1}}, GroupKind::borel);
    const DualRepresentation dr = dual_representation(g);
    // inverse-transpose of an upper triangular matrix is lower triangular
    EXPECT_EQ(dr.dual().kind(), GroupKind::general);
    EXPECT_FALSE(stabilizes_flag(dr.dual()));
}

TEST(ActFunctional, CostRebalancingUnderScaling) {
    const GroupElement g = make_element(DenseMatrix::diagonal({1, 2}), GroupKind::scaling);
    const LinearFunctional psi{DenseVector{2, 4}};
    const LinearFunctional psi_prime = act_functional(dual_representation(g), psi);
    EXPECT_DOUBLE_EQ(psi_prime.coefficients[0], 2.0);
    EXPECT_DOUBLE_EQ(psi_prime.coefficients[1], 2.0);
}

TEST(ActFunctional, IdentityLeavesFunctionalUnchanged) {
    const GroupElement id = make_element(DenseMatrix::identity(4), GroupKind::general);
    auto g = testsupport::rng(303);
    const DenseVector coeff = testsupport::random_vector(g, 4);
    const LinearFunctional phi{coeff};
    EXPECT_EQ(max_abs_diff(act_functional(dual_representation(id), phi).coefficients, coeff), 0.0);
}

TEST(ActFunctional, ComposedActionMatchesDualOfComposition) {
    auto rng = testsupport::rng(304);
    for (int rep = 0; rep < 10; ++rep) {
        const GroupElement g = testsupport::random_general(rng, 5);
        const GroupElement h = testsupport::random_borel(rng, 5);
        const LinearFunctional phi{testsupport::random_vector(rng, 5)};
        const LinearFunctional step =
            act_functional(dual_representation(h), act_functional(dual_representation(g), phi));
        const LinearFunctional direct = act_functional(dual_representation(compose(h, g)), phi);
        EXPECT_LT(max_abs_diff(step.coefficients, direct.coefficients), 1e-9);
    }
}

TEST(VerifyPairingInvariance, ScalingCaseIsExact) {
    const GroupElement g = make_element(DenseMatrix::diagonal({1, 2}), GroupKind::scaling);
    const LinearFunctional psi{DenseVector{2, 4}};
    const DenseVector u{1, 1};
    EXPECT_DOUBLE_EQ(pairing(psi, u), 6.0);
    const LinearFunctional psi_prime = act_functional(dual_representation(g), psi);
    const DenseVector u_prime = act_vector(g, u);
    EXPECT_DOUBLE_EQ(pairing(psi_prime, u_prime), 6.0);
    const DeviationReport report = verify_pairing_invariance(g, psi, u);
    EXPECT_TRUE(report.pass);
    EXPECT_EQ(report.max_deviation, 0.0);
}

TEST(VerifyPairingInvariance, IdentityDeviationIsExactlyZero) {
    const GroupElement id = make_element(DenseMatrix::identity(3), GroupKind::general);
    auto g = testsupport::rng(305);
    const DeviationReport report = verify_pairing_invariance(
        id, LinearFunctional{testsupport::random_vector(g, 3)}, testsupport::random_vector(g, 3));
    EXPECT_EQ(report.max_deviation, 0.0);
}

TEST(VerifyPairingInvariance, HoldsForEveryKindOnRandomTriples) {
    auto rng = testsupport::rng(306);
    for (GroupKind kind : {GroupKind::orthogonal, GroupKind::scaling, GroupKind::borel,
                           GroupKind::permutation, GroupKind::general}) {
        for (int rep = 0; rep < 10; ++rep) {
            const std::size_t n = 2 + rep % 7;
            const GroupElement g = testsupport::random_element(rng, kind, n);
            const LinearFunctional phi{testsupport::random_vector(rng, n)};
            const DenseVector v = testsupport::random_vector(rng, n);
            const DeviationReport report = verify_pairing_invariance(g, phi, v);
            EXPECT_TRUE(report.pass) << to_string(kind) << " deviation " << report.max_deviation;
        }
    }
}

TEST(TotalCost, FrequencyCostOfSecondDocument) {
    const TermDocumentMatrix tdm = sample_frequency();
    EXPECT_DOUBLE_EQ(total_cost(sample_costs(), tdm, 2), 27.0);
}

TEST(TotalCost, ZeroCostsGiveZeroEverywhere) {
    const TermDocumentMatrix tdm = sample_frequency();
    std::map<std::string, double> zeros;
    for (const std::string& t : tdm.vocabulary.terms()) zeros[t] = 0.0;
    for (std::size_t doc = 1; doc <= tdm.doc_count(); ++doc)
        EXPECT_DOUBLE_EQ(total_cost(zeros, tdm, doc), 0.0);
}

TEST(TotalCost, MatchesTokenWalkOracle) {
    auto g = testsupport::rng(307);
    const std::vector<std::string> lines = testsupport::sample_corpus_lines();
    const TermDocumentMatrix tdm = sample_frequency();
    std::map<std::string, double> costs;
    for (const std::string& t : tdm.vocabulary.terms()) costs[t] = testsupport::uniform(g, 0.0, 9.0);
    for (std::size_t doc = 1; doc <= lines.size(); ++doc) {
        double oracle = 0.0;
        std::istringstream in(lines[doc - 1]);
        std::string tok;
        while (in >> tok) oracle += costs.at(tok);
        EXPECT_NEAR(total_cost(costs, tdm, doc), oracle, 1e-9);
    }
}

TEST(TotalCost, MissingTermIsNamed) {
    const TermDocumentMatrix tdm = sample_frequency();
    std::map<std::string, double> costs = sample_costs();
    costs.erase("term4");
    expect_throw_containing<MissingCostError>([&] { total_cost(costs, tdm, 1); }, "term4");
}

TEST(TotalCost, DocIdOutOfRange) {
    const TermDocumentMatrix tdm = sample_frequency();
    EXPECT_THROW(total_cost(sample_costs(), tdm, 0), DocRangeError);
    EXPECT_THROW(total_cost(sample_costs(), tdm, 4), DocRangeError);
}

TEST(Properties, DualOfDualReturnsThePrimal) {
    auto rng = testsupport::rng(308);
    for (GroupKind kind : {GroupKind::orthogonal, GroupKind::scaling, GroupKind::borel,
                           GroupKind::permutation, GroupKind::general}) {
        const GroupElement g = testsupport::random_element(rng, kind, 5);
        const GroupElement once = dual_representation(g).dual();
        const GroupElement twice = dual_representation(once).dual();
        EXPECT_LT(max_abs_diff(twice.matrix(), g.matrix()), 1e-9) << to_string(kind);
    }
}

TEST(Properties, DualIsAHomomorphism) {
    auto rng = testsupport::rng(309);
    for (int rep = 0; rep < 10; ++rep) {
        const GroupElement g = testsupport::random_general(rng, 4);
        const GroupElement h = testsupport::random_general(rng, 4);
        const DenseMatrix lhs = dual_representation(compose(g, h)).dual().matrix();
        const DenseMatrix rhs =
            mat_mul(dual_representation(g).dual().matrix(), dual_representation(h).dual().matrix());
        EXPECT_LT(max_abs_diff(lhs, rhs), 1e-9);
    }
}
