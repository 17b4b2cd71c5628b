#include <catch_amalgamated.hpp>

#include "cwkirch/corpus.hpp"
#include "cwkirch/error.hpp"
#include "cwkirch/matrix_tree.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace cwk;
using support::mat;
using support::vec;

namespace {

std::vector<CellComplex> complexes_with_top()
{
    std::vector<CellComplex> out;
    for (const CellComplex& c : corpus::all())
        if (c.dim() >= 1)
            out.push_back(c);
    return out;
}

// Kirchhoff: reduced Laplacian with conductances 1/r, vertex 0 deleted.
Rational reduced_graph_laplacian_det(const CellComplex& g, const RatVector& r)
{
    const IntMatrix& d1 = g.boundary(1);
    const Index n = d1.rows();
    RatMatrix lap = RatMatrix::Zero(n, n);
    for (Index e = 0; e < d1.cols(); ++e)
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j)
                lap(i, j) += Rational(d1(i, e) * d1(j, e)) / r(e);
    const RatMatrix reduced = lap.bottomRightCorner(n - 1, n - 1);
    return oracle::leibniz_det(reduced);
}

SubgroupSpec boundary_subgroup(const CellComplex& c)
{
    return {image_lattice_basis(c.boundary(c.dim())).vectors};
}

}  // namespace

TEST_CASE("lattice prefactors of the small complexes", "[matrix-tree]")
{
    const CellComplex k4 = corpus::k4();
    CHECK(laplacian(k4, WeightAssignment::unit(6)).det == 64);
    CHECK(gamma_X(k4) == 4);
    CHECK(mu_X(k4) == 4);
    CHECK(theta_X(k4) == 1);

    const CellComplex th = corpus::theta();
    CHECK(gamma_X(th) == 2);
    CHECK(laplacian(th, WeightAssignment::unit(3)).det == 6);

    const CellComplex rp2 = corpus::rp2_min();
    CHECK(mu_X(rp2) == 4);
    CHECK(theta_X(rp2) == 2);
    CHECK(gamma_X(rp2) == 1);
    CHECK(laplacian(rp2, WeightAssignment::unit(1)).det == 4);

    const CellComplex six = corpus::rp2_six();
    CHECK(laplacian(six, WeightAssignment::unit(10)).det == 5184);
    CHECK(gamma_X(six) == 1296);
}

TEST_CASE("graph determinants match the classical Kirchhoff oracle", "[matrix-tree][property]")
{
    std::mt19937_64 rng(8);
    for (const CellComplex& g : {corpus::k4(), corpus::theta(), corpus::segment()}) {
        const Index n = g.cell_count(0);
        const Index m = g.cell_count(1);
        // Unit weights: det L on B_0 is n times the number of spanning trees.
        const auto trees = oracle::graph_spanning_trees(n, oracle::graph_edges(g.boundary(1)));
        CHECK(laplacian(g, WeightAssignment::unit(m)).det == Rational(n * static_cast<Index>(trees.size())));
        for (int i = 0; i < 5; ++i) {
            const RatVector r = oracle::random_positive_vector(rng, m);
            INFO(g.name());
            CHECK(laplacian(g, WeightAssignment(r)).det == Rational(n) * reduced_graph_laplacian_det(g, r));
        }
    }
}

TEST_CASE("weighted matrix-tree identity across the corpus", "[matrix-tree][property]")
{
    std::mt19937_64 rng(77);
    for (const CellComplex& c : complexes_with_top()) {
        const Index m = c.cell_count(c.dim());
        INFO(c.name());
        CHECK(verify_matrix_tree(c, WeightAssignment::unit(m)).holds());
        for (int i = 0; i < 3; ++i) {
            const IdentityReport rep = verify_matrix_tree(c, WeightAssignment(oracle::random_positive_vector(rng, m)));
            CHECK(rep.holds());
        }
    }
}

TEST_CASE("sum over trees of tree Laplacian determinants", "[matrix-tree]")
{
    const SumDecompositionReport th = verify_sum_decomposition(corpus::theta(), WeightAssignment::unit(3));
    CHECK(th.identity.lhs == 6);
    CHECK(th.tree_terms == std::vector<Rational>{2, 2, 2});
    CHECK(th.identity.holds());

    const SumDecompositionReport dbl = verify_sum_decomposition(corpus::rp2_double(), WeightAssignment::unit(2));
    CHECK(dbl.identity.lhs == 8);
    CHECK(dbl.tree_terms == std::vector<Rational>{4, 4});

    std::mt19937_64 rng(31);
    for (const CellComplex& c : complexes_with_top()) {
        const Index m = c.cell_count(c.dim());
        INFO(c.name());
        CHECK(verify_sum_decomposition(c, WeightAssignment(oracle::random_positive_vector(rng, m))).identity.holds());
        const SumDecompositionReport unit = verify_sum_decomposition(c, WeightAssignment::unit(m));
        CHECK(unit.identity.holds());
        // Unweighted: det L^T = mu_T, so the terms sum to det L.
        REQUIRE(unit.mu_sum.has_value());
        CHECK(*unit.mu_sum == unit.identity.lhs);
    }
}

TEST_CASE("subgroup hypothesis", "[matrix-tree]")
{
    const CellComplex th = corpus::theta();

    const HypothesisResult ok = hypothesis_check(th, {mat(2, 1, {0, 1})});
    CHECK(ok.passes);
    CHECK(ok.t_p_A == 1);

    const HypothesisResult scaled = hypothesis_check(th, {mat(2, 1, {0, 2})});
    CHECK_FALSE(scaled.passes);
    CHECK_FALSE(scaled.reason.empty());

    const HypothesisResult rank = hypothesis_check(th, {IntMatrix::Identity(2, 2)});
    CHECK_FALSE(rank.passes);

    CHECK_THROWS_AS(hypothesis_check(th, {mat(2, 2, {0, 0, 1, 2})}), PreconditionError);
    CHECK_THROWS_AS(hypothesis_check(th, {mat(3, 1, {0, 1, 0})}), PreconditionError);
    CHECK_THROWS_AS(verify_generalized(th, WeightAssignment::unit(3), {mat(2, 1, {0, 2})}), PreconditionError);
}

TEST_CASE("generalized identity for a vertex subgroup of theta", "[matrix-tree]")
{
    const CellComplex th = corpus::theta();
    const GeneralizedReport rep = verify_generalized(th, WeightAssignment::unit(3), {mat(2, 1, {0, 1})});
    CHECK(rep.identity.lhs == 3);
    CHECK(rep.identity.rhs == 3);
    CHECK(rep.gamma_A == 1);
    CHECK(rep.holds());
    const SumDecompositionReport sum =
        verify_sum_decomposition(th, WeightAssignment::unit(3), SubgroupSpec{mat(2, 1, {0, 1})});
    CHECK(sum.identity.holds());
    CHECK(sum.tree_terms == std::vector<Rational>{1, 1, 1});
}

TEST_CASE("generalized identity with A = B across the corpus", "[matrix-tree][property]")
{
    std::mt19937_64 rng(64);
    for (const CellComplex& c : complexes_with_top()) {
        const Index m = c.cell_count(c.dim());
        INFO(c.name());
        const SubgroupSpec a = boundary_subgroup(c);
        const GeneralizedReport unit = verify_generalized(c, WeightAssignment::unit(m), a);
        CHECK(unit.holds());
        CHECK(unit.gamma_A == gamma_X(c));
        CHECK(unit.t_p_A == 1);
        CHECK(verify_generalized(c, WeightAssignment(oracle::random_positive_vector(rng, m)), a).holds());
    }
}

TEST_CASE("each tree Laplacian factors through its Gram determinant", "[matrix-tree][property]")
{
    std::mt19937_64 rng(12);
    for (const CellComplex& c : complexes_with_top()) {
        const Index m = c.cell_count(c.dim());
        const WeightAssignment w(oracle::random_positive_vector(rng, m));
        for (const SubcomplexSpec& t : spanning_tree_sets(c)) {
            INFO(c.name());
            CHECK(tree_factorization(c, t, w).holds());
            CHECK(tree_factorization(c, t, WeightAssignment::unit(m)).holds());
        }
    }
}

TEST_CASE("low-temperature ratios approach one", "[matrix-tree]")
{
    const CellComplex dbl = corpus::rp2_double();
    const WeightAssignment w(vec({1, 64}));
    const std::vector<unsigned> betas{1, 2, 4, 8, 12};
    const LowTemperatureReport rep = low_temperature_check(dbl, SubcomplexSpec({0}), w, betas);
    REQUIRE(rep.ratios.size() == betas.size());
    for (std::size_t i = 0; i < betas.size(); ++i) {
        Rational tail(1);
        for (unsigned j = 0; j < betas[i]; ++j)
            tail /= 64;
        CHECK(rep.ratios[i] == 1 / (1 + tail));
    }
    CHECK(rep.ratios.back() == Rational(Integer("4722366482869645213696"), Integer("4722366482869645213697")));
    CHECK(rep.ok());

    const LowTemperatureReport strict = low_temperature_check(dbl, SubcomplexSpec({0}), w, {1, 2}, Rational(1, 1000000));
    CHECK(strict.strictly_decreasing);
    CHECK_FALSE(strict.within_tolerance);
}

TEST_CASE("goodness is required for the low-temperature limit", "[matrix-tree]")
{
    const CellComplex dbl = corpus::rp2_double();
    CHECK_THROWS_AS(require_good(dbl, SubcomplexSpec({0}), WeightAssignment::unit(2)), NotGoodError);
    try {
        require_good(dbl, SubcomplexSpec({0}), WeightAssignment::unit(2));
    } catch (const NotGoodError& e) {
        CHECK(e.cell() == 1);
    }
    CHECK_NOTHROW(require_good(dbl, SubcomplexSpec({0}), WeightAssignment(vec({1, 64}))));
    CHECK_THROWS_AS(low_temperature_check(dbl, SubcomplexSpec({0}), WeightAssignment::unit(2), {1, 2}), NotGoodError);
}

TEST_CASE("weight assignments", "[matrix-tree]")
{
    CHECK(WeightAssignment::unit(3).is_unit());
    const WeightAssignment w(vec({2, Rational(1, 3)}));
    CHECK(w.power(3).r() == vec({8, Rational(1, 27)}));
    CHECK(w.inverse() == vec({Rational(1, 2), 3}));
    CHECK_THROWS_AS(WeightAssignment(vec({1, 0})), PreconditionError);
    CHECK_THROWS_AS(laplacian(corpus::theta(), WeightAssignment::unit(2)), PreconditionError);
    CHECK(WeightAssignment::of(corpus::theta().with_weights(1, vec({2, 3, 6}))).r() == vec({2, 3, 6}));
}
