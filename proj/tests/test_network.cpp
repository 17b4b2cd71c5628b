#include <catch_amalgamated.hpp>

#include "cwkirch/corpus.hpp"
#include "cwkirch/error.hpp"
#include "cwkirch/network.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace cwk;
using support::vec;

namespace {

NetworkProblem divider(const CellComplex& c)
{
    return {c, {0, vec({-1, 1})}, {1, RatVector::Zero(3)}};
}

// Complexes under unit resistances plus three random positive weightings.
std::vector<CellComplex> weighted_variants(std::mt19937_64& rng)
{
    std::vector<CellComplex> out;
    for (const CellComplex& c : corpus::all()) {
        if (c.dim() < 1)
            continue;
        out.push_back(c);
        for (int i = 0; i < 3; ++i)
            out.push_back(c.with_weights(c.dim(), oracle::random_positive_vector(rng, c.cell_count(c.dim()))));
    }
    return out;
}

}  // namespace

TEST_CASE("theta divider splits the current equally", "[network]")
{
    const NetworkProblem np = divider(corpus::theta());
    const NetworkSolution s = solve_direct(np);
    CHECK(s.J.coords == vec({Rational(1, 3), Rational(1, 3), Rational(1, 3)}));
    CHECK(s.V.coords == s.J.coords);
    CHECK(verify_solution(np, s).ok());
}

TEST_CASE("weighted theta divider splits by conductance", "[network]")
{
    const NetworkProblem np = divider(corpus::theta().with_weights(1, vec({2, 3, 6})));
    const NetworkSolution s = solve_direct(np);
    CHECK(s.J.coords == vec({Rational(1, 2), Rational(1, 3), Rational(1, 6)}));
    CHECK(s.V.coords == vec({1, 1, 1}));
    CHECK(verify_solution(np, s).ok());
}

TEST_CASE("hand solution of the theta divider has zero residuals", "[network]")
{
    const NetworkProblem np = divider(corpus::theta());
    const NetworkSolution hand{{1, vec({Rational(1, 3), Rational(1, 3), Rational(1, 3)})},
                               {1, vec({Rational(1, 3), Rational(1, 3), Rational(1, 3)})}};
    CHECK(verify_solution(np, hand).ok());
}

TEST_CASE("zero problem has the zero solution", "[network]")
{
    const CellComplex k4 = corpus::k4();
    const NetworkProblem np{k4, {0, RatVector::Zero(4)}, {1, RatVector::Zero(6)}};
    const NetworkSolution s = solve_direct(np);
    CHECK(s.J.coords.isZero());
    CHECK(s.V.coords.isZero());
}

TEST_CASE("perturbed currents are caught by the residual report", "[network]")
{
    const NetworkProblem np = divider(corpus::theta());
    NetworkSolution s = solve_direct(np);
    s.J.coords(0) += 1;
    const ResidualReport r = verify_solution(np, s);
    CHECK_FALSE(r.ok());
    CHECK_FALSE(r.current.isZero());
    CHECK_FALSE(r.ohm.isZero());
}

TEST_CASE("membership preconditions", "[network]")
{
    const CellComplex th = corpus::theta();
    CHECK_THROWS_AS(check_problem({th, {0, vec({1, 1})}, {1, RatVector::Zero(3)}}), PreconditionError);
    CHECK_THROWS_AS(check_problem({th, {0, RatVector::Zero(2)}, {1, vec({1, 0, 0})}}), PreconditionError);
    CHECK_THROWS_AS(check_problem({th, {1, RatVector::Zero(3)}, {1, RatVector::Zero(3)}}), PreconditionError);
    CHECK_NOTHROW(check_problem({th, {0, RatVector::Zero(2)}, {1, vec({1, -1, 0})}}));
}

TEST_CASE("two solve paths agree on random problems", "[network][property]")
{
    std::mt19937_64 rng(99);
    for (const CellComplex& c : weighted_variants(rng)) {
        const int d = c.dim();
        const RatMatrix bd = to_rational(c.boundary(d));
        const RatMatrix z = to_rational(kernel_lattice_basis(c.boundary(d)).vectors);
        const RatVector p = bd * oracle::random_positive_vector(rng, c.cell_count(d));
        const RatVector q = z * oracle::random_positive_vector(rng, z.cols());
        const NetworkProblem np{c, {d - 1, p}, {d, q}};
        const NetworkSolution a = solve_direct(np);
        const NetworkSolution b = solve_by_laws(np);
        INFO(c.name());
        CHECK(a.J.coords == b.J.coords);
        CHECK(a.V.coords == b.V.coords);
        CHECK(verify_solution(np, a).ok());
    }
}

TEST_CASE("tree-sum projection equals the direct projection", "[network][property]")
{
    std::mt19937_64 rng(1234);
    for (const CellComplex& c : weighted_variants(rng)) {
        INFO(c.name());
        CHECK(projection_tree_formula(c) == projection_direct(c));
    }
}

TEST_CASE("tree operator is R-self-adjoint and scales cycles by Delta", "[network][property]")
{
    std::mt19937_64 rng(4321);
    for (const CellComplex& c : weighted_variants(rng)) {
        INFO(c.name());
        const TreeOperatorSum f = tree_operator_sum(c, enumerate_spanning_trees(c));
        const RatVector r = c.weights(c.dim());
        const RatMatrix rf = r.asDiagonal() * f.weighted_sum;
        CHECK(rf == RatMatrix(rf.transpose()));
        const RatMatrix z = to_rational(kernel_lattice_basis(c.boundary(c.dim())).vectors);
        CHECK(RatMatrix(f.weighted_sum * z) == RatMatrix(f.delta * z));
    }
}

TEST_CASE("projection examples", "[network]")
{
    const RatMatrix p = projection_tree_formula(corpus::rp2_double());
    RatMatrix expected(2, 2);
    expected << Rational(1, 2), Rational(-1, 2), Rational(-1, 2), Rational(1, 2);
    CHECK(p == expected);
    CHECK(tree_operator_sum(corpus::rp2_double(), enumerate_spanning_trees(corpus::rp2_double())).delta == 8);
    CHECK(projection_tree_formula(corpus::rp2_min()).isZero());
    CHECK(projection_tree_formula(corpus::k4().with_weights(1, RatVector::Ones(6))) == projection_direct(corpus::k4()));
}

TEST_CASE("branch currents", "[network]")
{
    const CellComplex th = corpus::theta();
    const ChainVector z = branch_current(th, {1, vec({1, 0, 0})});
    CHECK(z.coords == vec({Rational(2, 3), Rational(-1, 3), Rational(-1, 3)}));
    CHECK(branch_current(th, {1, RatVector::Zero(3)}).coords.isZero());
    CHECK(branch_current(corpus::rp2_min(), {2, vec({5})}).coords.isZero());
    CHECK_THROWS_AS(branch_current(th, {0, RatVector::Zero(2)}), PreconditionError);
}

TEST_CASE("branch current formula equals P R^-1 V for random sources", "[network][property]")
{
    std::mt19937_64 rng(555);
    std::uniform_int_distribution<int> val(-5, 5);
    for (const CellComplex& c : weighted_variants(rng)) {
        const int d = c.dim();
        const auto trees = enumerate_spanning_trees(c);
        for (int i = 0; i < 10; ++i) {
            RatVector v(c.cell_count(d));
            for (Index j = 0; j < v.size(); ++j)
                v(j) = Rational(val(rng), 1 + (j % 3));
            const ChainVector formula = branch_current(c, {d, v}, trees);
            const ChainVector direct = branch_current_direct(c, {d, v});
            INFO(c.name());
            REQUIRE(formula.coords == direct.coords);
            // V - R z is a coboundary: orthogonal to every cycle.
            const RatVector resid = v - RatVector(c.weights(d).asDiagonal() * formula.coords);
            const RatMatrix zb = to_rational(kernel_lattice_basis(c.boundary(d)).vectors);
            REQUIRE(RatVector(zb.transpose() * resid).isZero());
        }
    }
}
