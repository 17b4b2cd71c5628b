#include <catch_amalgamated.hpp>

#include "cwkirch/chain_complex.hpp"
#include "cwkirch/corpus.hpp"
#include "cwkirch/error.hpp"
#include "support.hpp"

using namespace cwk;
using support::mat;

TEST_CASE("every corpus complex validates", "[complex]")
{
    for (const CellComplex& c : corpus::all()) {
        INFO(c.name() << ": " << c.validation().summary());
        CHECK(c.validation().ok());
    }
}

TEST_CASE("boundary of boundary violations name the offending cells", "[complex]")
{
    // D_1 of a segment composed with a 2-cell whose boundary is a single edge.
    const CellComplex bad({2, 1, 1}, {mat(2, 1, {-1, 1}), mat(1, 1, {1})});
    REQUIRE_FALSE(bad.validation().ok());
    REQUIRE(bad.validation().boundary_violations.size() == 2);
    const BoundaryViolation& v = bad.validation().boundary_violations[0];
    CHECK(v.degree == 2);
    CHECK(v.row == 0);
    CHECK(v.col == 0);
    CHECK(v.value == -1);
    CHECK_THROWS_AS(bad.require_valid(), PreconditionError);
}

TEST_CASE("shape, weight and connectivity failures are recorded", "[complex]")
{
    CHECK_FALSE(CellComplex({2, 1}, {mat(1, 1, {1})}).validation().ok());
    CHECK_FALSE(CellComplex({2, 1}, {mat(2, 1, {0, 0})}).validation().ok());
    CHECK_FALSE(CellComplex({2}, {}).validation().ok());
    CHECK(CellComplex({1}, {}).validation().ok());
    const std::vector<std::optional<RatVector>> w{std::nullopt, support::vec({Rational(0)})};
    CHECK_FALSE(CellComplex({2, 1}, {mat(2, 1, {-1, 1})}, w).validation().ok());
}

TEST_CASE("Betti numbers and Euler characteristics", "[complex]")
{
    struct Expect {
        CellComplex c;
        std::vector<Index> betti;
    };
    const std::vector<Expect> cases{
        {corpus::segment(), {1, 0}},        {corpus::circle(), {1, 1}},
        {corpus::theta(), {1, 2}},          {corpus::k4(), {1, 3}},
        {corpus::rp2_min(), {1, 0, 0}},     {corpus::rp2_double(), {1, 0, 1}},
        {corpus::torus_min(), {1, 2, 1}},   {corpus::moore(3), {1, 0, 0}},
        {corpus::rp3_min(), {1, 0, 0, 1}},  {corpus::rp2_six(), {1, 0, 0}},
        {corpus::torus_seven(), {1, 2, 1}},
    };
    for (const auto& [c, expected] : cases) {
        INFO(c.name());
        Integer chi(0);
        for (int k = 0; k <= c.dim(); ++k) {
            CHECK(betti(c, k) == expected[static_cast<std::size_t>(k)]);
            chi += (k % 2 ? -1 : 1) * expected[static_cast<std::size_t>(k)];
        }
        CHECK(euler_characteristic(c) == chi);
    }
}

TEST_CASE("triangulated surfaces have the expected cell counts", "[complex]")
{
    const CellComplex rp2 = corpus::rp2_six();
    CHECK(rp2.cell_counts() == std::vector<Index>{6, 15, 10});
    const CellComplex torus = corpus::torus_seven();
    CHECK(torus.cell_counts() == std::vector<Index>{7, 21, 14});
    // Every edge of a closed surface lies on exactly two triangles.
    for (const CellComplex& c : {rp2, torus}) {
        const IntMatrix& d2 = c.boundary(2);
        for (Index e = 0; e < d2.rows(); ++e) {
            int faces = 0;
            for (Index f = 0; f < d2.cols(); ++f)
                faces += d2(e, f) != 0 ? 1 : 0;
            CHECK(faces == 2);
        }
    }
}

TEST_CASE("skeleta and top restrictions", "[complex]")
{
    const CellComplex t = corpus::torus_min();
    const CellComplex s1 = skeleton(t, 1);
    CHECK(s1.dim() == 1);
    CHECK(s1.cell_counts() == std::vector<Index>{1, 2});
    CHECK(skeleton(t, 2) == t);
    CHECK_THROWS_AS(skeleton(t, 3), PreconditionError);

    const CellComplex th = corpus::theta();
    const CellComplex r = restrict_top(th, SubcomplexSpec({2, 0}));
    CHECK(r.cell_count(1) == 2);
    CHECK(r.boundary(1) == mat(2, 2, {-1, -1, 1, 1}));
    CHECK(betti(r, 1) == 1);
}

TEST_CASE("boundary_or_zero extends by zero maps", "[complex]")
{
    const CellComplex c = corpus::rp2_min();
    CHECK(c.boundary_or_zero(0).rows() == 0);
    CHECK(c.boundary_or_zero(0).cols() == 1);
    CHECK(c.boundary_or_zero(3).rows() == 1);
    CHECK(c.boundary_or_zero(3).cols() == 0);
}

TEST_CASE("weights default to one and can be replaced", "[complex]")
{
    const CellComplex th = corpus::theta();
    CHECK_FALSE(th.has_weights(1));
    CHECK(th.weights(1) == RatVector::Ones(3));
    const CellComplex w = th.with_weights(1, support::vec({2, 3, 6}));
    CHECK(w.has_weights(1));
    CHECK(w.weights(1)(2) == 6);
    CHECK_FALSE(w == th);
    CHECK(w.without_weights() == th);
}

TEST_CASE("subcomplex specs are sorted sets", "[complex]")
{
    const SubcomplexSpec s({3, 1, 3, 0});
    CHECK(s.top_cells() == std::vector<Index>{0, 1, 3});
    CHECK(s.contains(1));
    CHECK_FALSE(s.contains(2));
    CHECK(s == SubcomplexSpec({0, 1, 3}));
}

TEST_CASE("chains are shape checked", "[complex]")
{
    const CellComplex th = corpus::theta();
    CHECK(make_chain(th, 1, RatVector::Zero(3)).degree == 1);
    CHECK_THROWS_AS(make_chain(th, 1, RatVector::Zero(2)), PreconditionError);
    CHECK_THROWS_AS(make_chain(th, 2, RatVector::Zero(0)), PreconditionError);
}
