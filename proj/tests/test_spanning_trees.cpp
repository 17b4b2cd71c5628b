#include <catch_amalgamated.hpp>

#include "cwkirch/corpus.hpp"
#include "cwkirch/error.hpp"
#include "cwkirch/spanning_trees.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace cwk;

namespace {

std::vector<std::vector<Index>> library_tree_sets(const CellComplex& c)
{
    std::vector<std::vector<Index>> out;
    for (const SubcomplexSpec& s : spanning_tree_sets(c))
        out.push_back(s.top_cells());
    return out;
}

}  // namespace

TEST_CASE("graph spanning trees agree with union-find enumeration", "[trees]")
{
    for (const CellComplex& c : {corpus::k4(), corpus::theta(), corpus::segment(), corpus::circle()}) {
        INFO(c.name());
        const auto expected = oracle::graph_spanning_trees(c.cell_count(0), oracle::graph_edges(c.boundary(1)));
        CHECK(library_tree_sets(c) == expected);
    }
    CHECK(spanning_tree_sets(corpus::k4()).size() == 16);
    CHECK(spanning_tree_sets(corpus::theta()).size() == 3);
}

TEST_CASE("tree counts and torsion orders on cell complexes", "[trees]")
{
    const auto rp2 = enumerate_spanning_trees(corpus::rp2_min());
    REQUIRE(rp2.size() == 1);
    CHECK(rp2[0].theta == 2);

    const auto dbl = enumerate_spanning_trees(corpus::rp2_double());
    REQUIRE(dbl.size() == 2);
    CHECK(dbl[0].theta == 2);
    CHECK(dbl[1].theta == 2);

    // One 2-cell with zero boundary: the only tree is empty.
    const auto torus = spanning_tree_sets(corpus::torus_min());
    REQUIRE(torus.size() == 1);
    CHECK(torus[0].size() == 0);

    // Dropping any one triangle of the torus leaves a tree.
    CHECK(spanning_tree_sets(corpus::torus_seven()).size() == 14);
    for (const SubcomplexSpec& t : spanning_tree_sets(corpus::torus_seven()))
        CHECK(tree_theta(corpus::torus_seven(), t) == 1);
}

TEST_CASE("spanning trees are emitted in lexicographic order", "[trees]")
{
    for (const CellComplex& c : corpus::all()) {
        if (c.dim() < 1)
            continue;
        const auto sets = library_tree_sets(c);
        CHECK(std::is_sorted(sets.begin(), sets.end()));
        CHECK(std::adjacent_find(sets.begin(), sets.end()) == sets.end());
    }
}

TEST_CASE("every enumerated set is a spanning tree and find_spanning_tree finds one", "[trees]")
{
    for (const CellComplex& c : corpus::all()) {
        if (c.dim() < 1)
            continue;
        INFO(c.name());
        for (const SubcomplexSpec& s : spanning_tree_sets(c))
            CHECK(is_spanning_tree(c, s));
        CHECK(is_spanning_tree(c, find_spanning_tree(c).top_cells));
    }
    CHECK_FALSE(is_spanning_tree(corpus::theta(), SubcomplexSpec({0, 1})));
    CHECK_FALSE(is_spanning_tree(corpus::theta(), SubcomplexSpec({7})));
}

TEST_CASE("essential cells", "[trees]")
{
    const CellComplex th = corpus::theta();
    for (Index b = 0; b < 3; ++b)
        CHECK(is_essential(th, b));
    CHECK_FALSE(is_essential(corpus::segment(), 0));
    CHECK(is_essential(corpus::circle(), 0));
    CHECK_FALSE(is_essential(corpus::rp2_min(), 0));
    CHECK_THROWS_AS(is_essential(th, 3), PreconditionError);
}

TEST_CASE("tree cycles: unit on b, cycles, vanish on the tree", "[trees][property]")
{
    for (const CellComplex& c : corpus::all()) {
        if (c.dim() < 1)
            continue;
        const int d = c.dim();
        const RatMatrix bd = to_rational(c.boundary(d));
        for (const SpanningTree& t : enumerate_spanning_trees(c)) {
            INFO(c.name());
            CHECK((bd * t.tbar).isZero());
            for (Index b = 0; b < c.cell_count(d); ++b) {
                if (t.top_cells.contains(b)) {
                    CHECK(t.tbar.col(b).isZero());
                    continue;
                }
                CHECK(t.tbar(b, b) == 1);
                for (Index a = 0; a < c.cell_count(d); ++a)
                    if (a != b && !t.top_cells.contains(a))
                        CHECK(t.tbar(a, b) == 0);
                // theta_T = |t_b| * theta_{T + b}
                std::vector<Index> cells = t.top_cells.top_cells();
                cells.push_back(b);
                const Integer grown = torsion_order_cokernel(select_columns(c.boundary(d), cells));
                CHECK(t.theta == mp::abs(t.t_values.at(b)) * grown);
            }
        }
    }
}

TEST_CASE("tree cycles do not depend on the kernel generator chosen", "[trees][property]")
{
    // Any rational generator of ker D_d on T + b, rescaled to 1 at b, gives column b.
    for (const CellComplex& c : corpus::all()) {
        if (c.dim() < 1)
            continue;
        const int d = c.dim();
        for (const SpanningTree& t : enumerate_spanning_trees(c)) {
            for (Index b = 0; b < c.cell_count(d); ++b) {
                if (t.top_cells.contains(b))
                    continue;
                std::vector<Index> cells = t.top_cells.top_cells();
                cells.push_back(b);
                std::sort(cells.begin(), cells.end());
                const RatMatrix ker = null_space_q(to_rational(select_columns(c.boundary(d), cells)));
                INFO(c.name());
                REQUIRE(ker.cols() == 1);
                for (const Rational& scale : {Rational(1), Rational(-3, 7)}) {
                    RatVector full = RatVector::Zero(c.cell_count(d));
                    for (std::size_t i = 0; i < cells.size(); ++i)
                        full(cells[i]) = scale * ker(static_cast<Index>(i), 0);
                    full /= full(b);
                    CHECK(full == RatVector(t.tbar.col(b)));
                }
            }
        }
    }
}

TEST_CASE("rp2_double tree cycles", "[trees]")
{
    const auto trees = enumerate_spanning_trees(corpus::rp2_double());
    // T = {b1}: the cycle through b2 is b2 - b1, generated with |t_b| = 1.
    CHECK(trees[0].tbar == to_rational(support::mat(2, 2, {0, -1, 0, 1})));
    CHECK(mp::abs(trees[0].t_values.at(1)) == 1);
}

TEST_CASE("tree weights", "[trees]")
{
    const CellComplex w = corpus::theta().with_weights(1, support::vec({2, 3, 6}));
    const auto trees = enumerate_spanning_trees(w);
    CHECK(tree_weight(w, trees[0]) == Rational(1, 2));
    CHECK(tree_weight(w, trees[1]) == Rational(1, 3));
    CHECK(tree_weight(w, trees[2]) == Rational(1, 6));
    const CellComplex rp2 = corpus::rp2_min();
    CHECK(tree_weight(rp2, enumerate_spanning_trees(rp2)[0]) == 4);
}
