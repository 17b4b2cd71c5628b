#ifndef CWKIRCH_SPANNING_TREES_HPP
#define CWKIRCH_SPANNING_TREES_HPP

// Higher-dimensional spanning trees of a connected complex X of dimension d.
//
// A spanning tree keeps the whole (d-1)-skeleton and a set of d-cells whose
// boundary columns form a basis of the column matroid of D_d over Q. For
// d = 1 these are the classical spanning trees of a graph.

#include <functional>
#include <map>
#include <vector>

#include "cwkirch/chain_complex.hpp"

namespace cwk {

struct SpanningTree {
    SubcomplexSpec top_cells;
    Integer theta;                      // torsion order of H_{d-1}(T; Z)
    std::map<Index, Integer> t_values;  // b not in T  ->  t_b = <c, b>
    RatMatrix tbar;                     // n_d x n_d; column b is c / t_b, zero on T
};

/// True iff some real d-cycle has a nonzero b-coordinate.
bool is_essential(const CellComplex& c, Index b);

bool is_spanning_tree(const CellComplex& c, const SubcomplexSpec& s);

/// Greedy construction: remove the first essential d-cell until beta_d = 0.
SpanningTree find_spanning_tree(const CellComplex& c);

/// Calls `visit` once per spanning tree, in lexicographic order of the sorted
/// index sets. Depth-first over columns; a branch is cut as soon as its
/// chosen columns become dependent or too few columns remain.
void for_each_spanning_tree(const CellComplex& c, const std::function<void(const SubcomplexSpec&)>& visit);

std::vector<SubcomplexSpec> spanning_tree_sets(const CellComplex& c);

/// Every spanning tree with theta, t-values and the operator T-bar filled in.
std::vector<SpanningTree> enumerate_spanning_trees(const CellComplex& c);

/// theta_T: product of the nonzero invariant factors of the column-restricted D_d.
Integer tree_theta(const CellComplex& c, const SubcomplexSpec& t);

/// w_T = theta_T^2 * prod_{b in T} 1 / r_b.
Rational tree_weight(const CellComplex& c, const SpanningTree& t);
Rational tree_weight(const CellComplex& c, const SubcomplexSpec& t, const Integer& theta);

struct TBar {
    RatMatrix matrix;
    std::map<Index, Integer> t_values;
};

/// The operator T-bar: for b outside T, c is the primitive integer generator
/// of ker D_d restricted to T + b, signed so its first nonzero coordinate is
/// positive; column b is c / <c, b>. Columns of cells in T are zero.
TBar tbar_matrix(const CellComplex& c, const SubcomplexSpec& t);

/// Builds the full SpanningTree record; throws if t is not a spanning tree.
SpanningTree make_spanning_tree(const CellComplex& c, const SubcomplexSpec& t);

}  // namespace cwk

#endif  // CWKIRCH_SPANNING_TREES_HPP
