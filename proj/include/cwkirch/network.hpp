#ifndef CWKIRCH_NETWORK_HPP
#define CWKIRCH_NETWORK_HPP

// The network problem on the top cells of a complex: Ohm's law V = R J,
// current law dJ = p, voltage law <V, z> = <q, z> for every d-cycle z.
// Resistances are the d-cell weights of the complex.

#include <vector>

#include "cwkirch/chain_complex.hpp"
#include "cwkirch/spanning_trees.hpp"

namespace cwk {

struct NetworkProblem {
    CellComplex complex;
    ChainVector p;  // degree d-1, must be a boundary
    ChainVector q;  // degree d, must be a cycle
};

struct NetworkSolution {
    ChainVector V;
    ChainVector J;
};

struct ResidualReport {
    RatVector ohm;      // V - R J
    RatVector current;  // D_d J - p
    RatVector voltage;  // <V - q, z> over a Z-basis of the cycles
    bool ok() const;
};

/// Checks shapes and the membership conditions p in B_{d-1}, q in Z_d.
void check_problem(const NetworkProblem& np);

/// J = J0 + J1 with J0 the unique preimage of p in the R-orthogonal
/// complement of the cycles and J1 the R-orthogonal projection of R^{-1} q
/// onto the cycles.
NetworkSolution solve_direct(const NetworkProblem& np);

/// Independent route: solves the stacked linear system of the three laws.
NetworkSolution solve_by_laws(const NetworkProblem& np);

/// Matrix of the R-orthogonal projection C_d -> Z_d, computed from a cycle basis.
RatMatrix projection_direct(const CellComplex& c);

struct TreeOperatorSum {
    RatMatrix weighted_sum;  // F = sum_T w_T T-bar
    Rational delta;          // sum_T w_T
};

TreeOperatorSum tree_operator_sum(const CellComplex& c, const std::vector<SpanningTree>& trees);

/// (1 / Delta) sum_T w_T T-bar over all spanning trees.
RatMatrix projection_tree_formula(const CellComplex& c);
RatMatrix projection_tree_formula(const CellComplex& c, const std::vector<SpanningTree>& trees);

/// The cycle z with V - R z a coboundary, from the tree-sum formula
/// <z, b> = (1 / Delta) sum_T (w_T / r_b) <V, T-bar(b)>.
ChainVector branch_current(const CellComplex& c, const ChainVector& v);
ChainVector branch_current(const CellComplex& c, const ChainVector& v, const std::vector<SpanningTree>& trees);

/// The same cycle as P R^{-1} V.
ChainVector branch_current_direct(const CellComplex& c, const ChainVector& v);

ResidualReport verify_solution(const NetworkProblem& np, const NetworkSolution& s);

}  // namespace cwk

#endif  // CWKIRCH_NETWORK_HPP
