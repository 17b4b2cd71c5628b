#ifndef CWKIRCH_MATRIX_TREE_HPP
#define CWKIRCH_MATRIX_TREE_HPP

// Weighted Laplacians restricted to the boundary space B_{d-1}, their
// determinants, the lattice prefactors, and the tree-sum identities they
// satisfy. Weights are resistances r_b = e^{W_b}; only r is ever stored.

#include <optional>
#include <string>
#include <vector>

#include "cwkirch/chain_complex.hpp"
#include "cwkirch/spanning_trees.hpp"

namespace cwk {

/// Positive resistances on the top cells.
class WeightAssignment {
public:
    explicit WeightAssignment(RatVector r);
    static WeightAssignment unit(Index n);
    static WeightAssignment of(const CellComplex& c);  // the complex's own d-cell weights

    const RatVector& r() const { return r_; }
    Index size() const { return r_.size(); }
    bool is_unit() const;
    /// r^beta, i.e. W scaled by beta.
    WeightAssignment power(unsigned beta) const;
    RatVector inverse() const;

private:
    RatVector r_;
};

/// The operator D_d diag(1/r) D_d^T on B_{d-1}, written in a Z-basis of
/// B_{d-1}(X; Z). Its determinant does not depend on that basis.
struct RestrictedLaplacian {
    LatticeBasis basis;
    RatMatrix matrix;
    Rational det;
};

RestrictedLaplacian laplacian(const CellComplex& c, const WeightAssignment& w);

/// Same operator with D_d column-restricted to the tree (L^T), in the same basis.
RestrictedLaplacian tree_laplacian(const CellComplex& c, const SubcomplexSpec& t, const WeightAssignment& w);

/// Squared covolume of B_{d-1}(X; Z) under the standard inner product.
Integer mu_X(const CellComplex& c);
/// Torsion order of H_{d-1}(X; Z).
Integer theta_X(const CellComplex& c);
/// mu_X / theta_X^2
Rational gamma_X(const CellComplex& c);

struct IdentityReport {
    std::string name;
    Rational lhs;
    Rational rhs;
    bool holds() const { return lhs == rhs; }
};

/// det L(W) against gamma_X * sum_T w_T over all spanning trees.
IdentityReport verify_matrix_tree(const CellComplex& c, const WeightAssignment& w);

/// A subgroup A of C_{d-1}(X; Z), given by basis columns.
struct SubgroupSpec {
    IntMatrix basis;
};

struct HypothesisResult {
    bool passes = false;
    std::string reason;         // why it failed
    RatMatrix coordinates;      // P_A of each B-basis vector, in the A-basis
    IntMatrix p_A;              // integral coordinates when they are integral
    Integer t_p_A{0};           // |det p_A| when passing
};

/// Does the orthogonal projection B_{d-1}(R) -> A_R come from a real
/// isomorphism B_{d-1}(Z) -> A?
HypothesisResult hypothesis_check(const CellComplex& c, const SubgroupSpec& a);

struct SumDecompositionReport {
    IdentityReport identity;              // det L_A  vs  sum_T det L_A^T
    std::vector<Rational> tree_terms;     // det L_A^T per tree, enumeration order
    std::optional<Rational> mu_sum;       // sum_T mu_T, unweighted and A = B only
};

/// det L_A = sum_T det L_A^T; with A absent, A = B_{d-1}(X; Z).
SumDecompositionReport verify_sum_decomposition(const CellComplex& c, const WeightAssignment& w,
                                                const std::optional<SubgroupSpec>& a = std::nullopt);

struct TreePrefactor {
    SubcomplexSpec tree;
    Integer theta_T;
    Integer t_p_A_T;        // t of p_A restricted to B_{d-1}(T; Z)
    Integer index;          // [B_{d-1}(X; Z) : B_{d-1}(T; Z)]
    Rational gamma_local;   // mu(A) t(p_A^T)^2 / theta_T^2
};

struct GeneralizedReport {
    IdentityReport identity;  // det L_A  vs  gamma_A sum_T w_T
    Rational mu_A;
    Integer t_p_A;
    Rational gamma_A;
    std::vector<TreePrefactor> trees;
    /// gamma_local == gamma_A and t(p_A^T)/t(p_A) == index == theta_T/theta_X for every tree.
    bool tree_local_holds = false;
    bool holds() const { return identity.holds() && tree_local_holds; }
};

/// Throws PreconditionError when the hypothesis fails.
GeneralizedReport verify_generalized(const CellComplex& c, const WeightAssignment& w, const SubgroupSpec& a);

/// Per-tree checks: det L^T = (w_T / theta_T^2) det(D_T^T D_T), and
/// mu(B_{d-1}(T; Z)) = det(D_T^T D_T).
struct TreeFactorization {
    Rational det_tree_laplacian;
    Rational factorized;
    Rational mu_T;
    Integer gram_D_T;
    bool holds() const { return det_tree_laplacian == factorized && mu_T == Rational(gram_D_T); }
};

TreeFactorization tree_factorization(const CellComplex& c, const SubcomplexSpec& t, const WeightAssignment& w);

class NotGoodError : public PreconditionError {
public:
    NotGoodError(Index cell, const std::string& what) : PreconditionError(what), cell_(cell) {}
    Index cell() const { return cell_; }

private:
    Index cell_;
};

/// Goodness of W for T in multiplicative form: r_g * (min_{a in T} r_a)^k >
/// prod_{a in T} r_a for every g outside T, k the number of d-cells.
/// Throws NotGoodError naming the first violating cell.
void require_good(const CellComplex& c, const SubcomplexSpec& t, const WeightAssignment& w);

struct LowTemperatureReport {
    std::vector<unsigned> betas;
    std::vector<Rational> ratios;      // det L^T(beta W) / det L(beta W)
    std::vector<Rational> deviations;  // |ratio - 1|
    Rational tolerance;
    bool strictly_decreasing = false;
    bool within_tolerance = false;     // final deviation < tolerance
    bool ok() const { return strictly_decreasing && within_tolerance; }
};

LowTemperatureReport low_temperature_check(const CellComplex& c, const SubcomplexSpec& t,
                                           const WeightAssignment& w, const std::vector<unsigned>& betas,
                                           const Rational& tolerance = Rational(1, 1000000));

}  // namespace cwk

#endif  // CWKIRCH_MATRIX_TREE_HPP
