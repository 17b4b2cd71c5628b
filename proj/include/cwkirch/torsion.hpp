#ifndef CWKIRCH_TORSION_HPP
#define CWKIRCH_TORSION_HPP

// Squared Reidemeister torsion of the real chain complex of a CW complex,
// based by its cells and by a combinatorial homology basis, computed by four
// independent routes. Only squares are reported: determinants are sign
// ambiguous, their squares are not.

#include <cstdint>
#include <optional>
#include <vector>

#include "cwkirch/chain_complex.hpp"

namespace cwk {

/// cycles[k] is n_k x beta_k: integer cycles whose classes freely generate
/// the torsion-free quotient of H_k(X; Z).
struct CombinatorialBasis {
    std::vector<IntMatrix> cycles;

    const IntMatrix& degree(int k) const { return cycles.at(static_cast<std::size_t>(k)); }
};

/// Resistances on every cell of every degree; index k holds the k-cells.
using AllDegreeWeights = std::vector<RatVector>;

CombinatorialBasis default_combinatorial_basis(const CellComplex& c);

/// Throws PreconditionError unless h has the right shapes, consists of
/// cycles, and its classes form a basis of H_k(Z)_0 in every degree.
void check_basis(const CellComplex& c, const CombinatorialBasis& h);

/// Milnor's alternating product of change-of-basis determinants, squared.
/// With a seed, the boundary bases, the lifts and the homology
/// representatives are re-chosen at random; the value must not move.
Rational milnor_torsion_squared(const CellComplex& c, const CombinatorialBasis& h,
                                std::optional<std::uint64_t> resample_seed = std::nullopt);

/// Alternating products of det L_k(W), of cell resistances and of the
/// harmonic Gram determinants eta_k. Unit weights when w is absent.
Rational torsion_squared_laplacian(const CellComplex& c, const CombinatorialBasis& h,
                                   const std::optional<AllDegreeWeights>& w = std::nullopt);

/// prod_{k=0..d} (delta_k sum_{T in trees of X^(k+1)} theta_T^2)^{(-1)^k},
/// where the k = d tree set is {X}.
Rational torsion_squared_tree(const CellComplex& c, const CombinatorialBasis& h);

/// Per degree k = 0..d: a spanning tree T^k of the k-skeleton (T^0 empty)
/// and a homology truncation V^k containing it, both as sets of k-cells.
struct TruncationData {
    std::vector<SubcomplexSpec> trees;
    std::vector<SubcomplexSpec> truncations;
};

/// Chooses the trees greedily, then extends each by cells whose tree cycles
/// extend a basis of B_k(X; R) to one of Z_k(X; R).
TruncationData find_truncation(const CellComplex& c);
/// Same, with trees[k] given for k >= 1 (trees[0] must be empty).
TruncationData find_truncation(const CellComplex& c, const std::vector<SubcomplexSpec>& trees);

/// Rank checks: T^k is a spanning tree of X^(k), T^k is contained in V^k,
/// and V^k -> X is an isomorphism on real homology in degrees <= k.
void validate_truncation(const CellComplex& c, const TruncationData& td);

/// prod_k (theta_{T^k}^2 t(q_k)^2 / (theta_{V^k}^2 chi_k))^{(-1)^k}.
/// chi_k is measured against the classes of h. Throws PreconditionError
/// when some q_k is not square and nonsingular.
Rational torsion_squared_truncation(const CellComplex& c, const TruncationData& td);
Rational torsion_squared_truncation(const CellComplex& c, const TruncationData& td, const CombinatorialBasis& h);

struct TorsionDegree {
    int k = 0;
    Rational eta;            // harmonic Gram determinant of h_k
    Rational mu;             // squared covolume of B_k(Z)
    Integer theta;           // torsion order of H_k(Z)
    Rational delta;          // eta mu / theta^2
    Rational det_laplacian;  // det L_k(W) on B_k
    Rational tree_sum;       // sum of theta_T^2 over trees of X^(k+1)
    Integer theta_T;
    Integer theta_V;
    Integer t_q;
    Rational chi;
};

struct TorsionReport {
    Rational tau2_milnor;
    Rational tau2_laplacian;
    std::optional<Rational> tau2_tree;  // only for unit weights
    Rational tau2_truncation;
    bool weighted = false;
    std::vector<TorsionDegree> degrees;

    bool agree() const;
};

TorsionReport torsion_report(const CellComplex& c, const std::optional<CombinatorialBasis>& h = std::nullopt,
                             const std::optional<TruncationData>& td = std::nullopt,
                             const std::optional<AllDegreeWeights>& w = std::nullopt);

}  // namespace cwk

#endif  // CWKIRCH_TORSION_HPP
