#ifndef CWKIRCH_CHAIN_COMPLEX_HPP
#define CWKIRCH_CHAIN_COMPLEX_HPP

// Finite CW complexes given by their integer cellular boundary matrices.

#include <optional>
#include <string>
#include <vector>

#include "cwkirch/exact_linalg.hpp"
#include "cwkirch/scalar.hpp"

namespace cwk {

struct BoundaryViolation {
    int degree;  // k: the offending product is D_{k-1} * D_k
    Index row;   // a (k-2)-cell
    Index col;   // a k-cell
    Integer value;
};

struct ValidationReport {
    std::vector<std::string> failures;
    std::vector<BoundaryViolation> boundary_violations;

    bool ok() const { return failures.empty(); }
    std::string summary() const;
};

/**
 * A finite CW complex of dimension d: cell counts n_0..n_d, boundary
 * matrices D_k : C_k -> C_{k-1} (shape n_{k-1} x n_k) for k = 1..d, and
 * optional positive weights (resistances) per degree, defaulting to 1.
 *
 * Construction never throws on mathematical defects; it records them in
 * validation(). Operations that need a valid complex call require_valid().
 */
class CellComplex {
public:
    CellComplex(std::vector<Index> cell_counts, std::vector<IntMatrix> boundaries,
                std::vector<std::optional<RatVector>> weights = {},
                std::vector<std::vector<std::string>> cell_names = {}, std::string name = {});

    int dim() const { return static_cast<int>(counts_.size()) - 1; }
    Index cell_count(int k) const;
    const std::vector<Index>& cell_counts() const { return counts_; }

    /// D_k for 1 <= k <= dim().
    const IntMatrix& boundary(int k) const;
    /// D_k extended by zero maps: D_0 is 0 x n_0 and D_{d+1} is n_d x 0.
    IntMatrix boundary_or_zero(int k) const;

    bool has_weights(int k) const;
    /// Resistances r_b on the k-cells; all ones when none were given.
    RatVector weights(int k) const;
    CellComplex with_weights(int k, const RatVector& r) const;
    CellComplex without_weights() const;

    const std::vector<std::vector<std::string>>& cell_names() const { return names_; }
    const std::string& name() const { return name_; }
    CellComplex renamed(std::string name) const;

    const ValidationReport& validation() const { return report_; }
    /// Throws PreconditionError listing every failure.
    void require_valid() const;

    bool operator==(const CellComplex& other) const;

private:
    std::vector<Index> counts_;
    std::vector<IntMatrix> boundaries_;  // boundaries_[k-1] = D_k
    std::vector<std::optional<RatVector>> weights_;
    std::vector<std::vector<std::string>> names_;
    std::string name_;
    ValidationReport report_;
};

/// A chain of the given degree with rational coordinates in the cell basis.
struct ChainVector {
    int degree = 0;
    RatVector coords;
};

ChainVector make_chain(const CellComplex& c, int degree, RatVector coords);

/// The d-cells retained by a subcomplex containing the full (d-1)-skeleton.
class SubcomplexSpec {
public:
    SubcomplexSpec() = default;
    explicit SubcomplexSpec(std::vector<Index> top_cells);  // sorted, deduplicated

    const std::vector<Index>& top_cells() const { return cells_; }
    std::size_t size() const { return cells_.size(); }
    bool contains(Index b) const;

    bool operator==(const SubcomplexSpec&) const = default;
    auto operator<=>(const SubcomplexSpec&) const = default;

private:
    std::vector<Index> cells_;
};

ValidationReport validate(const CellComplex& c);

/// The k-skeleton: boundaries D_1..D_k, weights and names restricted.
CellComplex skeleton(const CellComplex& c, int k);

/// Same (d-1)-skeleton, only the d-cells listed in s (D_d column-restricted).
CellComplex restrict_top(const CellComplex& c, const SubcomplexSpec& s);

/// beta_k = n_k - rank D_k - rank D_{k+1}.
Index betti(const CellComplex& c, int k);

/// sum_k (-1)^k n_k
Integer euler_characteristic(const CellComplex& c);

}  // namespace cwk

#endif  // CWKIRCH_CHAIN_COMPLEX_HPP
