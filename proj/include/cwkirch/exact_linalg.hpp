#ifndef CWKIRCH_EXACT_LINALG_HPP
#define CWKIRCH_EXACT_LINALG_HPP

// Exact linear algebra over Z and Q.
//
// Field routines (row reduction, rank, determinant, solve, inverse) are
// templates over the Eigen scalar and are meant for Rational; the lattice
// routines (Smith/Hermite forms, lattice bases, indices) work over Integer.
// Lattices are always carried as the columns of an integer matrix.

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "cwkirch/error.hpp"
#include "cwkirch/scalar.hpp"

namespace cwk {

// ---------------------------------------------------------------------------
// Field elimination
// ---------------------------------------------------------------------------

template <typename Scalar>
struct Echelon {
    Matrix<Scalar> reduced;          // reduced row echelon form
    std::vector<Index> pivot_cols;   // one per nonzero row, increasing
};

/// Gauss-Jordan elimination; pivots are the first nonzero entry in each column.
template <typename Derived>
Echelon<typename Derived::Scalar> row_reduce(const Eigen::MatrixBase<Derived>& m)
{
    using Scalar = typename Derived::Scalar;
    Echelon<Scalar> out{m, {}};
    Matrix<Scalar>& a = out.reduced;
    Index row = 0;
    for (Index col = 0; col < a.cols() && row < a.rows(); ++col) {
        Index piv = row;
        while (piv < a.rows() && a(piv, col) == 0)
            ++piv;
        if (piv == a.rows())
            continue;
        if (piv != row)
            a.row(piv).swap(a.row(row));
        const Scalar inv = Scalar(1) / a(row, col);
        a.row(row) *= inv;
        for (Index i = 0; i < a.rows(); ++i) {
            if (i == row || a(i, col) == 0)
                continue;
            const Scalar f = a(i, col);
            a.row(i) -= f * a.row(row);
        }
        out.pivot_cols.push_back(col);
        ++row;
    }
    return out;
}

template <typename Derived>
Index rank_q(const Eigen::MatrixBase<Derived>& m)
{
    return static_cast<Index>(row_reduce(m).pivot_cols.size());
}

template <typename Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& m)
{
    using Scalar = typename Derived::Scalar;
    if (m.rows() != m.cols())
        throw PreconditionError("determinant of a non-square matrix");
    Matrix<Scalar> a = m;
    Scalar det(1);
    const Index n = a.rows();
    for (Index k = 0; k < n; ++k) {
        Index piv = k;
        while (piv < n && a(piv, k) == 0)
            ++piv;
        if (piv == n)
            return Scalar(0);
        if (piv != k) {
            a.row(piv).swap(a.row(k));
            det = -det;
        }
        det *= a(k, k);
        for (Index i = k + 1; i < n; ++i) {
            if (a(i, k) == 0)
                continue;
            const Scalar f = a(i, k) / a(k, k);
            a.row(i).tail(n - k) -= f * a.row(k).tail(n - k);
        }
    }
    return det;
}

/// Some X with a * X = b, or nullopt when the system is inconsistent.
template <typename DerivedA, typename DerivedB>
std::optional<Matrix<typename DerivedA::Scalar>> solve(const Eigen::MatrixBase<DerivedA>& a,
                                                       const Eigen::MatrixBase<DerivedB>& b)
{
    using Scalar = typename DerivedA::Scalar;
    if (a.rows() != b.rows())
        throw PreconditionError("solve: row count mismatch");
    Matrix<Scalar> aug(a.rows(), a.cols() + b.cols());
    aug << a, b;
    const Echelon<Scalar> e = row_reduce(aug);
    Matrix<Scalar> x = Matrix<Scalar>::Zero(a.cols(), b.cols());
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) {
        const Index p = e.pivot_cols[i];
        if (p >= a.cols())
            return std::nullopt;
        x.row(p) = e.reduced.row(static_cast<Index>(i)).tail(b.cols());
    }
    return x;
}

template <typename Derived>
Matrix<typename Derived::Scalar> inverse(const Eigen::MatrixBase<Derived>& m)
{
    using Scalar = typename Derived::Scalar;
    if (m.rows() != m.cols())
        throw PreconditionError("inverse of a non-square matrix");
    auto x = solve(m, Matrix<Scalar>::Identity(m.rows(), m.rows()));
    if (!x || rank_q(m) != m.rows())
        throw DegenerateError("inverse of a singular matrix");
    return *x;
}

/// Basis (as columns) of the rational null space of m.
template <typename Derived>
Matrix<typename Derived::Scalar> null_space_q(const Eigen::MatrixBase<Derived>& m)
{
    using Scalar = typename Derived::Scalar;
    const Echelon<Scalar> e = row_reduce(m);
    std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
    for (Index p : e.pivot_cols)
        is_pivot[static_cast<std::size_t>(p)] = true;
    const Index nfree = m.cols() - static_cast<Index>(e.pivot_cols.size());
    Matrix<Scalar> basis = Matrix<Scalar>::Zero(m.cols(), nfree);
    Index k = 0;
    for (Index f = 0; f < m.cols(); ++f) {
        if (is_pivot[static_cast<std::size_t>(f)])
            continue;
        basis(f, k) = Scalar(1);
        for (std::size_t i = 0; i < e.pivot_cols.size(); ++i)
            basis(e.pivot_cols[i], k) = -e.reduced(static_cast<Index>(i), f);
        ++k;
    }
    return basis;
}

/// det(V^T diag(metric) V) for the columns of V; the empty family gives 1.
template <typename Derived>
Rational gram_determinant_of(const Eigen::MatrixBase<Derived>& vectors,
                             const std::optional<RatVector>& metric = std::nullopt)
{
    const RatMatrix v = vectors.template cast<Rational>();
    if (v.cols() == 0)
        return Rational(1);
    RatMatrix g;
    if (metric) {
        if (metric->size() != v.rows())
            throw PreconditionError("gram determinant: metric has the wrong size");
        g = v.transpose() * metric->asDiagonal() * v;
    } else {
        g = v.transpose() * v;
    }
    return determinant(g);
}

// ---------------------------------------------------------------------------
// Integer lattices
// ---------------------------------------------------------------------------

/// U * M * V == S with U, V unimodular and S diagonal, d_1 | d_2 | ... >= 0.
struct SNFResult {
    IntMatrix U;
    IntMatrix V;
    IntMatrix S;

    std::vector<Integer> invariant_factors() const;  // the nonzero diagonal
    Index rank() const { return static_cast<Index>(invariant_factors().size()); }
};

/// Z-basis of a lattice, one vector per column of `vectors`.
struct LatticeBasis {
    IntMatrix vectors;

    LatticeBasis() = default;
    explicit LatticeBasis(IntMatrix v) : vectors(std::move(v)) {}
    LatticeBasis(Index ambient_dim, Index rank) : vectors(ambient_dim, rank) {}

    Index ambient_dim() const { return vectors.rows(); }
    Index rank() const { return vectors.cols(); }
};

/// Smith normal form. Pivot is always the nonzero entry of least absolute
/// value in the active block, ties broken by (row, col); output is therefore
/// a deterministic function of the input.
SNFResult snf(const IntMatrix& m);

/// Rank over Q.
Index rank(const IntMatrix& m);

/// Fraction-free (Bareiss) determinant.
Integer determinant_z(const IntMatrix& m);

/// Order of the torsion subgroup of coker(m) = product of nonzero invariant factors.
Integer torsion_order_cokernel(const IntMatrix& m);

/// Column-style Hermite normal form of the lattice spanned by the columns of
/// m: lower echelon, positive pivots, entries left of a pivot reduced into
/// [0, pivot). Zero columns are dropped.
IntMatrix column_hnf(const IntMatrix& m);

/// Z-basis of m(Z^cols) in Z^rows.
LatticeBasis image_lattice_basis(const IntMatrix& m);

/// Saturated Z-basis of ker(m) in Z^cols (taken from the trailing columns of
/// the Smith transform V, then put in column Hermite form).
LatticeBasis kernel_lattice_basis(const IntMatrix& m);

/// Squared covolume of the lattice under the diagonal metric (identity when
/// omitted). Throws DegenerateError when the vectors are dependent.
Rational gram_determinant(const LatticeBasis& b, const std::optional<RatVector>& metric = std::nullopt);

/// Index [sup : sub] of a full-rank sublattice.
Integer inclusion_index(const LatticeBasis& sub, const LatticeBasis& sup);

/// Embeds vectors indexed by `cells` into Z^n (or Q^n): row i of `v` goes to row cells[i].
template <typename Derived>
Matrix<typename Derived::Scalar> scatter_rows(const Eigen::MatrixBase<Derived>& v,
                                              const std::vector<Index>& cells, Index n)
{
    using Scalar = typename Derived::Scalar;
    Matrix<Scalar> out = Matrix<Scalar>::Zero(n, v.cols());
    for (std::size_t i = 0; i < cells.size(); ++i)
        out.row(cells[i]) = v.row(static_cast<Index>(i));
    return out;
}

}  // namespace cwk

#endif  // CWKIRCH_EXACT_LINALG_HPP
