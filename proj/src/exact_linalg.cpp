#include "cwkirch/exact_linalg.hpp"

#include <algorithm>

namespace cwk {

namespace {

Integer floor_div(const Integer& a, const Integer& b)
{
    Integer q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        q -= 1;
    return q;
}

struct Pivot {
    Index row = -1;
    Index col = -1;
};

// Nonzero entry of least absolute value in s[t:, t:], first in row-major order.
Pivot smallest_entry(const IntMatrix& s, Index t)
{
    Pivot best;
    Integer best_abs;
    for (Index i = t; i < s.rows(); ++i) {
        for (Index j = t; j < s.cols(); ++j) {
            if (s(i, j) == 0)
                continue;
            Integer a = mp::abs(s(i, j));
            if (best.row < 0 || a < best_abs) {
                best = {i, j};
                best_abs = std::move(a);
            }
        }
    }
    return best;
}

}  // namespace

std::vector<Integer> SNFResult::invariant_factors() const
{
    std::vector<Integer> out;
    for (Index k = 0; k < std::min(S.rows(), S.cols()); ++k)
        if (S(k, k) != 0)
            out.push_back(S(k, k));
    return out;
}

SNFResult snf(const IntMatrix& m)
{
    const Index rows = m.rows();
    const Index cols = m.cols();
    SNFResult r{IntMatrix::Identity(rows, rows), IntMatrix::Identity(cols, cols), m};
    IntMatrix& s = r.S;

    for (Index t = 0; t < std::min(rows, cols); ++t) {
        for (;;) {
            const Pivot p = smallest_entry(s, t);
            if (p.row < 0)
                return r;
            if (p.row != t) {
                s.row(p.row).swap(s.row(t));
                r.U.row(p.row).swap(r.U.row(t));
            }
            if (p.col != t) {
                s.col(p.col).swap(s.col(t));
                r.V.col(p.col).swap(r.V.col(t));
            }

            bool clean = true;
            for (Index i = t + 1; i < rows; ++i) {
                if (s(i, t) == 0)
                    continue;
                const Integer q = s(i, t) / s(t, t);
                s.row(i) -= q * s.row(t);
                r.U.row(i) -= q * r.U.row(t);
                clean = clean && s(i, t) == 0;
            }
            for (Index j = t + 1; j < cols; ++j) {
                if (s(t, j) == 0)
                    continue;
                const Integer q = s(t, j) / s(t, t);
                s.col(j) -= q * s.col(t);
                r.V.col(j) -= q * r.V.col(t);
                clean = clean && s(t, j) == 0;
            }
            if (!clean)
                continue;

            // Divisibility: fold an offending row into the pivot row and retry.
            Index bad = -1;
            for (Index i = t + 1; i < rows && bad < 0; ++i)
                for (Index j = t + 1; j < cols; ++j)
                    if (s(i, j) % s(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad < 0)
                break;
            s.row(t) += s.row(bad);
            r.U.row(t) += r.U.row(bad);
        }
        if (s(t, t) < 0) {
            s.row(t) = -s.row(t);
            r.U.row(t) = -r.U.row(t);
        }
    }
    return r;
}

Index rank(const IntMatrix& m) { return rank_q(to_rational(m)); }

Integer determinant_z(const IntMatrix& m)
{
    if (m.rows() != m.cols())
        throw PreconditionError("determinant of a non-square matrix");
    const Index n = m.rows();
    if (n == 0)
        return Integer(1);
    IntMatrix a = m;
    Integer sign(1);
    Integer prev(1);
    for (Index k = 0; k < n - 1; ++k) {
        if (a(k, k) == 0) {
            Index piv = k + 1;
            while (piv < n && a(piv, k) == 0)
                ++piv;
            if (piv == n)
                return Integer(0);
            a.row(piv).swap(a.row(k));
            sign = -sign;
        }
        for (Index i = k + 1; i < n; ++i) {
            for (Index j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

Integer torsion_order_cokernel(const IntMatrix& m)
{
    Integer t(1);
    for (const Integer& d : snf(m).invariant_factors())
        t *= d;
    return t;
}

IntMatrix column_hnf(const IntMatrix& m)
{
    IntMatrix h = m;
    const Index rows = h.rows();
    const Index cols = h.cols();
    Index k = 0;
    for (Index i = 0; i < rows && k < cols; ++i) {
        for (;;) {
            Index best = -1;
            for (Index j = k; j < cols; ++j)
                if (h(i, j) != 0 && (best < 0 || mp::abs(h(i, j)) < mp::abs(h(i, best))))
                    best = j;
            if (best < 0)
                break;
            if (best != k)
                h.col(best).swap(h.col(k));
            bool done = true;
            for (Index j = k + 1; j < cols; ++j) {
                if (h(i, j) == 0)
                    continue;
                const Integer q = h(i, j) / h(i, k);
                h.col(j) -= q * h.col(k);
                done = done && h(i, j) == 0;
            }
            if (done)
                break;
        }
        if (h(i, k) == 0)
            continue;
        if (h(i, k) < 0)
            h.col(k) = -h.col(k);
        for (Index j = 0; j < k; ++j) {
            const Integer q = floor_div(h(i, j), h(i, k));
            if (q != 0)
                h.col(j) -= q * h.col(k);
        }
        ++k;
    }
    return h.leftCols(k);
}

LatticeBasis image_lattice_basis(const IntMatrix& m) { return LatticeBasis(column_hnf(m)); }

LatticeBasis kernel_lattice_basis(const IntMatrix& m)
{
    const SNFResult r = snf(m);
    const Index rk = r.rank();
    return LatticeBasis(column_hnf(r.V.rightCols(m.cols() - rk)));
}

Rational gram_determinant(const LatticeBasis& b, const std::optional<RatVector>& metric)
{
    if (metric) {
        for (Index i = 0; i < metric->size(); ++i)
            if ((*metric)(i) <= 0)
                throw PreconditionError("gram determinant: metric must be positive");
    }
    Rational g = gram_determinant_of(b.vectors, metric);
    if (g == 0)
        throw DegenerateError("gram determinant: lattice vectors are dependent");
    return g;
}

Integer inclusion_index(const LatticeBasis& sub, const LatticeBasis& sup)
{
    if (sub.ambient_dim() != sup.ambient_dim())
        throw PreconditionError("inclusion index: ambient dimensions differ");
    if (sub.rank() != sup.rank())
        throw PreconditionError("inclusion index: ranks differ");
    if (rank(sup.vectors) != sup.rank() || rank(sub.vectors) != sub.rank())
        throw PreconditionError("inclusion index: dependent basis vectors");
    const auto c = solve(to_rational(sup.vectors), to_rational(sub.vectors));
    if (!c)
        throw PreconditionError("inclusion index: sub is not contained in span(sup)");
    for (Index i = 0; i < c->rows(); ++i)
        for (Index j = 0; j < c->cols(); ++j)
            if (!is_integral((*c)(i, j)))
                throw PreconditionError("inclusion index: sub is not a sublattice of sup");
    return mp::abs(to_integer(determinant(*c)));
}

}  // namespace cwk
