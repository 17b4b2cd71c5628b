#include "cwkirch/torsion.hpp"

#include <random>

#include "cwkirch/error.hpp"
#include "cwkirch/exact_linalg.hpp"
#include "cwkirch/spanning_trees.hpp"

namespace cwk {

namespace {

std::size_t sz(int k) { return static_cast<std::size_t>(k); }

// Z-basis of B_k(X; Z), n_k x rank.
IntMatrix boundary_basis(const CellComplex& c, int k) { return image_lattice_basis(c.boundary_or_zero(k + 1)).vectors; }

IntMatrix cycle_basis(const CellComplex& c, int k) { return kernel_lattice_basis(c.boundary_or_zero(k)).vectors; }

std::vector<Index> complement(const SubcomplexSpec& s, Index n)
{
    std::vector<Index> out;
    for (Index i = 0; i < n; ++i)
        if (!s.contains(i))
            out.push_back(i);
    return out;
}

IntMatrix unimodular_inverse(const IntMatrix& u) { return to_integer(inverse(to_rational(u))); }

// Horizontal concatenation of two matrices with equal row counts.
template <typename S>
Matrix<S> hcat(const Matrix<S>& a, const Matrix<S>& b)
{
    Matrix<S> out(a.rows(), a.cols() + b.cols());
    out << a, b;
    return out;
}

// det of the operator M on span(B) (B full column rank, M B in span B).
Rational operator_det(const RatMatrix& b, const RatMatrix& m)
{
    if (b.cols() == 0)
        return Rational(1);
    return determinant(RatMatrix(b.transpose() * m * b)) / determinant(RatMatrix(b.transpose() * b));
}

// Gram determinant, in the metric diag(r), of the parts of the columns of h
// that are r-orthogonal to span(B).
Rational harmonic_gram(const RatMatrix& h, const RatMatrix& b, const RatVector& r)
{
    if (h.cols() == 0)
        return Rational(1);
    RatMatrix rep = h;
    if (b.cols() > 0) {
        const RatMatrix br = b.transpose() * r.asDiagonal();
        rep -= b * inverse(RatMatrix(br * b)) * (br * h);
    }
    return gram_determinant_of(rep, r);
}

Rational product(const RatVector& r)
{
    Rational p(1);
    for (Index i = 0; i < r.size(); ++i)
        p *= r(i);
    return p;
}

Rational signed_power(const Rational& x, int k) { return k % 2 == 0 ? x : Rational(1) / x; }

AllDegreeWeights unit_weights(const CellComplex& c)
{
    AllDegreeWeights w;
    for (int k = 0; k <= c.dim(); ++k)
        w.push_back(RatVector::Ones(c.cell_count(k)));
    return w;
}

void check_weights(const CellComplex& c, const AllDegreeWeights& w)
{
    if (w.size() != sz(c.dim() + 1))
        throw PreconditionError("torsion weights must cover every degree 0.." + std::to_string(c.dim()));
    for (int k = 0; k <= c.dim(); ++k) {
        if (w[sz(k)].size() != c.cell_count(k))
            throw PreconditionError("torsion weights in degree " + std::to_string(k) + " have the wrong length");
        for (Index i = 0; i < w[sz(k)].size(); ++i)
            if (w[sz(k)](i) <= 0)
                throw PreconditionError("torsion weights must be positive");
    }
}

// Product of elementary integer operations on the identity.
IntMatrix random_unimodular(Index m, std::mt19937_64& rng)
{
    IntMatrix u = IntMatrix::Identity(m, m);
    if (m == 0)
        return u;
    std::uniform_int_distribution<Index> pick(0, m - 1);
    std::uniform_int_distribution<int> coef(-2, 2);
    for (Index s = 0; s < 3 * m; ++s) {
        const Index i = pick(rng);
        const Index j = pick(rng);
        if (i != j)
            u.row(i) += Integer(coef(rng)) * u.row(j);
    }
    for (Index i = 0; i < m; ++i)
        if (coef(rng) < 0)
            u.row(i) = -u.row(i);
    return u;
}

IntMatrix random_integer(Index rows, Index cols, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> coef(-3, 3);
    IntMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j)
            m(i, j) = coef(rng);
    return m;
}

struct TruncationDegree {
    Integer theta_T{1};
    Integer theta_V{1};
    Integer t_q{1};
    Rational chi{1};
};

std::vector<TruncationDegree> truncation_degrees(const CellComplex& c, const TruncationData& td,
                                                 const CombinatorialBasis& h)
{
    validate_truncation(c, td);
    const int d = c.dim();
    std::vector<TruncationDegree> out;
    for (int k = 0; k <= d; ++k) {
        TruncationDegree t;
        const SubcomplexSpec& tk = td.trees[sz(k)];
        const SubcomplexSpec& vk = td.truncations[sz(k)];
        if (k >= 1) {
            t.theta_T = torsion_order_cokernel(select_columns(c.boundary(k), tk.top_cells()));
            t.theta_V = torsion_order_cokernel(select_columns(c.boundary(k), vk.top_cells()));
        }

        const std::vector<Index> rows = complement(vk, c.cell_count(k));
        const std::vector<Index> cols = k < d ? td.trees[sz(k + 1)].top_cells() : std::vector<Index>{};
        if (rows.size() != cols.size())
            throw PreconditionError("invalid truncation: q_" + std::to_string(k) + " is not square");
        const IntMatrix q = select_rows(select_columns(c.boundary_or_zero(k + 1), cols), rows);
        const Integer det = determinant_z(q);
        if (det == 0)
            throw PreconditionError("invalid truncation: q_" + std::to_string(k) + " is singular");
        t.t_q = mp::abs(det);

        // Coordinates of a Z-basis of Z_k(V^k; Z) = H_k(V^k; Z) in the classes of h_k.
        const IntMatrix zv = scatter_rows(
            kernel_lattice_basis(select_columns(c.boundary_or_zero(k), vk.top_cells())).vectors, vk.top_cells(),
            c.cell_count(k));
        const IntMatrix& hk = h.degree(k);
        if (hk.cols() > 0) {
            const auto coords = solve(to_rational(hcat(hk, boundary_basis(c, k))), to_rational(zv));
            if (!coords)
                throw DegenerateError("truncation cycles are not in span(h, B)");
            const Rational det_chi = determinant(RatMatrix(coords->topRows(hk.cols())));
            t.chi = det_chi * det_chi;
        }
        out.push_back(std::move(t));
    }
    return out;
}

struct LaplacianDegree {
    Rational det_laplacian;
    Rational eta;
    Rational weight_product;
};

std::vector<LaplacianDegree> laplacian_degrees(const CellComplex& c, const CombinatorialBasis& h,
                                               const AllDegreeWeights& w)
{
    const int d = c.dim();
    std::vector<LaplacianDegree> out;
    for (int k = 0; k <= d; ++k) {
        const RatMatrix b = to_rational(boundary_basis(c, k));
        const RatVector& rk = w[sz(k)];
        LaplacianDegree ld;
        if (k < d) {
            const RatMatrix up = to_rational(c.boundary(k + 1));
            RatVector rinv(w[sz(k + 1)].size());
            for (Index i = 0; i < rinv.size(); ++i)
                rinv(i) = Rational(1) / w[sz(k + 1)](i);
            // D_{k+1} diag(1/r_{k+1}) D_{k+1}^T diag(r_k), restricted to B_k.
            const RatMatrix l = up * rinv.asDiagonal() * up.transpose() * rk.asDiagonal();
            ld.det_laplacian = operator_det(b, l);
        } else {
            ld.det_laplacian = Rational(1);
        }
        ld.eta = harmonic_gram(to_rational(h.degree(k)), b, rk);
        ld.weight_product = product(rk);
        out.push_back(std::move(ld));
    }
    return out;
}

Rational tree_sum(const CellComplex& c, int k)
{
    if (k >= c.dim())
        return Rational(1);
    const CellComplex sk = skeleton(c, k + 1);
    Rational s(0);
    for_each_spanning_tree(sk, [&](const SubcomplexSpec& t) {
        const Integer th = tree_theta(sk, t);
        s += Rational(th * th);
    });
    return s;
}

}  // namespace

CombinatorialBasis default_combinatorial_basis(const CellComplex& c)
{
    c.require_valid();
    CombinatorialBasis h;
    for (int k = 0; k <= c.dim(); ++k) {
        const IntMatrix z = cycle_basis(c, k);
        if (z.cols() == 0) {
            h.cycles.push_back(IntMatrix(c.cell_count(k), 0));
            continue;
        }
        // Boundaries in cycle coordinates; integral because z is saturated.
        const auto y = solve(to_rational(z), to_rational(c.boundary_or_zero(k + 1)));
        if (!y)
            throw DegenerateError("boundaries are not cycles");
        const SNFResult s = snf(to_integer(*y));
        const Index r = s.rank();
        const IntMatrix uinv = unimodular_inverse(s.U);
        h.cycles.push_back(z * uinv.rightCols(z.cols() - r));
    }
    return h;
}

void check_basis(const CellComplex& c, const CombinatorialBasis& h)
{
    c.require_valid();
    if (h.cycles.size() != sz(c.dim() + 1))
        throw PreconditionError("combinatorial basis must cover every degree 0.." + std::to_string(c.dim()));
    for (int k = 0; k <= c.dim(); ++k) {
        const IntMatrix& hk = h.degree(k);
        if (hk.rows() != c.cell_count(k))
            throw PreconditionError("combinatorial basis in degree " + std::to_string(k) + " has the wrong length");
        if (hk.cols() != betti(c, k))
            throw PreconditionError("combinatorial basis in degree " + std::to_string(k) + " must have " +
                                    std::to_string(betti(c, k)) + " vectors");
        if (!(c.boundary_or_zero(k) * hk).isZero())
            throw PreconditionError("combinatorial basis in degree " + std::to_string(k) + " contains a non-cycle");
        const IntMatrix b = boundary_basis(c, k);
        const IntMatrix hb = hcat(hk, b);
        if (rank(hb) != hb.cols())
            throw PreconditionError("combinatorial basis classes in degree " + std::to_string(k) +
                                    " are dependent in homology");
        // h spans the free part iff [Z_k : h + B_k] is the torsion order.
        const LatticeBasis z(cycle_basis(c, k));
        if (z.rank() > 0 &&
            inclusion_index(LatticeBasis(hb), z) != torsion_order_cokernel(c.boundary_or_zero(k + 1)))
            throw PreconditionError("combinatorial basis classes in degree " + std::to_string(k) +
                                    " do not generate H_k(Z)_0");
    }
}

Rational milnor_torsion_squared(const CellComplex& c, const CombinatorialBasis& h,
                                std::optional<std::uint64_t> resample_seed)
{
    check_basis(c, h);
    const int d = c.dim();
    std::mt19937_64 rng(resample_seed.value_or(0));

    std::vector<RatMatrix> b;
    for (int k = 0; k <= d; ++k) {
        IntMatrix bk = boundary_basis(c, k);
        if (resample_seed)
            bk = bk * random_unimodular(bk.cols(), rng);
        b.push_back(to_rational(bk));
    }

    Rational tau(1);
    for (int k = 0; k <= d; ++k) {
        RatMatrix hk = to_rational(h.degree(k));
        if (resample_seed)
            hk += b[sz(k)] * to_rational(random_integer(b[sz(k)].cols(), hk.cols(), rng));

        RatMatrix lifts(c.cell_count(k), 0);
        if (k >= 1) {
            const RatMatrix bd = to_rational(c.boundary(k));
            const auto x = solve(bd, b[sz(k - 1)]);
            if (!x)
                throw DegenerateError("boundary basis does not lift");
            lifts = *x;
            if (resample_seed) {
                const RatMatrix ker = null_space_q(bd);
                lifts += ker * to_rational(random_integer(ker.cols(), lifts.cols(), rng));
            }
        }

        RatMatrix m(c.cell_count(k), b[sz(k)].cols() + hk.cols() + lifts.cols());
        m << b[sz(k)], hk, lifts;
        if (m.rows() != m.cols())
            throw DegenerateError("change-of-basis matrix in degree " + std::to_string(k) + " is not square");
        const Rational det = determinant(m);
        if (det == 0)
            throw DegenerateError("change-of-basis matrix in degree " + std::to_string(k) + " is singular");
        tau *= signed_power(det, k);
    }
    return tau * tau;
}

Rational torsion_squared_laplacian(const CellComplex& c, const CombinatorialBasis& h,
                                   const std::optional<AllDegreeWeights>& w)
{
    check_basis(c, h);
    const AllDegreeWeights ww = w ? *w : unit_weights(c);
    check_weights(c, ww);
    Rational tau2(1);
    int k = 0;
    for (const LaplacianDegree& ld : laplacian_degrees(c, h, ww))
        tau2 *= signed_power(ld.det_laplacian * ld.eta / ld.weight_product, k++);
    return tau2;
}

Rational torsion_squared_tree(const CellComplex& c, const CombinatorialBasis& h)
{
    check_basis(c, h);
    const AllDegreeWeights unit = unit_weights(c);
    Rational tau2(1);
    for (int k = 0; k <= c.dim(); ++k) {
        const Rational eta = harmonic_gram(to_rational(h.degree(k)), to_rational(boundary_basis(c, k)), unit[sz(k)]);
        const Rational mu = gram_determinant_of(boundary_basis(c, k));
        const Integer theta = torsion_order_cokernel(c.boundary_or_zero(k + 1));
        const Rational delta = eta * mu / Rational(theta * theta);
        tau2 *= signed_power(delta * tree_sum(c, k), k);
    }
    return tau2;
}

TruncationData find_truncation(const CellComplex& c)
{
    c.require_valid();
    std::vector<SubcomplexSpec> trees{SubcomplexSpec{}};
    for (int k = 1; k <= c.dim(); ++k)
        trees.push_back(find_spanning_tree(skeleton(c, k)).top_cells);
    return find_truncation(c, trees);
}

TruncationData find_truncation(const CellComplex& c, const std::vector<SubcomplexSpec>& trees)
{
    c.require_valid();
    const int d = c.dim();
    if (trees.size() != sz(d + 1) || trees[0].size() != 0)
        throw PreconditionError("need one tree per degree 0.." + std::to_string(d) + ", with an empty degree-0 tree");

    TruncationData td;
    td.trees = trees;
    td.truncations.push_back(SubcomplexSpec({0}));
    for (int k = 1; k <= d; ++k) {
        const CellComplex sk = skeleton(c, k);
        const SubcomplexSpec& t = trees[sz(k)];
        const RatMatrix tbar = tbar_matrix(sk, t).matrix;
        const Index beta = betti(c, k);
        RatMatrix span = to_rational(boundary_basis(c, k));
        Index base_rank = rank_q(span);
        std::vector<Index> cells = t.top_cells();
        Index added = 0;
        for (Index b = 0; b < c.cell_count(k) && added < beta; ++b) {
            if (t.contains(b))
                continue;
            RatMatrix candidate = hcat(span, RatMatrix(tbar.col(b)));
            const Index r = rank_q(candidate);
            if (r > base_rank) {
                span = std::move(candidate);
                base_rank = r;
                cells.push_back(b);
                ++added;
            }
        }
        if (added < beta)
            throw DegenerateError("tree cycles do not extend to a basis of Z_" + std::to_string(k));
        td.truncations.emplace_back(std::move(cells));
    }
    validate_truncation(c, td);
    return td;
}

void validate_truncation(const CellComplex& c, const TruncationData& td)
{
    c.require_valid();
    const int d = c.dim();
    if (td.trees.size() != sz(d + 1) || td.truncations.size() != sz(d + 1))
        throw PreconditionError("truncation data must cover every degree 0.." + std::to_string(d));
    if (td.trees[0].size() != 0)
        throw PreconditionError("the degree-0 tree must be empty");
    for (int k = 0; k <= d; ++k) {
        const std::string deg = std::to_string(k);
        const SubcomplexSpec& t = td.trees[sz(k)];
        const SubcomplexSpec& v = td.truncations[sz(k)];
        for (Index b : v.top_cells())
            if (b < 0 || b >= c.cell_count(k))
                throw PreconditionError("truncation V^" + deg + " has an out-of-range cell");
        for (Index b : t.top_cells())
            if (!v.contains(b))
                throw PreconditionError("tree T^" + deg + " is not contained in V^" + deg);
        if (k >= 1) {
            if (!is_spanning_tree(skeleton(c, k), t))
                throw PreconditionError("T^" + deg + " is not a spanning tree of the " + deg + "-skeleton");
            if (rank(select_columns(c.boundary(k), v.top_cells())) != rank(c.boundary(k)))
                throw PreconditionError("V^" + deg + " changes homology in degree " + std::to_string(k - 1));
        }
        const IntMatrix zv = scatter_rows(
            kernel_lattice_basis(select_columns(c.boundary_or_zero(k), v.top_cells())).vectors, v.top_cells(),
            c.cell_count(k));
        const IntMatrix b = boundary_basis(c, k);
        if (zv.cols() != betti(c, k) || rank(hcat(b, zv)) != b.cols() + zv.cols())
            throw PreconditionError("V^" + deg + " does not carry H_" + deg + "(X; R) isomorphically");
    }
}

Rational torsion_squared_truncation(const CellComplex& c, const TruncationData& td)
{
    return torsion_squared_truncation(c, td, default_combinatorial_basis(c));
}

Rational torsion_squared_truncation(const CellComplex& c, const TruncationData& td, const CombinatorialBasis& h)
{
    check_basis(c, h);
    Rational tau2(1);
    int k = 0;
    for (const TruncationDegree& t : truncation_degrees(c, td, h)) {
        const Rational num(t.theta_T * t.theta_T * t.t_q * t.t_q);
        const Rational den = Rational(t.theta_V * t.theta_V) * t.chi;
        tau2 *= signed_power(num / den, k++);
    }
    return tau2;
}

bool TorsionReport::agree() const
{
    return tau2_milnor == tau2_laplacian && tau2_milnor == tau2_truncation && (!tau2_tree || *tau2_tree == tau2_milnor);
}

TorsionReport torsion_report(const CellComplex& c, const std::optional<CombinatorialBasis>& h,
                             const std::optional<TruncationData>& td, const std::optional<AllDegreeWeights>& w)
{
    c.require_valid();
    const CombinatorialBasis hb = h ? *h : default_combinatorial_basis(c);
    const TruncationData tdata = td ? *td : find_truncation(c);
    const AllDegreeWeights unit = unit_weights(c);
    const AllDegreeWeights ww = w ? *w : unit;
    check_weights(c, ww);

    TorsionReport rep;
    rep.weighted = false;
    for (int k = 0; k <= c.dim(); ++k)
        for (Index i = 0; i < ww[sz(k)].size(); ++i)
            rep.weighted = rep.weighted || ww[sz(k)](i) != 1;

    rep.tau2_milnor = milnor_torsion_squared(c, hb);
    rep.tau2_laplacian = torsion_squared_laplacian(c, hb, ww);
    if (!rep.weighted)
        rep.tau2_tree = torsion_squared_tree(c, hb);
    rep.tau2_truncation = torsion_squared_truncation(c, tdata, hb);

    const std::vector<LaplacianDegree> lap = laplacian_degrees(c, hb, ww);
    const std::vector<TruncationDegree> tr = truncation_degrees(c, tdata, hb);
    for (int k = 0; k <= c.dim(); ++k) {
        TorsionDegree td_k;
        td_k.k = k;
        td_k.eta = harmonic_gram(to_rational(hb.degree(k)), to_rational(boundary_basis(c, k)), unit[sz(k)]);
        td_k.mu = gram_determinant_of(boundary_basis(c, k));
        td_k.theta = torsion_order_cokernel(c.boundary_or_zero(k + 1));
        td_k.delta = td_k.eta * td_k.mu / Rational(td_k.theta * td_k.theta);
        td_k.det_laplacian = lap[sz(k)].det_laplacian;
        td_k.tree_sum = tree_sum(c, k);
        td_k.theta_T = tr[sz(k)].theta_T;
        td_k.theta_V = tr[sz(k)].theta_V;
        td_k.t_q = tr[sz(k)].t_q;
        td_k.chi = tr[sz(k)].chi;
        rep.degrees.push_back(std::move(td_k));
    }
    return rep;
}

}  // namespace cwk
