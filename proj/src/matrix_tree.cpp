#include "cwkirch/matrix_tree.hpp"

#include "cwkirch/error.hpp"
#include "cwkirch/exact_linalg.hpp"

namespace cwk {

namespace {

void require_top(const CellComplex& c)
{
    c.require_valid();
    if (c.dim() < 1)
        throw PreconditionError("Laplacians need dimension >= 1");
}

void require_weights(const CellComplex& c, const WeightAssignment& w)
{
    if (w.size() != c.cell_count(c.dim()))
        throw PreconditionError("weight assignment has " + std::to_string(w.size()) + " entries, complex has " +
                                std::to_string(c.cell_count(c.dim())) + " top cells");
}

// D diag(1/r) D^T on C_{d-1}.
RatMatrix full_laplacian(const IntMatrix& bd, const RatVector& rinv)
{
    const RatMatrix d = to_rational(bd);
    return d * rinv.asDiagonal() * d.transpose();
}

// Determinant of P_A L |_{A_R} for the operator `l` on C_{d-1}, A given by columns.
Rational compressed_det(const RatMatrix& a, const RatMatrix& l)
{
    if (a.cols() == 0)
        return Rational(1);
    return determinant(RatMatrix(a.transpose() * l * a)) / determinant(RatMatrix(a.transpose() * a));
}

RestrictedLaplacian restrict_to(const LatticeBasis& basis, const RatMatrix& l)
{
    const RatMatrix b = to_rational(basis.vectors);
    if (b.cols() == 0)
        return {basis, RatMatrix(0, 0), Rational(1)};
    const RatMatrix gram = b.transpose() * b;
    RatMatrix m = inverse(gram) * (b.transpose() * l * b);
    Rational det = determinant(m);
    return {basis, std::move(m), std::move(det)};
}

std::vector<Index> tree_cells(const SubcomplexSpec& t) { return t.top_cells(); }

}  // namespace

WeightAssignment::WeightAssignment(RatVector r) : r_(std::move(r))
{
    for (Index i = 0; i < r_.size(); ++i)
        if (r_(i) <= 0)
            throw PreconditionError("weight " + to_string(r_(i)) + " on cell " + std::to_string(i) +
                                    " is not positive");
}

WeightAssignment WeightAssignment::unit(Index n) { return WeightAssignment(RatVector::Ones(n)); }

WeightAssignment WeightAssignment::of(const CellComplex& c) { return WeightAssignment(c.weights(c.dim())); }

bool WeightAssignment::is_unit() const
{
    for (Index i = 0; i < r_.size(); ++i)
        if (r_(i) != 1)
            return false;
    return true;
}

WeightAssignment WeightAssignment::power(unsigned beta) const
{
    RatVector out(r_.size());
    for (Index i = 0; i < r_.size(); ++i)
        out(i) = pow(r_(i), beta);
    return WeightAssignment(std::move(out));
}

RatVector WeightAssignment::inverse() const
{
    RatVector out(r_.size());
    for (Index i = 0; i < r_.size(); ++i)
        out(i) = Rational(1) / r_(i);
    return out;
}

RestrictedLaplacian laplacian(const CellComplex& c, const WeightAssignment& w)
{
    require_top(c);
    require_weights(c, w);
    const IntMatrix& bd = c.boundary(c.dim());
    return restrict_to(image_lattice_basis(bd), full_laplacian(bd, w.inverse()));
}

RestrictedLaplacian tree_laplacian(const CellComplex& c, const SubcomplexSpec& t, const WeightAssignment& w)
{
    require_top(c);
    require_weights(c, w);
    if (!is_spanning_tree(c, t))
        throw PreconditionError("not a spanning tree");
    const IntMatrix& bd = c.boundary(c.dim());
    const RatVector rinv = w.inverse();
    return restrict_to(image_lattice_basis(bd),
                       full_laplacian(select_columns(bd, tree_cells(t)), select_rows(rinv, tree_cells(t))));
}

Integer mu_X(const CellComplex& c)
{
    require_top(c);
    return to_integer(gram_determinant(image_lattice_basis(c.boundary(c.dim()))));
}

Integer theta_X(const CellComplex& c)
{
    require_top(c);
    return torsion_order_cokernel(c.boundary(c.dim()));
}

Rational gamma_X(const CellComplex& c)
{
    const Integer th = theta_X(c);
    return Rational(mu_X(c)) / Rational(th * th);
}

IdentityReport verify_matrix_tree(const CellComplex& c, const WeightAssignment& w)
{
    const CellComplex cw = c.with_weights(c.dim(), w.r());
    Rational tree_sum(0);
    for_each_spanning_tree(cw, [&](const SubcomplexSpec& s) { tree_sum += tree_weight(cw, s, tree_theta(cw, s)); });
    return {"det L(W) = gamma_X * sum_T w_T", laplacian(c, w).det, gamma_X(c) * tree_sum};
}

HypothesisResult hypothesis_check(const CellComplex& c, const SubgroupSpec& a)
{
    require_top(c);
    const int d = c.dim();
    if (a.basis.rows() != c.cell_count(d - 1))
        throw PreconditionError("subgroup vectors must live in C_{d-1}");
    if (rank(a.basis) != a.basis.cols())
        throw PreconditionError("subgroup basis vectors are dependent");

    HypothesisResult out;
    const LatticeBasis b = image_lattice_basis(c.boundary(d));
    if (a.basis.cols() != b.rank()) {
        out.reason = "rank of A (" + std::to_string(a.basis.cols()) + ") differs from rank of B_{d-1} (" +
                     std::to_string(b.rank()) + ")";
        return out;
    }
    const RatMatrix am = to_rational(a.basis);
    if (am.cols() == 0) {
        out.passes = true;
        out.coordinates = RatMatrix(0, 0);
        out.p_A = IntMatrix(0, 0);
        out.t_p_A = 1;
        return out;
    }
    out.coordinates = inverse(RatMatrix(am.transpose() * am)) * (am.transpose() * to_rational(b.vectors));
    for (Index i = 0; i < out.coordinates.rows(); ++i)
        for (Index j = 0; j < out.coordinates.cols(); ++j)
            if (!is_integral(out.coordinates(i, j))) {
                out.reason = "projection of a B_{d-1}(Z) basis vector has non-integral A-coordinates";
                return out;
            }
    out.p_A = to_integer(out.coordinates);
    const Integer det = determinant_z(out.p_A);
    if (det == 0) {
        out.reason = "projection B_{d-1} -> A_R is not injective";
        return out;
    }
    out.passes = true;
    out.t_p_A = mp::abs(det);
    return out;
}

SumDecompositionReport verify_sum_decomposition(const CellComplex& c, const WeightAssignment& w,
                                                const std::optional<SubgroupSpec>& a)
{
    require_top(c);
    require_weights(c, w);
    const int d = c.dim();
    const IntMatrix& bd = c.boundary(d);
    RatMatrix abasis;
    if (a) {
        const HypothesisResult h = hypothesis_check(c, *a);
        if (!h.passes)
            throw PreconditionError("hypothesis failure: " + h.reason);
        abasis = to_rational(a->basis);
    } else {
        abasis = to_rational(image_lattice_basis(bd).vectors);
    }
    const RatVector rinv = w.inverse();

    SumDecompositionReport rep;
    rep.identity.name = a ? "det L_A = sum_T det L_A^T" : "det L = sum_T det L^T";
    rep.identity.lhs = compressed_det(abasis, full_laplacian(bd, rinv));
    rep.identity.rhs = Rational(0);
    Rational mu_sum(0);
    for_each_spanning_tree(c, [&](const SubcomplexSpec& s) {
        const auto cells = tree_cells(s);
        const Rational term =
            compressed_det(abasis, full_laplacian(select_columns(bd, cells), select_rows(rinv, cells)));
        rep.tree_terms.push_back(term);
        rep.identity.rhs += term;
        if (!a && w.is_unit())
            mu_sum += gram_determinant(image_lattice_basis(select_columns(bd, cells)));
    });
    if (!a && w.is_unit())
        rep.mu_sum = mu_sum;
    return rep;
}

GeneralizedReport verify_generalized(const CellComplex& c, const WeightAssignment& w, const SubgroupSpec& a)
{
    require_top(c);
    require_weights(c, w);
    const HypothesisResult h = hypothesis_check(c, a);
    if (!h.passes)
        throw PreconditionError("hypothesis failure: " + h.reason);

    const int d = c.dim();
    const IntMatrix& bd = c.boundary(d);
    const RatMatrix am = to_rational(a.basis);
    const LatticeBasis bx = image_lattice_basis(bd);
    const Integer th_x = theta_X(c);

    GeneralizedReport rep;
    rep.mu_A = gram_determinant_of(a.basis);
    rep.t_p_A = h.t_p_A;
    rep.gamma_A = rep.mu_A * Rational(h.t_p_A * h.t_p_A) / Rational(th_x * th_x);
    rep.identity.name = "det L_A = gamma_A * sum_T w_T";
    rep.identity.lhs = compressed_det(am, full_laplacian(bd, w.inverse()));

    const CellComplex cw = c.with_weights(d, w.r());
    Rational tree_sum(0);
    bool local_ok = true;
    const RatMatrix gram_inv = am.cols() ? inverse(RatMatrix(am.transpose() * am)) : RatMatrix(0, 0);
    for_each_spanning_tree(cw, [&](const SubcomplexSpec& s) {
        const Integer th_t = tree_theta(cw, s);
        tree_sum += tree_weight(cw, s, th_t);

        const IntMatrix dt = select_columns(bd, s.top_cells());
        TreePrefactor tp{s, th_t, Integer(1), Integer(1), Rational(0)};
        if (am.cols() > 0) {
            const RatMatrix coords = gram_inv * (am.transpose() * to_rational(dt));
            tp.t_p_A_T = mp::abs(to_integer(determinant(coords)));
            tp.index = inclusion_index(LatticeBasis(dt), bx);
        }
        tp.gamma_local = rep.mu_A * Rational(tp.t_p_A_T * tp.t_p_A_T) / Rational(th_t * th_t);
        local_ok = local_ok && tp.gamma_local == rep.gamma_A &&
                   Rational(tp.t_p_A_T, h.t_p_A) == Rational(tp.index) &&
                   Rational(tp.index) == Rational(th_t, th_x);
        rep.trees.push_back(std::move(tp));
    });
    rep.identity.rhs = rep.gamma_A * tree_sum;
    rep.tree_local_holds = local_ok;
    return rep;
}

TreeFactorization tree_factorization(const CellComplex& c, const SubcomplexSpec& t, const WeightAssignment& w)
{
    const CellComplex cw = c.with_weights(c.dim(), w.r());
    const IntMatrix dt = select_columns(c.boundary(c.dim()), t.top_cells());
    const Integer th = tree_theta(cw, t);
    TreeFactorization f;
    f.det_tree_laplacian = tree_laplacian(c, t, w).det;
    f.gram_D_T = determinant_z(IntMatrix(dt.transpose() * dt));
    f.factorized = tree_weight(cw, t, th) / Rational(th * th) * Rational(f.gram_D_T);
    f.mu_T = gram_determinant(image_lattice_basis(dt));
    return f;
}

void require_good(const CellComplex& c, const SubcomplexSpec& t, const WeightAssignment& w)
{
    require_top(c);
    require_weights(c, w);
    if (!is_spanning_tree(c, t))
        throw PreconditionError("not a spanning tree");
    const Index n = c.cell_count(c.dim());
    Rational prod(1);
    std::optional<Rational> min_r;
    for (Index a : t.top_cells()) {
        prod *= w.r()(a);
        if (!min_r || w.r()(a) < *min_r)
            min_r = w.r()(a);
    }
    const Rational min_pow = min_r ? pow(*min_r, static_cast<unsigned>(n)) : Rational(1);
    for (Index g = 0; g < n; ++g) {
        if (t.contains(g))
            continue;
        if (!(w.r()(g) * min_pow > prod))
            throw NotGoodError(g, "weights are not good for the tree: cell " + std::to_string(g) +
                                      " violates r_g * (min r_T)^k > prod r_T");
    }
}

LowTemperatureReport low_temperature_check(const CellComplex& c, const SubcomplexSpec& t,
                                           const WeightAssignment& w, const std::vector<unsigned>& betas,
                                           const Rational& tolerance)
{
    require_good(c, t, w);
    const IntMatrix& bd = c.boundary(c.dim());
    const RatMatrix basis = to_rational(image_lattice_basis(bd).vectors);
    const auto cells = tree_cells(t);

    LowTemperatureReport rep;
    rep.betas = betas;
    rep.tolerance = tolerance;
    for (unsigned beta : betas) {
        const RatVector rinv = w.power(beta).inverse();
        const Rational whole = compressed_det(basis, full_laplacian(bd, rinv));
        const Rational tree = compressed_det(basis, full_laplacian(select_columns(bd, cells), select_rows(rinv, cells)));
        const Rational ratio = tree / whole;
        rep.ratios.push_back(ratio);
        rep.deviations.push_back(mp::abs(ratio - Rational(1)));
    }
    rep.strictly_decreasing = !rep.deviations.empty();
    for (std::size_t i = 1; i < rep.deviations.size(); ++i)
        rep.strictly_decreasing = rep.strictly_decreasing && rep.deviations[i] < rep.deviations[i - 1];
    rep.within_tolerance = !rep.deviations.empty() && rep.deviations.back() < tolerance;
    return rep;
}

}  // namespace cwk
