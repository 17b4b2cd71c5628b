#include "cwkirch/network.hpp"

#include "cwkirch/error.hpp"
#include "cwkirch/exact_linalg.hpp"

namespace cwk {

namespace {

void require_top(const CellComplex& c)
{
    c.require_valid();
    if (c.dim() < 1)
        throw PreconditionError("network problems need dimension >= 1");
}

RatMatrix cycle_basis(const CellComplex& c) { return to_rational(kernel_lattice_basis(c.boundary(c.dim())).vectors); }

bool is_zero(const RatVector& v)
{
    for (Index i = 0; i < v.size(); ++i)
        if (v(i) != 0)
            return false;
    return true;
}

RatVector inverse_weights(const CellComplex& c)
{
    RatVector r = c.weights(c.dim());
    for (Index i = 0; i < r.size(); ++i)
        r(i) = Rational(1) / r(i);
    return r;
}

}  // namespace

bool ResidualReport::ok() const { return is_zero(ohm) && is_zero(current) && is_zero(voltage); }

void check_problem(const NetworkProblem& np)
{
    const CellComplex& c = np.complex;
    require_top(c);
    const int d = c.dim();
    if (np.p.degree != d - 1 || np.p.coords.size() != c.cell_count(d - 1))
        throw PreconditionError("boundary current p must be a (d-1)-chain");
    if (np.q.degree != d || np.q.coords.size() != c.cell_count(d))
        throw PreconditionError("cycle voltage q must be a d-chain");
    const RatMatrix bd = to_rational(c.boundary(d));
    if (!solve(bd, np.p.coords))
        throw PreconditionError("boundary current p is not in B_{d-1}");
    if (!is_zero(bd * np.q.coords))
        throw PreconditionError("cycle voltage q is not a d-cycle");
}

RatMatrix projection_direct(const CellComplex& c)
{
    require_top(c);
    const Index n = c.cell_count(c.dim());
    const RatMatrix z = cycle_basis(c);
    if (z.cols() == 0)
        return RatMatrix::Zero(n, n);
    const RatVector r = c.weights(c.dim());
    const RatMatrix zr = z.transpose() * r.asDiagonal();
    return z * inverse(RatMatrix(zr * z)) * zr;
}

NetworkSolution solve_direct(const NetworkProblem& np)
{
    check_problem(np);
    const CellComplex& c = np.complex;
    const int d = c.dim();
    const RatMatrix bd = to_rational(c.boundary(d));
    const RatVector rinv = inverse_weights(c);
    const RatVector r = c.weights(d);

    // J0 = R^{-1} D^T y with D R^{-1} D^T y = p.
    const RatMatrix k = bd * rinv.asDiagonal() * bd.transpose();
    const auto y = solve(k, np.p.coords);
    if (!y)
        throw DegenerateError("weighted Laplacian system is inconsistent");
    const RatVector j0 = rinv.asDiagonal() * (bd.transpose() * y->col(0));
    const RatVector j1 = projection_direct(c) * RatVector(rinv.asDiagonal() * np.q.coords);
    const RatVector j = j0 + j1;
    return {{d, r.asDiagonal() * j}, {d, j}};
}

NetworkSolution solve_by_laws(const NetworkProblem& np)
{
    check_problem(np);
    const CellComplex& c = np.complex;
    const int d = c.dim();
    const RatMatrix bd = to_rational(c.boundary(d));
    const RatMatrix z = cycle_basis(c);
    const RatVector r = c.weights(d);

    // [ D_d ; Z^T R ] J = [ p ; Z^T q ]
    RatMatrix a(bd.rows() + z.cols(), bd.cols());
    a << bd, RatMatrix(z.transpose() * r.asDiagonal());
    RatVector rhs(bd.rows() + z.cols());
    rhs << np.p.coords, RatVector(z.transpose() * np.q.coords);
    const auto j = solve(a, rhs);
    if (!j)
        throw DegenerateError("network laws are inconsistent");
    const RatVector jv = j->col(0);
    return {{d, r.asDiagonal() * jv}, {d, jv}};
}

TreeOperatorSum tree_operator_sum(const CellComplex& c, const std::vector<SpanningTree>& trees)
{
    const Index n = c.cell_count(c.dim());
    TreeOperatorSum s{RatMatrix::Zero(n, n), Rational(0)};
    for (const SpanningTree& t : trees) {
        const Rational w = tree_weight(c, t);
        s.weighted_sum += w * t.tbar;
        s.delta += w;
    }
    return s;
}

RatMatrix projection_tree_formula(const CellComplex& c, const std::vector<SpanningTree>& trees)
{
    const TreeOperatorSum s = tree_operator_sum(c, trees);
    if (s.delta == 0)
        throw DegenerateError("empty spanning tree sum");
    return s.weighted_sum / s.delta;
}

RatMatrix projection_tree_formula(const CellComplex& c)
{
    require_top(c);
    return projection_tree_formula(c, enumerate_spanning_trees(c));
}

ChainVector branch_current(const CellComplex& c, const ChainVector& v, const std::vector<SpanningTree>& trees)
{
    const int d = c.dim();
    if (v.degree != d || v.coords.size() != c.cell_count(d))
        throw PreconditionError("branch voltages must be a d-chain");
    const RatVector r = c.weights(d);
    const Index n = c.cell_count(d);
    RatVector z = RatVector::Zero(n);
    Rational delta(0);
    for (const SpanningTree& t : trees) {
        const Rational w = tree_weight(c, t);
        delta += w;
        for (Index b = 0; b < n; ++b)
            z(b) += w / r(b) * v.coords.dot(t.tbar.col(b));
    }
    return {d, z / delta};
}

ChainVector branch_current(const CellComplex& c, const ChainVector& v)
{
    require_top(c);
    return branch_current(c, v, enumerate_spanning_trees(c));
}

ChainVector branch_current_direct(const CellComplex& c, const ChainVector& v)
{
    require_top(c);
    const int d = c.dim();
    if (v.degree != d || v.coords.size() != c.cell_count(d))
        throw PreconditionError("branch voltages must be a d-chain");
    return {d, projection_direct(c) * RatVector(inverse_weights(c).asDiagonal() * v.coords)};
}

ResidualReport verify_solution(const NetworkProblem& np, const NetworkSolution& s)
{
    const CellComplex& c = np.complex;
    const int d = c.dim();
    if (s.V.coords.size() != c.cell_count(d) || s.J.coords.size() != c.cell_count(d))
        throw PreconditionError("solution chains have the wrong length");
    const RatVector r = c.weights(d);
    const RatMatrix z = cycle_basis(c);
    ResidualReport rep;
    rep.ohm = s.V.coords - RatVector(r.asDiagonal() * s.J.coords);
    rep.current = to_rational(c.boundary(d)) * s.J.coords - np.p.coords;
    rep.voltage = z.transpose() * (s.V.coords - np.q.coords);
    return rep;
}

}  // namespace cwk
