#include "cwkirch/spanning_trees.hpp"

#include <numeric>

#include "cwkirch/error.hpp"

namespace cwk {

namespace {

void require_top(const CellComplex& c)
{
    c.require_valid();
    if (c.dim() < 1)
        throw PreconditionError("spanning trees need dimension >= 1");
}

std::vector<Index> all_cells(Index n)
{
    std::vector<Index> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), Index{0});
    return v;
}

// Incrementally maintained echelon basis of a set of column vectors; each
// stored vector is reduced against its predecessors and is 1 at its pivot.
class IncrementalBasis {
public:
    bool try_push(RatVector v)
    {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Rational f = v(pivots_[i]);
            if (f != 0)
                v -= f * rows_[i];
        }
        Index p = 0;
        while (p < v.size() && v(p) == 0)
            ++p;
        if (p == v.size())
            return false;
        v /= Rational(v(p));
        rows_.push_back(std::move(v));
        pivots_.push_back(p);
        return true;
    }
    void pop()
    {
        rows_.pop_back();
        pivots_.pop_back();
    }

private:
    std::vector<RatVector> rows_;
    std::vector<Index> pivots_;
};

// Primitive integer vector on the line spanned by v, first nonzero entry positive.
IntVector primitive(const RatVector& v)
{
    Integer l(1);
    for (Index i = 0; i < v.size(); ++i)
        l = mp::lcm(l, mp::denominator(v(i)));
    IntVector out(v.size());
    Integer g(0);
    for (Index i = 0; i < v.size(); ++i) {
        out(i) = mp::numerator(v(i) * Rational(l));
        g = mp::gcd(g, out(i));
    }
    if (g == 0)
        throw DegenerateError("primitive vector of the zero vector");
    out /= g;
    for (Index i = 0; i < out.size(); ++i) {
        if (out(i) == 0)
            continue;
        if (out(i) < 0)
            out = -out;
        break;
    }
    return out;
}

}  // namespace

bool is_essential(const CellComplex& c, Index b)
{
    require_top(c);
    const int d = c.dim();
    const Index n = c.cell_count(d);
    if (b < 0 || b >= n)
        throw PreconditionError("cell index " + std::to_string(b) + " out of range");
    std::vector<Index> rest;
    for (Index j = 0; j < n; ++j)
        if (j != b)
            rest.push_back(j);
    return rank(select_columns(c.boundary(d), rest)) == rank(c.boundary(d));
}

bool is_spanning_tree(const CellComplex& c, const SubcomplexSpec& s)
{
    require_top(c);
    const int d = c.dim();
    for (Index b : s.top_cells())
        if (b < 0 || b >= c.cell_count(d))
            return false;
    const Index r = rank(c.boundary(d));
    return static_cast<Index>(s.size()) == r && rank(select_columns(c.boundary(d), s.top_cells())) == r;
}

SpanningTree find_spanning_tree(const CellComplex& c)
{
    require_top(c);
    const int d = c.dim();
    const IntMatrix& bd = c.boundary(d);
    const Index r = rank(bd);
    std::vector<Index> current = all_cells(c.cell_count(d));
    while (static_cast<Index>(current.size()) > r) {
        bool removed = false;
        for (std::size_t i = 0; i < current.size(); ++i) {
            std::vector<Index> rest = current;
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
            if (rank(select_columns(bd, rest)) == r) {
                current = std::move(rest);
                removed = true;
                break;
            }
        }
        if (!removed)
            throw DegenerateError("no essential cell found while beta_d > 0");
    }
    return make_spanning_tree(c, SubcomplexSpec(current));
}

void for_each_spanning_tree(const CellComplex& c, const std::function<void(const SubcomplexSpec&)>& visit)
{
    require_top(c);
    const int d = c.dim();
    const RatMatrix bd = to_rational(c.boundary(d));
    const Index n = bd.cols();
    const Index r = rank_q(bd);

    IncrementalBasis basis;
    std::vector<Index> chosen;
    std::function<void(Index)> dfs = [&](Index next) {
        if (static_cast<Index>(chosen.size()) == r) {
            visit(SubcomplexSpec(chosen));
            return;
        }
        for (Index j = next; j < n; ++j) {
            if (static_cast<Index>(chosen.size()) + (n - j) < r)
                return;
            if (!basis.try_push(bd.col(j)))
                continue;
            chosen.push_back(j);
            dfs(j + 1);
            chosen.pop_back();
            basis.pop();
        }
    };
    dfs(0);
}

std::vector<SubcomplexSpec> spanning_tree_sets(const CellComplex& c)
{
    std::vector<SubcomplexSpec> out;
    for_each_spanning_tree(c, [&out](const SubcomplexSpec& s) { out.push_back(s); });
    return out;
}

std::vector<SpanningTree> enumerate_spanning_trees(const CellComplex& c)
{
    std::vector<SpanningTree> out;
    for_each_spanning_tree(c, [&](const SubcomplexSpec& s) { out.push_back(make_spanning_tree(c, s)); });
    return out;
}

Integer tree_theta(const CellComplex& c, const SubcomplexSpec& t)
{
    if (!is_spanning_tree(c, t))
        throw PreconditionError("not a spanning tree");
    return torsion_order_cokernel(select_columns(c.boundary(c.dim()), t.top_cells()));
}

Rational tree_weight(const CellComplex& c, const SubcomplexSpec& t, const Integer& theta)
{
    const RatVector r = c.weights(c.dim());
    Rational w(theta * theta);
    for (Index b : t.top_cells())
        w /= r(b);
    return w;
}

Rational tree_weight(const CellComplex& c, const SpanningTree& t) { return tree_weight(c, t.top_cells, t.theta); }

TBar tbar_matrix(const CellComplex& c, const SubcomplexSpec& t)
{
    if (!is_spanning_tree(c, t))
        throw PreconditionError("not a spanning tree");
    const int d = c.dim();
    const RatMatrix bd = to_rational(c.boundary(d));
    const Index n = bd.cols();
    const RatMatrix tree_cols = select_columns(bd, t.top_cells());

    TBar out{RatMatrix::Zero(n, n), {}};
    for (Index b = 0; b < n; ++b) {
        if (t.contains(b))
            continue;
        // D_T x = D_b has a unique solution; the cycle is b - sum x_i T_i.
        const auto x = solve(tree_cols, bd.col(b));
        if (!x)
            throw DegenerateError("boundary of a non-tree cell is outside B_{d-1}(T)");
        RatVector cycle = RatVector::Zero(n);
        cycle(b) = Rational(1);
        for (std::size_t i = 0; i < t.size(); ++i)
            cycle(t.top_cells()[i]) = -(*x)(static_cast<Index>(i), 0);
        const IntVector gen = primitive(cycle);
        const Integer tb = gen(b);
        out.t_values.emplace(b, tb);
        out.matrix.col(b) = to_rational(gen) / Rational(tb);
    }
    return out;
}

SpanningTree make_spanning_tree(const CellComplex& c, const SubcomplexSpec& t)
{
    TBar tb = tbar_matrix(c, t);
    return {t, tree_theta(c, t), std::move(tb.t_values), std::move(tb.matrix)};
}

}  // namespace cwk
