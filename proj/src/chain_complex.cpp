#include "cwkirch/chain_complex.hpp"

#include <algorithm>
#include <sstream>

#include "cwkirch/error.hpp"

namespace cwk {

namespace {

ValidationReport compute_report(const std::vector<Index>& counts, const std::vector<IntMatrix>& boundaries,
                                const std::vector<std::optional<RatVector>>& weights)
{
    ValidationReport rep;
    auto fail = [&rep](const std::string& s) { rep.failures.push_back(s); };

    if (counts.empty()) {
        fail("complex has no degrees");
        return rep;
    }
    const int d = static_cast<int>(counts.size()) - 1;
    for (int k = 0; k <= d; ++k)
        if (counts[static_cast<std::size_t>(k)] < 0)
            fail("negative cell count in degree " + std::to_string(k));
    if (counts[0] < 1)
        fail("complex needs at least one vertex");
    if (static_cast<int>(boundaries.size()) != d) {
        fail("expected " + std::to_string(d) + " boundary matrices, got " + std::to_string(boundaries.size()));
        return rep;
    }

    bool shapes_ok = true;
    for (int k = 1; k <= d; ++k) {
        const IntMatrix& m = boundaries[static_cast<std::size_t>(k - 1)];
        const Index r = counts[static_cast<std::size_t>(k - 1)];
        const Index c = counts[static_cast<std::size_t>(k)];
        if (m.rows() != r || m.cols() != c) {
            std::ostringstream os;
            os << "D_" << k << " has shape " << m.rows() << "x" << m.cols() << ", expected " << r << "x" << c;
            fail(os.str());
            shapes_ok = false;
        }
    }

    for (std::size_t k = 0; k < weights.size(); ++k) {
        if (!weights[k])
            continue;
        if (static_cast<int>(k) > d) {
            fail("weights given for degree " + std::to_string(k) + " above the dimension");
            continue;
        }
        if (weights[k]->size() != counts[k]) {
            fail("weights in degree " + std::to_string(k) + " have the wrong length");
            continue;
        }
        for (Index i = 0; i < weights[k]->size(); ++i)
            if ((*weights[k])(i) <= 0)
                fail("nonpositive weight " + to_string((*weights[k])(i)) + " on cell " + std::to_string(i) +
                     " of degree " + std::to_string(k));
    }

    if (!shapes_ok)
        return rep;

    for (int k = 2; k <= d; ++k) {
        const IntMatrix prod = boundaries[static_cast<std::size_t>(k - 2)] * boundaries[static_cast<std::size_t>(k - 1)];
        for (Index i = 0; i < prod.rows(); ++i)
            for (Index j = 0; j < prod.cols(); ++j)
                if (prod(i, j) != 0) {
                    rep.boundary_violations.push_back({k, i, j, prod(i, j)});
                    std::ostringstream os;
                    os << "D_" << k - 1 << "*D_" << k << " is nonzero at (" << k - 2 << "-cell " << i << ", " << k
                       << "-cell " << j << "): " << prod(i, j);
                    fail(os.str());
                }
    }

    if (d == 0) {
        if (counts[0] != 1)
            fail("a 0-dimensional complex must be a single vertex");
    } else if (counts[0] >= 1 && rank(boundaries[0]) != counts[0] - 1) {
        fail("complex is disconnected (rank D_1 != n_0 - 1)");
    }
    return rep;
}

}  // namespace

std::string ValidationReport::summary() const
{
    std::string s;
    for (const auto& f : failures) {
        if (!s.empty())
            s += "; ";
        s += f;
    }
    return s;
}

CellComplex::CellComplex(std::vector<Index> cell_counts, std::vector<IntMatrix> boundaries,
                         std::vector<std::optional<RatVector>> weights,
                         std::vector<std::vector<std::string>> cell_names, std::string name)
    : counts_(std::move(cell_counts)),
      boundaries_(std::move(boundaries)),
      weights_(std::move(weights)),
      names_(std::move(cell_names)),
      name_(std::move(name))
{
    report_ = compute_report(counts_, boundaries_, weights_);
    weights_.resize(counts_.size());
}

Index CellComplex::cell_count(int k) const
{
    if (k < 0 || k > dim())
        return 0;
    return counts_[static_cast<std::size_t>(k)];
}

const IntMatrix& CellComplex::boundary(int k) const
{
    if (k < 1 || k > dim())
        throw PreconditionError("boundary D_" + std::to_string(k) + " does not exist");
    return boundaries_[static_cast<std::size_t>(k - 1)];
}

IntMatrix CellComplex::boundary_or_zero(int k) const
{
    if (k >= 1 && k <= dim())
        return boundaries_[static_cast<std::size_t>(k - 1)];
    return IntMatrix::Zero(cell_count(k - 1), cell_count(k));
}

bool CellComplex::has_weights(int k) const
{
    return k >= 0 && k <= dim() && weights_[static_cast<std::size_t>(k)].has_value();
}

RatVector CellComplex::weights(int k) const
{
    if (has_weights(k))
        return *weights_[static_cast<std::size_t>(k)];
    return RatVector::Ones(cell_count(k));
}

CellComplex CellComplex::with_weights(int k, const RatVector& r) const
{
    if (k < 0 || k > dim())
        throw PreconditionError("weights for a degree outside the complex");
    auto w = weights_;
    w[static_cast<std::size_t>(k)] = r;
    return CellComplex(counts_, boundaries_, std::move(w), names_, name_);
}

CellComplex CellComplex::without_weights() const { return CellComplex(counts_, boundaries_, {}, names_, name_); }

CellComplex CellComplex::renamed(std::string name) const
{
    return CellComplex(counts_, boundaries_, weights_, names_, std::move(name));
}

void CellComplex::require_valid() const
{
    if (!report_.ok())
        throw PreconditionError("invalid complex" + (name_.empty() ? std::string() : " '" + name_ + "'") + ": " +
                                report_.summary());
}

bool CellComplex::operator==(const CellComplex& other) const
{
    if (counts_ != other.counts_ || names_ != other.names_ || name_ != other.name_)
        return false;
    for (std::size_t k = 0; k < boundaries_.size(); ++k)
        if (boundaries_[k] != other.boundaries_[k])
            return false;
    for (int k = 0; k <= dim(); ++k) {
        if (has_weights(k) != other.has_weights(k))
            return false;
        if (has_weights(k) && weights(k) != other.weights(k))
            return false;
    }
    return true;
}

ChainVector make_chain(const CellComplex& c, int degree, RatVector coords)
{
    if (degree < 0 || degree > c.dim())
        throw PreconditionError("chain degree outside the complex");
    if (coords.size() != c.cell_count(degree))
        throw PreconditionError("chain of degree " + std::to_string(degree) + " needs " +
                                std::to_string(c.cell_count(degree)) + " coordinates");
    return {degree, std::move(coords)};
}

SubcomplexSpec::SubcomplexSpec(std::vector<Index> top_cells) : cells_(std::move(top_cells))
{
    std::sort(cells_.begin(), cells_.end());
    cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
}

bool SubcomplexSpec::contains(Index b) const { return std::binary_search(cells_.begin(), cells_.end(), b); }

ValidationReport validate(const CellComplex& c) { return c.validation(); }

CellComplex skeleton(const CellComplex& c, int k)
{
    if (k < 0 || k > c.dim())
        throw PreconditionError("skeleton degree " + std::to_string(k) + " exceeds dimension " +
                                std::to_string(c.dim()));
    std::vector<Index> counts(c.cell_counts().begin(), c.cell_counts().begin() + k + 1);
    std::vector<IntMatrix> bd;
    std::vector<std::optional<RatVector>> w;
    for (int j = 1; j <= k; ++j)
        bd.push_back(c.boundary(j));
    for (int j = 0; j <= k; ++j)
        w.push_back(c.has_weights(j) ? std::optional<RatVector>(c.weights(j)) : std::nullopt);
    auto names = c.cell_names();
    if (names.size() > static_cast<std::size_t>(k + 1))
        names.resize(static_cast<std::size_t>(k + 1));
    return CellComplex(std::move(counts), std::move(bd), std::move(w), std::move(names), c.name());
}

CellComplex restrict_top(const CellComplex& c, const SubcomplexSpec& s)
{
    const int d = c.dim();
    if (d < 1)
        throw PreconditionError("restrict_top needs dimension >= 1");
    for (Index b : s.top_cells())
        if (b < 0 || b >= c.cell_count(d))
            throw PreconditionError("top cell index " + std::to_string(b) + " out of range");

    std::vector<Index> counts = c.cell_counts();
    counts.back() = static_cast<Index>(s.size());
    std::vector<IntMatrix> bd;
    for (int j = 1; j < d; ++j)
        bd.push_back(c.boundary(j));
    bd.push_back(select_columns(c.boundary(d), s.top_cells()));

    std::vector<std::optional<RatVector>> w;
    for (int j = 0; j < d; ++j)
        w.push_back(c.has_weights(j) ? std::optional<RatVector>(c.weights(j)) : std::nullopt);
    if (c.has_weights(d)) {
        const RatVector full = c.weights(d);
        RatVector r(static_cast<Index>(s.size()));
        for (std::size_t i = 0; i < s.size(); ++i)
            r(static_cast<Index>(i)) = full(s.top_cells()[i]);
        w.push_back(r);
    } else {
        w.push_back(std::nullopt);
    }

    auto names = c.cell_names();
    if (names.size() > static_cast<std::size_t>(d) && !names[static_cast<std::size_t>(d)].empty()) {
        std::vector<std::string> top;
        for (Index b : s.top_cells())
            top.push_back(names[static_cast<std::size_t>(d)][static_cast<std::size_t>(b)]);
        names[static_cast<std::size_t>(d)] = std::move(top);
    }
    return CellComplex(std::move(counts), std::move(bd), std::move(w), std::move(names), c.name());
}

Index betti(const CellComplex& c, int k)
{
    if (k < 0 || k > c.dim())
        throw PreconditionError("betti degree out of range");
    return c.cell_count(k) - rank(c.boundary_or_zero(k)) - rank(c.boundary_or_zero(k + 1));
}

Integer euler_characteristic(const CellComplex& c)
{
    Integer chi(0);
    for (int k = 0; k <= c.dim(); ++k)
        chi += (k % 2 == 0 ? 1 : -1) * Integer(c.cell_count(k));
    return chi;
}

}  // namespace cwk
