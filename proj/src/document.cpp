#include "cwkirch/document.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <tuple>

#include "cwkirch/error.hpp"

namespace cwk::doc {

namespace {

[[noreturn]] void bad(const std::string& what) { throw InputError(what); }

const Json& field(const Json& j, const char* key)
{
    if (!j.contains(key))
        bad(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

Index as_index(const Json& j, const std::string& where)
{
    if (!j.is_number_integer())
        bad(where + ": expected an integer, got " + j.dump());
    return j.get<Index>();
}

Integer as_integer(const Json& j, const std::string& where)
{
    if (j.is_number_integer())
        return Integer(j.get<long long>());
    if (j.is_string()) {
        try {
            const Rational q = parse_rational(j.get<std::string>());
            if (is_integral(q))
                return mp::numerator(q);
        } catch (const std::invalid_argument&) {
        }
    }
    bad(where + ": expected an integer, got " + j.dump());
}

Rational as_rational(const Json& j, const std::string& where)
{
    if (j.is_number_integer())
        return Rational(j.get<long long>());
    if (!j.is_string())
        bad(where + ": expected a \"p/q\" string, got " + j.dump());
    try {
        return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        bad(where + ": " + e.what());
    }
}

RatVector rational_list(const Json& j, const std::string& where)
{
    if (!j.is_array())
        bad(where + ": expected an array");
    RatVector v(static_cast<Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
        v(static_cast<Index>(i)) = as_rational(j[i], where + "[" + std::to_string(i) + "]");
    return v;
}

std::vector<Index> index_list(const Json& j, const std::string& where)
{
    if (!j.is_array())
        bad(where + ": expected an array of cell indices");
    std::vector<Index> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(as_index(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

RatVector sparse_rational(const Json& j, Index n, const std::string& where)
{
    RatVector v = RatVector::Zero(n);
    if (!j.is_array())
        bad(where + ": expected [[cell, \"p/q\"], ...]");
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string at = where + "[" + std::to_string(i) + "]";
        if (!j[i].is_array() || j[i].size() != 2)
            bad(at + ": expected [cell, \"p/q\"]");
        const Index idx = as_index(j[i][0], at);
        if (idx < 0 || idx >= n)
            bad(at + ": cell " + std::to_string(idx) + " out of range 0.." + std::to_string(n - 1));
        v(idx) += as_rational(j[i][1], at);
    }
    return v;
}

IntVector sparse_integer(const Json& j, Index n, const std::string& where)
{
    IntVector v = IntVector::Zero(n);
    if (!j.is_array())
        bad(where + ": expected [[cell, n], ...]");
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string at = where + "[" + std::to_string(i) + "]";
        if (!j[i].is_array() || j[i].size() != 2)
            bad(at + ": expected [cell, n]");
        const Index idx = as_index(j[i][0], at);
        if (idx < 0 || idx >= n)
            bad(at + ": cell " + std::to_string(idx) + " out of range 0.." + std::to_string(n - 1));
        v(idx) += as_integer(j[i][1], at);
    }
    return v;
}

Json sparse_json(const RatVector& v)
{
    Json out = Json::array();
    for (Index i = 0; i < v.size(); ++i)
        if (v(i) != 0)
            out.push_back(Json::array({i, to_string(v(i))}));
    return out;
}

Json sparse_json(const IntVector& v)
{
    Json out = Json::array();
    for (Index i = 0; i < v.size(); ++i)
        if (v(i) != 0)
            out.push_back(Json::array({i, to_string(v(i))}));
    return out;
}

Json cells_json(const SubcomplexSpec& s) { return Json(s.top_cells()); }

std::string line_col(const std::string& text, std::size_t byte)
{
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return std::to_string(line) + ":" + std::to_string(col);
}

bool scalar_array(const Json& j)
{
    return j.is_array() && std::none_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); });
}

// Two-space indentation; arrays of scalars stay on one line.
void pretty(const Json& j, std::string& out, int indent)
{
    const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
    const std::string close(static_cast<std::size_t>(indent), ' ');
    if (j.is_object() && !j.empty()) {
        out += "{\n";
        std::size_t i = 0;
        for (const auto& [key, val] : j.items()) {
            out += pad + Json(key).dump() + ": ";
            pretty(val, out, indent + 2);
            out += ++i < j.size() ? ",\n" : "\n";
        }
        out += close + "}";
    } else if (j.is_array() && !j.empty() && !scalar_array(j)) {
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            out += pad;
            pretty(j[i], out, indent + 2);
            out += i + 1 < j.size() ? ",\n" : "\n";
        }
        out += close + "]";
    } else if (j.is_array()) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i)
            out += (i ? ", " : "") + j[i].dump();
        out += "]";
    } else {
        out += j.dump();
    }
}

}  // namespace

Json rational_json(const Rational& q) { return to_string(q); }
Json integer_json(const Integer& n) { return to_string(n); }

Json vector_json(const RatVector& v)
{
    Json out = Json::array();
    for (Index i = 0; i < v.size(); ++i)
        out.push_back(to_string(v(i)));
    return out;
}

Json matrix_json(const RatMatrix& m)
{
    Json out = Json::array();
    for (Index i = 0; i < m.rows(); ++i)
        out.push_back(vector_json(m.row(i).transpose()));
    return out;
}

Json complex_to_json(const CellComplex& c)
{
    Json j;
    j["name"] = c.name();
    j["dimension"] = c.dim();
    j["cell_counts"] = c.cell_counts();
    Json triplets = Json::array();
    for (int k = 1; k <= c.dim(); ++k) {
        const IntMatrix& m = c.boundary(k);
        for (Index r = 0; r < m.rows(); ++r)
            for (Index col = 0; col < m.cols(); ++col)
                if (m(r, col) != 0)
                    triplets.push_back(Json::array({k, r, col, m(r, col).convert_to<long long>()}));
    }
    j["boundaries"] = std::move(triplets);
    Json w = Json::object();
    for (int k = 0; k <= c.dim(); ++k)
        if (c.has_weights(k))
            w[std::to_string(k)] = vector_json(c.weights(k));
    if (!w.empty())
        j["weights"] = std::move(w);
    Json names = Json::object();
    for (std::size_t k = 0; k < c.cell_names().size(); ++k)
        if (!c.cell_names()[k].empty())
            names[std::to_string(k)] = c.cell_names()[k];
    if (!names.empty())
        j["cell_names"] = std::move(names);
    return j;
}

CellComplex complex_from_json(const Json& j)
{
    if (!j.is_object())
        bad("complex document must be a JSON object");
    const Json& counts_j = field(j, "cell_counts");
    if (!counts_j.is_array() || counts_j.empty())
        bad("cell_counts: expected a nonempty array");
    std::vector<Index> counts;
    for (std::size_t k = 0; k < counts_j.size(); ++k) {
        const Index n = as_index(counts_j[k], "cell_counts[" + std::to_string(k) + "]");
        if (n < 0)
            bad("cell_counts[" + std::to_string(k) + "]: negative");
        counts.push_back(n);
    }
    const int d = static_cast<int>(counts.size()) - 1;
    if (j.contains("dimension") && as_index(j.at("dimension"), "dimension") != d)
        bad("dimension " + j.at("dimension").dump() + " disagrees with " + std::to_string(counts.size()) +
            " cell counts");

    std::vector<IntMatrix> bd;
    for (int k = 1; k <= d; ++k)
        bd.push_back(IntMatrix::Zero(counts[static_cast<std::size_t>(k - 1)], counts[static_cast<std::size_t>(k)]));
    const Json& trip = field(j, "boundaries");
    if (!trip.is_array())
        bad("boundaries: expected an array of [k, row, col, value]");
    for (std::size_t i = 0; i < trip.size(); ++i) {
        const std::string at = "boundaries[" + std::to_string(i) + "]";
        if (!trip[i].is_array() || trip[i].size() != 4)
            bad(at + ": expected [k, row, col, value]");
        const Index k = as_index(trip[i][0], at);
        const Index r = as_index(trip[i][1], at);
        const Index col = as_index(trip[i][2], at);
        if (k < 1 || k > d)
            bad(at + ": degree " + std::to_string(k) + " outside 1.." + std::to_string(d));
        IntMatrix& m = bd[static_cast<std::size_t>(k - 1)];
        if (r < 0 || r >= m.rows() || col < 0 || col >= m.cols())
            bad(at + ": entry (" + std::to_string(r) + ", " + std::to_string(col) + ") outside D_" +
                std::to_string(k) + " of shape " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
        m(r, col) += as_integer(trip[i][3], at);
    }

    std::vector<std::optional<RatVector>> weights(counts.size());
    if (j.contains("weights")) {
        const Json& w = j.at("weights");
        if (!w.is_object())
            bad("weights: expected {\"degree\": [\"p/q\", ...]}");
        for (const auto& [key, val] : w.items()) {
            int k = -1;
            try {
                k = std::stoi(key);
            } catch (const std::exception&) {
                bad("weights: key \"" + key + "\" is not a degree");
            }
            if (k < 0 || k > d)
                bad("weights: degree " + key + " outside 0.." + std::to_string(d));
            weights[static_cast<std::size_t>(k)] = rational_list(val, "weights." + key);
        }
    }

    std::vector<std::vector<std::string>> names;
    if (j.contains("cell_names")) {
        const Json& nj = j.at("cell_names");
        if (!nj.is_object())
            bad("cell_names: expected {\"degree\": [\"name\", ...]}");
        names.resize(counts.size());
        for (const auto& [key, val] : nj.items()) {
            int k = -1;
            try {
                k = std::stoi(key);
            } catch (const std::exception&) {
                bad("cell_names: key \"" + key + "\" is not a degree");
            }
            if (k < 0 || k > d)
                bad("cell_names: degree " + key + " outside 0.." + std::to_string(d));
            if (!val.is_array() || static_cast<Index>(val.size()) != counts[static_cast<std::size_t>(k)])
                bad("cell_names." + key + ": expected " + std::to_string(counts[static_cast<std::size_t>(k)]) +
                    " names");
            names[static_cast<std::size_t>(k)] = val.get<std::vector<std::string>>();
        }
    }

    const std::string name = j.contains("name") ? j.at("name").get<std::string>() : std::string{};
    CellComplex c(std::move(counts), std::move(bd), std::move(weights), std::move(names), name);
    if (!c.validation().ok())
        bad("invalid complex: " + c.validation().summary());
    return c;
}

Kind kind_of(const Json& j)
{
    if (j.is_object() && j.contains("complex"))
        return Kind::problem;
    if (j.is_object() && j.contains("boundaries"))
        return Kind::complex;
    bad("document is neither a complex (\"boundaries\") nor a problem (\"complex\")");
}

ProblemDocument problem_from_json(const Json& j, const std::filesystem::path& base_dir,
                                  const std::filesystem::path& corpus_dir)
{
    if (!j.is_object())
        bad("problem document must be a JSON object");
    const Json& cj = field(j, "complex");
    std::optional<std::string> ref;
    std::optional<CellComplex> complex;
    if (cj.is_string()) {
        ref = cj.get<std::string>();
        std::filesystem::path p = base_dir / *ref;
        if (!std::filesystem::exists(p))
            p = corpus_dir / *ref;
        if (!std::filesystem::exists(p))
            bad("complex \"" + *ref + "\" not found next to the problem or in " + corpus_dir.string());
        try {
            complex = complex_from_json(read_file(p));
        } catch (const InputError& e) {
            bad(p.string() + ": " + e.what());
        }
    } else {
        complex = complex_from_json(cj);
    }
    CellComplex& c = *complex;
    const int d = c.dim();
    if (d < 1)
        bad("network problems need a complex of dimension >= 1");

    if (j.contains("weights")) {
        const RatVector w = rational_list(j.at("weights"), "weights");
        if (w.size() != c.cell_count(d))
            bad("weights: expected " + std::to_string(c.cell_count(d)) + " top-cell resistances");
        for (Index i = 0; i < w.size(); ++i)
            if (w(i) <= 0)
                bad("weights[" + std::to_string(i) + "]: must be positive");
        c = c.with_weights(d, w);
    }

    ProblemDocument out{c, ref, {d - 1, RatVector::Zero(c.cell_count(d - 1))}, {d, RatVector::Zero(c.cell_count(d))},
                        std::nullopt, std::nullopt, std::nullopt, std::nullopt};
    if (j.contains("weights"))
        out.weights = c.weights(d);
    if (j.contains("p"))
        out.p.coords = sparse_rational(j.at("p"), c.cell_count(d - 1), "p");
    if (j.contains("q"))
        out.q.coords = sparse_rational(j.at("q"), c.cell_count(d), "q");
    if (j.contains("subgroup")) {
        const Json& s = j.at("subgroup");
        if (!s.is_array())
            bad("subgroup: expected an array of sparse integer vectors");
        IntMatrix a(c.cell_count(d - 1), static_cast<Index>(s.size()));
        for (std::size_t i = 0; i < s.size(); ++i)
            a.col(static_cast<Index>(i)) = sparse_integer(s[i], c.cell_count(d - 1), "subgroup[" + std::to_string(i) + "]");
        out.subgroup = SubgroupSpec{std::move(a)};
    }
    if (j.contains("tree"))
        out.tree = SubcomplexSpec(index_list(j.at("tree"), "tree"));
    if (j.contains("truncation")) {
        const Json& t = j.at("truncation");
        TruncationData td;
        const Json& trees = field(t, "trees");
        const Json& truncs = field(t, "truncations");
        if (!trees.is_array() || !truncs.is_array())
            bad("truncation: expected arrays \"trees\" and \"truncations\"");
        for (std::size_t k = 0; k < trees.size(); ++k)
            td.trees.emplace_back(index_list(trees[k], "truncation.trees[" + std::to_string(k) + "]"));
        for (std::size_t k = 0; k < truncs.size(); ++k)
            td.truncations.emplace_back(index_list(truncs[k], "truncation.truncations[" + std::to_string(k) + "]"));
        out.truncation = std::move(td);
    }
    return out;
}

Json problem_to_json(const ProblemDocument& p)
{
    Json j;
    if (p.complex_ref) {
        j["complex"] = *p.complex_ref;
    } else {
        const CellComplex base = p.weights ? p.complex.without_weights() : p.complex;
        j["complex"] = complex_to_json(base);
    }
    j["p"] = sparse_json(p.p.coords);
    j["q"] = sparse_json(p.q.coords);
    if (p.weights)
        j["weights"] = vector_json(*p.weights);
    if (p.subgroup) {
        Json s = Json::array();
        for (Index i = 0; i < p.subgroup->basis.cols(); ++i)
            s.push_back(sparse_json(IntVector(p.subgroup->basis.col(i))));
        j["subgroup"] = std::move(s);
    }
    if (p.tree)
        j["tree"] = cells_json(*p.tree);
    if (p.truncation) {
        Json trees = Json::array();
        Json truncs = Json::array();
        for (const auto& t : p.truncation->trees)
            trees.push_back(cells_json(t));
        for (const auto& v : p.truncation->truncations)
            truncs.push_back(cells_json(v));
        j["truncation"] = {{"trees", trees}, {"truncations", truncs}};
    }
    return j;
}

Json parse(const std::string& text, const std::string& source)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        bad(source + ":" + line_col(text, e.byte == 0 ? 0 : e.byte - 1) + ": JSON syntax error: " + e.what());
    }
}

Json read_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        bad("cannot open " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return parse(os.str(), path.string());
}

std::string dump(const Json& j)
{
    std::string out;
    pretty(j, out, 0);
    return out + "\n";
}

AllDegreeWeights all_degree_weights(const Json& j, const CellComplex& c)
{
    if (!j.is_object())
        bad("weights: expected {\"degree\": [\"p/q\", ...]}");
    AllDegreeWeights w;
    for (int k = 0; k <= c.dim(); ++k)
        w.push_back(c.weights(k));
    for (const auto& [key, val] : j.items()) {
        int k = -1;
        try {
            k = std::stoi(key);
        } catch (const std::exception&) {
            bad("weights: key \"" + key + "\" is not a degree");
        }
        if (k < 0 || k > c.dim())
            bad("weights: degree " + key + " outside 0.." + std::to_string(c.dim()));
        RatVector v = rational_list(val, "weights." + key);
        if (v.size() != c.cell_count(k))
            bad("weights." + key + ": expected " + std::to_string(c.cell_count(k)) + " values");
        for (Index i = 0; i < v.size(); ++i)
            if (v(i) <= 0)
                bad("weights." + key + ": values must be positive");
        w[static_cast<std::size_t>(k)] = std::move(v);
    }
    return w;
}

}  // namespace cwk::doc
