#include "cwkirch/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cwkirch/corpus.hpp"
#include "cwkirch/error.hpp"
#include "cwkirch/matrix_tree.hpp"
#include "cwkirch/network.hpp"
#include "cwkirch/spanning_trees.hpp"
#include "cwkirch/torsion.hpp"

#ifndef CWKIRCH_DEFAULT_CORPUS
#define CWKIRCH_DEFAULT_CORPUS "corpus"
#endif

namespace cwk::cli {

namespace fs = std::filesystem;
using doc::Json;

namespace {

struct Loaded {
    fs::path path;
    std::string label;
    CellComplex complex;
    std::optional<doc::ProblemDocument> problem;
    std::optional<Json> weights_override;
};

fs::path corpus_of(const Options& opt) { return opt.corpus_dir.empty() ? default_corpus_dir() : opt.corpus_dir; }

// Applies --weights: an array sets top-cell resistances, an object sets them per degree.
CellComplex apply_weights(const CellComplex& c, const Json& w)
{
    if (w.is_array()) {
        if (c.dim() < 1)
            throw InputError("--weights: a top-cell weight list needs dimension >= 1");
        Json keyed = Json::object();
        keyed[std::to_string(c.dim())] = w;
        return apply_weights(c, keyed);
    }
    const AllDegreeWeights all = doc::all_degree_weights(w, c);
    CellComplex out = c;
    for (const auto& [key, val] : w.items())
        out = out.with_weights(std::stoi(key), all[static_cast<std::size_t>(std::stoi(key))]);
    return out;
}

Loaded load(const std::string& target, const Options& opt)
{
    const fs::path path = resolve_target(target, opt);
    const Json j = doc::read_file(path);
    Loaded l{path, path.stem().string(), CellComplex({1}, {}), std::nullopt, std::nullopt};
    try {
        if (doc::kind_of(j) == doc::Kind::problem) {
            l.problem = doc::problem_from_json(j, path.parent_path(), corpus_of(opt));
            l.complex = l.problem->complex;
        } else {
            l.complex = doc::complex_from_json(j);
        }
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
    if (opt.weights) {
        l.weights_override = doc::read_file(*opt.weights);
        l.complex = apply_weights(l.complex, *l.weights_override);
        if (l.problem)
            l.problem->complex = l.complex;
    }
    return l;
}

Json identity_json(const IdentityReport& r)
{
    return {{"name", r.name}, {"lhs", doc::rational_json(r.lhs)}, {"rhs", doc::rational_json(r.rhs)},
            {"holds", r.holds()}};
}

Json identity_json(const std::string& name, Json lhs, Json rhs, bool holds)
{
    return {{"name", name}, {"lhs", std::move(lhs)}, {"rhs", std::move(rhs)}, {"holds", holds}};
}

Outcome finish(Json report)
{
    bool all = true;
    for (const Json& id : report["identities"])
        all = all && id["holds"].get<bool>();
    report["status"] = all ? "pass" : "fail";
    return {all ? exit_ok : exit_identity_failure, std::move(report)};
}

Json cells_json(const SubcomplexSpec& s) { return Json(s.top_cells()); }

void require_dim(const CellComplex& c, const std::string& what)
{
    if (c.dim() < 1)
        throw PreconditionError(what + " needs a complex of dimension >= 1");
}

Json verify_a(const Loaded& l)
{
    const CellComplex& c = l.complex;
    require_dim(c, "theorem A");
    const std::vector<SpanningTree> trees = enumerate_spanning_trees(c);
    const TreeOperatorSum f = tree_operator_sum(c, trees);
    const RatMatrix tree = f.weighted_sum / f.delta;
    const RatMatrix direct = projection_direct(c);
    const RatVector r = c.weights(c.dim());
    const RatMatrix rf = r.asDiagonal() * f.weighted_sum;
    const RatMatrix z = to_rational(kernel_lattice_basis(c.boundary(c.dim())).vectors);
    const RatMatrix fz = f.weighted_sum * z;
    const RatMatrix dz = f.delta * z;

    Json rep{{"tree_count", trees.size()}, {"delta", doc::rational_json(f.delta)}};
    rep["identities"] = Json::array({
        identity_json("sum_T w_T T-bar / Delta = R-orthogonal projection onto Z_d", doc::matrix_json(tree),
                      doc::matrix_json(direct), tree == direct),
        identity_json("R F = (R F)^T", doc::matrix_json(rf), doc::matrix_json(RatMatrix(rf.transpose())),
                      rf == RatMatrix(rf.transpose())),
        identity_json("F z = Delta z on a cycle basis", doc::matrix_json(fz), doc::matrix_json(dz), fz == dz),
    });
    return rep;
}

Json verify_b(const Loaded& l)
{
    const CellComplex& c = l.complex;
    require_dim(c, "theorem B");
    const int d = c.dim();
    const std::vector<SpanningTree> trees = enumerate_spanning_trees(c);
    Json rep;
    Json ids = Json::array();
    if (l.problem) {
        const NetworkProblem np{c, l.problem->p, l.problem->q};
        const NetworkSolution direct = solve_direct(np);
        const NetworkSolution laws = solve_by_laws(np);
        const ResidualReport res = verify_solution(np, direct);
        const ChainVector z = branch_current(c, l.problem->q, trees);
        const ChainVector zd = branch_current_direct(c, l.problem->q);
        rep["V"] = doc::vector_json(direct.V.coords);
        rep["J"] = doc::vector_json(direct.J.coords);
        rep["z"] = doc::vector_json(z.coords);
        rep["residuals"] = {{"ohm", doc::vector_json(res.ohm)},
                            {"current", doc::vector_json(res.current)},
                            {"voltage", doc::vector_json(res.voltage)}};
        ids.push_back(identity_json("residuals of the direct solution vanish", rep["residuals"], "0", res.ok()));
        ids.push_back(identity_json("direct solution = solution of the stacked laws", doc::vector_json(direct.J.coords),
                                    doc::vector_json(laws.J.coords), direct.J.coords == laws.J.coords));
        ids.push_back(identity_json("tree-formula z = P R^{-1} q", doc::vector_json(z.coords),
                                    doc::vector_json(zd.coords), z.coords == zd.coords));
    } else {
        bool all = true;
        RatMatrix formula(c.cell_count(d), c.cell_count(d));
        RatMatrix direct(c.cell_count(d), c.cell_count(d));
        for (Index b = 0; b < c.cell_count(d); ++b) {
            ChainVector v{d, RatVector::Zero(c.cell_count(d))};
            v.coords(b) = Rational(1);
            formula.col(b) = branch_current(c, v, trees).coords;
            direct.col(b) = branch_current_direct(c, v).coords;
            all = all && formula.col(b) == direct.col(b);
        }
        ids.push_back(identity_json("branch currents for unit sources: tree formula = P R^{-1} V",
                                    doc::matrix_json(formula), doc::matrix_json(direct), all));
    }
    rep["identities"] = std::move(ids);
    return rep;
}

Json verify_c(const Loaded& l)
{
    const CellComplex& c = l.complex;
    require_dim(c, "theorem C");
    const IdentityReport r = verify_matrix_tree(c, WeightAssignment::of(c));
    return {{"theta_X", doc::integer_json(theta_X(c))},
            {"mu_X", doc::integer_json(mu_X(c))},
            {"gamma_X", doc::rational_json(gamma_X(c))},
            {"tree_count", spanning_tree_sets(c).size()},
            {"identities", Json::array({identity_json(r)})}};
}

Json verify_c2(const Loaded& l)
{
    const CellComplex& c = l.complex;
    require_dim(c, "the sum decomposition");
    const std::optional<SubgroupSpec> a = l.problem ? l.problem->subgroup : std::nullopt;
    const SumDecompositionReport r = verify_sum_decomposition(c, WeightAssignment::of(c), a);
    Json terms = Json::array();
    for (const Rational& t : r.tree_terms)
        terms.push_back(doc::rational_json(t));
    Json ids = Json::array({identity_json(r.identity)});
    if (r.mu_sum)
        ids.push_back(identity_json(IdentityReport{"det L = sum_T mu_T", r.identity.lhs, *r.mu_sum}));
    return {{"subgroup", a ? "given" : "B_{d-1}(Z)"}, {"tree_terms", terms}, {"identities", ids}};
}

Json verify_general(const Loaded& l)
{
    const CellComplex& c = l.complex;
    require_dim(c, "the generalized identity");
    const SubgroupSpec a = l.problem && l.problem->subgroup
                               ? *l.problem->subgroup
                               : SubgroupSpec{image_lattice_basis(c.boundary(c.dim())).vectors};
    const HypothesisResult h = hypothesis_check(c, a);
    if (!h.passes)
        throw PreconditionError("hypothesis failure: " + h.reason);
    const GeneralizedReport r = verify_generalized(c, WeightAssignment::of(c), a);
    std::size_t local_ok = 0;
    for (const TreePrefactor& t : r.trees)
        if (t.gamma_local == r.gamma_A && Rational(t.t_p_A_T, r.t_p_A) == Rational(t.index) &&
            Rational(t.index) == Rational(t.theta_T, theta_X(c)))
            ++local_ok;
    Json trees = Json::array();
    for (const TreePrefactor& t : r.trees)
        trees.push_back({{"cells", cells_json(t.tree)},
                         {"theta_T", doc::integer_json(t.theta_T)},
                         {"t_p_A_T", doc::integer_json(t.t_p_A_T)},
                         {"index", doc::integer_json(t.index)},
                         {"gamma_local", doc::rational_json(t.gamma_local)}});
    return {{"subgroup", l.problem && l.problem->subgroup ? "given" : "B_{d-1}(Z)"},
            {"mu_A", doc::rational_json(r.mu_A)},
            {"t_p_A", doc::integer_json(r.t_p_A)},
            {"gamma_A", doc::rational_json(r.gamma_A)},
            {"trees", trees},
            {"identities", Json::array({identity_json(r.identity),
                                        identity_json("trees whose local prefactor and index agree",
                                                      local_ok, r.trees.size(), r.tree_local_holds)})}};
}

Json verify_lowtemp(const Loaded& l, const Options& opt)
{
    const CellComplex& c = l.complex;
    require_dim(c, "the low-temperature limit");
    const SubcomplexSpec t =
        l.problem && l.problem->tree ? *l.problem->tree : find_spanning_tree(c).top_cells;
    std::vector<unsigned> betas = opt.beta_schedule;
    if (betas.empty())
        for (unsigned b = 1; b <= 12; ++b)
            betas.push_back(b);
    const LowTemperatureReport r = low_temperature_check(c, t, WeightAssignment::of(c), betas, opt.tolerance);
    Json steps = Json::array();
    for (std::size_t i = 0; i < r.betas.size(); ++i)
        steps.push_back({{"beta", r.betas[i]},
                         {"ratio", doc::rational_json(r.ratios[i])},
                         {"deviation", doc::rational_json(r.deviations[i])}});
    std::size_t decreases = 0;
    for (std::size_t i = 1; i < r.deviations.size(); ++i)
        decreases += r.deviations[i] < r.deviations[i - 1] ? 1 : 0;
    const Json final_dev = r.deviations.empty() ? Json("") : doc::rational_json(r.deviations.back());
    return {{"tree", cells_json(t)},
            {"tolerance", doc::rational_json(r.tolerance)},
            {"steps", steps},
            {"identities", Json::array({identity_json("steps where |det L^T / det L - 1| strictly decreases",
                                                      decreases, steps.empty() ? 0 : steps.size() - 1,
                                                      r.strictly_decreasing),
                                        identity_json("final deviation < tolerance", final_dev,
                                                      doc::rational_json(r.tolerance), r.within_tolerance)})}};
}

std::optional<AllDegreeWeights> torsion_weights(const Loaded& l)
{
    bool any = false;
    AllDegreeWeights w;
    for (int k = 0; k <= l.complex.dim(); ++k) {
        any = any || l.complex.has_weights(k);
        w.push_back(l.complex.weights(k));
    }
    return any ? std::optional<AllDegreeWeights>(w) : std::nullopt;
}

Json torsion_json(const TorsionReport& r)
{
    Json degrees = Json::array();
    for (const TorsionDegree& t : r.degrees)
        degrees.push_back({{"k", t.k},
                           {"eta", doc::rational_json(t.eta)},
                           {"mu", doc::rational_json(t.mu)},
                           {"theta", doc::integer_json(t.theta)},
                           {"delta", doc::rational_json(t.delta)},
                           {"det_laplacian", doc::rational_json(t.det_laplacian)},
                           {"tree_sum", doc::rational_json(t.tree_sum)},
                           {"theta_T", doc::integer_json(t.theta_T)},
                           {"theta_V", doc::integer_json(t.theta_V)},
                           {"t_q", doc::integer_json(t.t_q)},
                           {"chi", doc::rational_json(t.chi)}});
    Json out{{"tau2_milnor", doc::rational_json(r.tau2_milnor)},
             {"tau2_laplacian", doc::rational_json(r.tau2_laplacian)},
             {"tau2_truncation", doc::rational_json(r.tau2_truncation)},
             {"weighted", r.weighted},
             {"degrees", degrees}};
    if (r.tau2_tree)
        out["tau2_tree"] = doc::rational_json(*r.tau2_tree);
    return out;
}

Json verify_torsion(const Loaded& l)
{
    const std::optional<TruncationData> td = l.problem ? l.problem->truncation : std::nullopt;
    const TorsionReport r = torsion_report(l.complex, std::nullopt, td, torsion_weights(l));
    Json rep = torsion_json(r);
    Json ids = Json::array();
    const Json m = doc::rational_json(r.tau2_milnor);
    ids.push_back(identity_json("Laplacian formula = Milnor", doc::rational_json(r.tau2_laplacian), m,
                                r.tau2_laplacian == r.tau2_milnor));
    if (r.tau2_tree)
        ids.push_back(identity_json("tree formula = Milnor", doc::rational_json(*r.tau2_tree), m,
                                    *r.tau2_tree == r.tau2_milnor));
    ids.push_back(identity_json("truncation formula = Milnor", doc::rational_json(r.tau2_truncation), m,
                                r.tau2_truncation == r.tau2_milnor));
    rep["identities"] = std::move(ids);
    return rep;
}

const std::vector<std::string>& theorem_names()
{
    static const std::vector<std::string> names{"A", "B", "C", "C2", "general", "lowtemp", "torsion"};
    return names;
}

Json verify_loaded(const Loaded& l, const std::string& theorem, const Options& opt)
{
    if (theorem == "A")
        return verify_a(l);
    if (theorem == "B")
        return verify_b(l);
    if (theorem == "C")
        return verify_c(l);
    if (theorem == "C2")
        return verify_c2(l);
    if (theorem == "general")
        return verify_general(l);
    if (theorem == "lowtemp")
        return verify_lowtemp(l, opt);
    if (theorem == "torsion")
        return verify_torsion(l);
    throw InputError("unknown theorem \"" + theorem + "\"");
}

// Text rendering: one "key: value" line per scalar, nested blocks indented.
void render_text(const Json& j, std::ostringstream& os, int indent);

std::string scalar_text(const Json& j)
{
    if (j.is_string())
        return j.get<std::string>();
    return j.dump();
}

bool is_flat(const Json& j)
{
    if (!j.is_array())
        return !j.is_object();
    return std::all_of(j.begin(), j.end(), [](const Json& e) { return !e.is_object() && !e.is_array(); });
}

std::string flat_text(const Json& j)
{
    if (!j.is_array())
        return scalar_text(j);
    std::string s = "[";
    for (std::size_t i = 0; i < j.size(); ++i)
        s += (i ? ", " : "") + scalar_text(j[i]);
    return s + "]";
}

void render_text(const Json& j, std::ostringstream& os, int indent)
{
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (j.is_object()) {
        for (const auto& [key, val] : j.items()) {
            if (is_flat(val)) {
                os << pad << key << ": " << flat_text(val) << "\n";
            } else {
                os << pad << key << ":\n";
                render_text(val, os, indent + 2);
            }
        }
    } else if (j.is_array()) {
        for (const Json& e : j) {
            if (is_flat(e)) {
                os << pad << "- " << flat_text(e) << "\n";
            } else {
                os << pad << "-\n";
                render_text(e, os, indent + 2);
            }
        }
    } else {
        os << pad << scalar_text(j) << "\n";
    }
}

Outcome input_error(const std::string& what)
{
    return {exit_input_error, Json{{"status", "error"}, {"error", what}}};
}

template <typename F>
Outcome guarded(F&& f)
{
    try {
        return f();
    } catch (const NotGoodError& e) {
        Outcome o = input_error(std::string("precondition failure: ") + e.what());
        o.report["violating_cell"] = e.cell();
        return o;
    } catch (const PreconditionError& e) {
        return input_error(std::string("precondition failure: ") + e.what());
    } catch (const InputError& e) {
        return input_error(std::string("input error: ") + e.what());
    } catch (const DegenerateError& e) {
        return input_error(std::string("degenerate input: ") + e.what());
    }
}

}  // namespace

fs::path default_corpus_dir()
{
    if (const char* env = std::getenv("CWKIRCH_CORPUS"); env && *env)
        return fs::path(env);
    return fs::path(CWKIRCH_DEFAULT_CORPUS);
}

fs::path resolve_target(const std::string& target, const Options& opt)
{
    if (fs::is_regular_file(target))
        return fs::path(target);
    const fs::path dir = corpus_of(opt);
    for (const fs::path& p : {dir / target, dir / (target + ".json")})
        if (fs::is_regular_file(p))
            return p;
    throw InputError("\"" + target + "\" is neither a file nor a document in " + dir.string());
}

Outcome cmd_info(const std::string& target, const Options& opt)
{
    return guarded([&] {
        const Loaded l = load(target, opt);
        const CellComplex& c = l.complex;
        Json betti_j = Json::array();
        for (int k = 0; k <= c.dim(); ++k)
            betti_j.push_back(betti(c, k));
        Json rep{{"command", "info"},
                 {"target", l.label},
                 {"name", c.name()},
                 {"dimension", c.dim()},
                 {"cell_counts", c.cell_counts()},
                 {"betti", betti_j},
                 {"euler_characteristic", doc::integer_json(euler_characteristic(c))}};
        const TorsionReport t = torsion_report(c);
        Json degrees = Json::array();
        for (const TorsionDegree& d : t.degrees)
            degrees.push_back({{"k", d.k},
                               {"theta", doc::integer_json(d.theta)},
                               {"mu", doc::rational_json(d.mu)},
                               {"eta", doc::rational_json(d.eta)},
                               {"delta", doc::rational_json(d.delta)}});
        rep["degrees"] = degrees;
        if (c.dim() >= 1)
            rep["gamma_X"] = doc::rational_json(gamma_X(c));
        rep["tau2"] = doc::rational_json(t.tau2_milnor);
        rep["status"] = "ok";
        return Outcome{exit_ok, rep};
    });
}

Outcome cmd_trees(const std::string& target, TreesMode mode, const Options& opt)
{
    return guarded([&] {
        const Loaded l = load(target, opt);
        const CellComplex& c = l.complex;
        require_dim(c, "spanning trees");
        Json rep{{"command", "trees"}, {"target", l.label}};
        const std::vector<SubcomplexSpec> sets = spanning_tree_sets(c);
        rep["count"] = sets.size();
        if (mode != TreesMode::count) {
            Json list = Json::array();
            Rational delta(0);
            for (const SubcomplexSpec& s : sets) {
                const Integer th = tree_theta(c, s);
                Json e{{"cells", cells_json(s)}, {"theta", doc::integer_json(th)}};
                if (mode == TreesMode::weights) {
                    const Rational w = tree_weight(c, s, th);
                    delta += w;
                    e["w_T"] = doc::rational_json(w);
                }
                list.push_back(std::move(e));
            }
            rep["trees"] = std::move(list);
            if (mode == TreesMode::weights)
                rep["delta"] = doc::rational_json(delta);
        }
        rep["status"] = "ok";
        return Outcome{exit_ok, rep};
    });
}

Outcome cmd_verify(const std::string& target, const std::string& theorem, const Options& opt)
{
    return guarded([&] {
        if (std::find(theorem_names().begin(), theorem_names().end(), theorem) == theorem_names().end())
            throw InputError("unknown theorem \"" + theorem + "\"; expected A, B, C, C2, general, lowtemp or torsion");
        const Loaded l = load(target, opt);
        Json rep = verify_loaded(l, theorem, opt);
        rep["command"] = "verify";
        rep["theorem"] = theorem;
        rep["target"] = l.label;
        return finish(std::move(rep));
    });
}

Outcome cmd_solve(const std::string& problem, const Options& opt)
{
    return guarded([&] {
        const Loaded l = load(problem, opt);
        if (!l.problem)
            throw InputError(l.path.string() + " is a complex, not a problem document");
        const NetworkProblem np{l.complex, l.problem->p, l.problem->q};
        const NetworkSolution s = solve_direct(np);
        const ResidualReport res = verify_solution(np, s);
        const ChainVector z = branch_current(l.complex, l.problem->q);
        Json rep{{"command", "solve"},
                 {"target", l.label},
                 {"V", doc::vector_json(s.V.coords)},
                 {"J", doc::vector_json(s.J.coords)},
                 {"z", doc::vector_json(z.coords)},
                 {"residuals",
                  {{"ohm", doc::vector_json(res.ohm)},
                   {"current", doc::vector_json(res.current)},
                   {"voltage", doc::vector_json(res.voltage)}}}};
        rep["status"] = res.ok() ? "ok" : "fail";
        return Outcome{res.ok() ? exit_ok : exit_identity_failure, rep};
    });
}

Outcome cmd_all(const Options& opt)
{
    const fs::path dir = corpus_of(opt);
    if (!fs::is_directory(dir))
        return input_error("corpus directory " + dir.string() + " does not exist");
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".json")
            files.push_back(e.path());
    std::sort(files.begin(), files.end());

    Json results = Json::array();
    bool failed = false;
    bool errored = false;
    for (const fs::path& f : files) {
        std::vector<std::string> theorems;
        try {
            const Json j = doc::read_file(f);
            if (doc::kind_of(j) == doc::Kind::complex) {
                const CellComplex c = doc::complex_from_json(j);
                if (c.dim() >= 1)
                    theorems = {"A", "B", "C", "C2", "general"};
                theorems.push_back("torsion");
            } else {
                theorems = {"B"};
                if (j.contains("subgroup"))
                    theorems.insert(theorems.end(), {"C2", "general"});
                if (j.contains("tree"))
                    theorems.push_back("lowtemp");
                if (j.contains("truncation"))
                    theorems.push_back("torsion");
            }
        } catch (const std::exception& e) {
            results.push_back({{"target", f.stem().string()}, {"status", "error"}, {"error", e.what()}});
            errored = true;
            continue;
        }
        Options o = opt;
        o.corpus_dir = dir;
        for (const std::string& th : theorems) {
            const Outcome out = cmd_verify(f.string(), th, o);
            Json entry{{"target", f.stem().string()}, {"theorem", th}, {"status", out.report["status"]}};
            if (out.report.contains("error"))
                entry["error"] = out.report["error"];
            results.push_back(std::move(entry));
            failed = failed || out.exit_code == exit_identity_failure;
            errored = errored || out.exit_code == exit_input_error;
        }
    }
    const int code = errored ? exit_input_error : failed ? exit_identity_failure : exit_ok;
    return {code, Json{{"command", "all"},
                       {"corpus", dir.string()},
                       {"results", results},
                       {"status", code == exit_ok ? "pass" : code == exit_identity_failure ? "fail" : "error"}}};
}

Outcome cmd_export_corpus(const fs::path& dir)
{
    return guarded([&] {
        fs::create_directories(dir);
        Json written = Json::array();
        for (const CellComplex& c : corpus::all()) {
            const fs::path p = dir / (c.name() + ".json");
            std::ofstream out(p);
            if (!out)
                throw InputError("cannot write " + p.string());
            out << doc::dump(doc::complex_to_json(c));
            written.push_back(p.filename().string());
        }
        return Outcome{exit_ok, Json{{"command", "export-corpus"}, {"written", written}, {"status", "ok"}}};
    });
}

std::string render(const Json& report, Format format)
{
    if (format == Format::structured)
        return doc::dump(report);
    std::ostringstream os;
    render_text(report, os, 0);
    return os.str();
}

std::vector<unsigned> parse_beta_schedule(const std::string& text)
{
    std::vector<unsigned> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || !std::all_of(item.begin(), item.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
            throw InputError("--beta-schedule: \"" + item + "\" is not a natural number");
        out.push_back(static_cast<unsigned>(std::stoul(item)));
    }
    if (out.empty())
        throw InputError("--beta-schedule is empty");
    return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact higher-dimensional Kirchhoff identities on CW complexes", "cwkirch"};
    app.require_subcommand(0, 1);
    app.fallthrough();

    std::string format = "text";
    std::string weights;
    std::string beta;
    std::string tolerance;
    bool all = false;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "structured"}));
    app.add_option("--weights", weights, "Weights document replacing the complex's weights");
    app.add_option("--beta-schedule", beta, "Comma-separated natural numbers (lowtemp)");
    app.add_option("--tolerance", tolerance, "Final-deviation bound p/q (lowtemp)");
    app.add_flag("--all", all, "Verify every document of the corpus");

    std::string target;
    auto* info = app.add_subcommand("info", "Betti numbers, torsion orders, covolumes and prefactors");
    info->add_option("target", target, "Complex or problem file, or corpus name")->required();

    auto* trees = app.add_subcommand("trees", "Spanning trees");
    trees->add_option("target", target)->required();
    bool count = false;
    bool list = false;
    bool tree_weights = false;
    auto* g = trees->add_option_group("mode");
    g->add_flag("--count", count);
    g->add_flag("--list", list);
    g->add_flag("--weights", tree_weights);
    g->require_option(0, 1);

    auto* verify = app.add_subcommand("verify", "Check one identity exactly");
    std::string theorem;
    verify->add_option("--theorem", theorem)->required()->check(CLI::IsMember(theorem_names()));
    verify->add_option("target", target)->required();

    auto* solve = app.add_subcommand("solve", "Solve a network problem exactly");
    solve->add_option("problem", target)->required();

    auto* exp = app.add_subcommand("export-corpus", "Write the built-in complexes as documents");
    std::string dir;
    exp->add_option("dir", dir)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_input_error;
    }

    Options opt;
    Outcome result;
    try {
        opt.format = format == "structured" ? Format::structured : Format::text;
        if (!weights.empty())
            opt.weights = weights;
        if (!beta.empty())
            opt.beta_schedule = parse_beta_schedule(beta);
        if (!tolerance.empty())
            opt.tolerance = parse_rational(tolerance);
    } catch (const std::exception& e) {
        err << "input error: " << e.what() << "\n";
        return exit_input_error;
    }

    if (*info)
        result = cmd_info(target, opt);
    else if (*trees)
        result = cmd_trees(target, list ? TreesMode::list : tree_weights ? TreesMode::weights : TreesMode::count, opt);
    else if (*verify)
        result = cmd_verify(target, theorem, opt);
    else if (*solve)
        result = cmd_solve(target, opt);
    else if (*exp)
        result = cmd_export_corpus(dir);
    else if (all)
        result = cmd_all(opt);
    else {
        out << app.help();
        return exit_input_error;
    }

    out << render(result.report, opt.format);
    if (result.exit_code == exit_input_error && result.report.contains("error"))
        err << result.report["error"].get<std::string>() << "\n";
    return result.exit_code;
}

}  // namespace cwk::cli
