#include <catch_amalgamated.hpp>

#include <filesystem>

#include "cwkirch/corpus.hpp"
#include "cwkirch/document.hpp"
#include "cwkirch/error.hpp"
#include "support.hpp"

using namespace cwk;
using doc::Json;

namespace {

const std::filesystem::path corpus_dir{CWKIRCH_TEST_CORPUS};

}  // namespace

TEST_CASE("complex documents round trip", "[document]")
{
    for (const CellComplex& c : corpus::all()) {
        INFO(c.name());
        const Json j = doc::complex_to_json(c);
        CHECK(doc::complex_from_json(j) == c);
        CHECK(doc::complex_to_json(doc::complex_from_json(doc::parse(doc::dump(j), "mem"))) == j);
    }
    const CellComplex w = corpus::theta().with_weights(1, support::vec({2, Rational(3, 5), 6}));
    CHECK(doc::complex_from_json(doc::complex_to_json(w)) == w);
}

TEST_CASE("corpus files are the canonical dumps of the built-in complexes", "[document]")
{
    for (const CellComplex& c : corpus::all()) {
        INFO(c.name());
        const std::filesystem::path file = corpus_dir / (c.name() + ".json");
        REQUIRE(std::filesystem::exists(file));
        CHECK(doc::read_file(file) == doc::complex_to_json(c));
        CHECK(doc::complex_from_json(doc::read_file(file)) == c);
    }
}

TEST_CASE("syntax errors report line and column", "[document]")
{
    try {
        doc::parse("{\n  \"name\": \"x\",\n  oops\n}", "broken.json");
        FAIL("parse accepted malformed text");
    } catch (const InputError& e) {
        const std::string what = e.what();
        CHECK(what.find("broken.json") != std::string::npos);
        CHECK(what.find("3:") != std::string::npos);
    }
}

TEST_CASE("malformed complex documents are rejected", "[document]")
{
    Json j = doc::complex_to_json(corpus::theta());
    SECTION("bad triplet")
    {
        j["boundaries"].push_back(Json::array({1, 0}));
        CHECK_THROWS_AS(doc::complex_from_json(j), InputError);
    }
    SECTION("out of range entry")
    {
        j["boundaries"].push_back(Json::array({1, 5, 0, 1}));
        CHECK_THROWS_AS(doc::complex_from_json(j), InputError);
    }
    SECTION("boundary of boundary nonzero")
    {
        Json bad = doc::complex_to_json(corpus::rp2_min());
        bad["boundaries"] = Json::array({Json::array({2, 0, 0, 1})});
        bad["cell_counts"] = Json::array({1, 1, 1});
        CHECK_NOTHROW(doc::complex_from_json(bad));
        bad["cell_counts"] = Json::array({2, 1, 1});
        bad["boundaries"] = Json::array({Json::array({1, 0, 0, -1}), Json::array({1, 1, 0, 1}),
                                         Json::array({2, 0, 0, 1})});
        CHECK_THROWS_AS(doc::complex_from_json(bad), InputError);
    }
    SECTION("missing field")
    {
        j.erase("cell_counts");
        CHECK_THROWS_AS(doc::complex_from_json(j), InputError);
    }
    SECTION("non-positive weight")
    {
        j["weights"] = Json{{"1", Json::array({"1", "0", "1"})}};
        CHECK_THROWS_AS(doc::complex_from_json(j), InputError);
    }
}

TEST_CASE("rationals are written in lowest terms", "[document]")
{
    Json j = doc::complex_to_json(corpus::theta());
    j["weights"] = Json{{"1", Json::array({"3/6", "2", "-4/-2"})}};
    const CellComplex c = doc::complex_from_json(j);
    CHECK(c.weights(1)(0) == Rational(1, 2));
    const Json out = doc::complex_to_json(c);
    CHECK(out["weights"]["1"][0] == "1/2");
    CHECK(doc::rational_json(Rational(6, 4)) == "3/2");
}

TEST_CASE("problem documents", "[document]")
{
    const auto load = [](const std::string& name) {
        return doc::problem_from_json(doc::read_file(corpus_dir / name), corpus_dir, corpus_dir);
    };
    const doc::ProblemDocument div = load("theta_divider.json");
    CHECK(div.complex == corpus::theta());
    CHECK(div.p.coords == support::vec({-1, 1}));
    CHECK(div.q.coords.isZero());
    CHECK(doc::kind_of(doc::read_file(corpus_dir / "theta_divider.json")) == doc::Kind::problem);
    CHECK(doc::kind_of(doc::read_file(corpus_dir / "theta.json")) == doc::Kind::complex);

    const doc::ProblemDocument weighted = load("theta_weighted_divider.json");
    REQUIRE(weighted.weights.has_value());
    CHECK(*weighted.weights == support::vec({2, 3, 6}));

    const doc::ProblemDocument sub = load("theta_subgroup.json");
    REQUIRE(sub.subgroup.has_value());
    CHECK(sub.subgroup->basis == support::mat(2, 1, {0, 1}));

    const doc::ProblemDocument low = load("rp2_double_lowtemp.json");
    REQUIRE(low.tree.has_value());
    CHECK(*low.tree == SubcomplexSpec({0}));

    const doc::ProblemDocument trunc = load("rp2_min_truncation.json");
    REQUIRE(trunc.truncation.has_value());
    CHECK(trunc.truncation->truncations[0] == SubcomplexSpec({0}));

    const Json again = doc::problem_to_json(div);
    CHECK(doc::problem_from_json(again, corpus_dir, corpus_dir).p.coords == div.p.coords);
}

TEST_CASE("problems with inline complexes and bad references", "[document]")
{
    Json j{{"complex", doc::complex_to_json(corpus::theta())},
           {"p", Json::array({Json::array({0, "-1"}), Json::array({1, "1"})})},
           {"q", Json::array()}};
    const doc::ProblemDocument p = doc::problem_from_json(j, ".", corpus_dir);
    CHECK(p.complex == corpus::theta());
    CHECK_FALSE(p.complex_ref.has_value());

    j["p"] = Json::array({Json::array({7, "1"})});
    CHECK_THROWS_AS(doc::problem_from_json(j, ".", corpus_dir), InputError);

    const Json missing{{"complex", "no_such_complex.json"}, {"p", Json::array()}, {"q", Json::array()}};
    CHECK_THROWS_AS(doc::problem_from_json(missing, ".", corpus_dir), InputError);
}

TEST_CASE("dump keeps scalar arrays on one line", "[document]")
{
    const std::string text = doc::dump(Json{{"a", Json::array({1, 2, 3})}, {"b", Json::array({Json::array({1, 2})})}});
    CHECK(text.find("[1, 2, 3]") != std::string::npos);
    CHECK(text.find("[1, 2]") != std::string::npos);
}
