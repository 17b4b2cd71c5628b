#ifndef CWKIRCH_DOCUMENT_HPP
#define CWKIRCH_DOCUMENT_HPP

// JSON documents for complexes and network problems.
//
// Complex document:
//   {"name": "...", "dimension": d, "cell_counts": [n_0, ..., n_d],
//    "boundaries": [[k, row, col, value], ...],        nonzero entries of D_k
//    "weights": {"k": ["p/q", ...]},                    optional, per degree
//    "cell_names": {"k": ["...", ...]}}                 optional, per degree
//
// Problem document:
//   {"complex": "file.json" | {...inline complex...},
//    "p": [[cell, "p/q"], ...], "q": [[cell, "p/q"], ...],   sparse, default zero
//    "weights": ["p/q", ...],                                  optional top-cell resistances
//    "subgroup": [[[cell, n], ...], ...],                      optional sparse basis of A
//    "tree": [cell, ...],                                      optional spanning tree
//    "truncation": {"trees": [[...], ...], "truncations": [[...], ...]}}
//
// Serialization is canonical: sorted keys, sorted nonzero triplets, rationals
// in lowest terms.

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "cwkirch/chain_complex.hpp"
#include "cwkirch/matrix_tree.hpp"
#include "cwkirch/torsion.hpp"

namespace cwk::doc {

using Json = nlohmann::json;

enum class Kind { complex, problem };

Json complex_to_json(const CellComplex& c);
/// Throws InputError on malformed or invalid documents.
CellComplex complex_from_json(const Json& j);

struct ProblemDocument {
    CellComplex complex;
    std::optional<std::string> complex_ref;  // as written, when not inline
    ChainVector p;
    ChainVector q;
    std::optional<RatVector> weights;
    std::optional<SubgroupSpec> subgroup;
    std::optional<SubcomplexSpec> tree;
    std::optional<TruncationData> truncation;
};

/// `complex_ref` paths resolve against base_dir, then against corpus_dir.
ProblemDocument problem_from_json(const Json& j, const std::filesystem::path& base_dir,
                                  const std::filesystem::path& corpus_dir);
Json problem_to_json(const ProblemDocument& p);

Kind kind_of(const Json& j);

/// Parses text; syntax errors carry "line:column".
Json parse(const std::string& text, const std::string& source);
Json read_file(const std::filesystem::path& path);
std::string dump(const Json& j);

Json rational_json(const Rational& q);
Json integer_json(const Integer& n);
Json vector_json(const RatVector& v);
Json matrix_json(const RatMatrix& m);

/// Positive rationals keyed by degree, as in the complex "weights" field.
AllDegreeWeights all_degree_weights(const Json& j, const CellComplex& c);

}  // namespace cwk::doc

#endif  // CWKIRCH_DOCUMENT_HPP
