#ifndef CWKIRCH_COMMANDS_HPP
#define CWKIRCH_COMMANDS_HPP

// The command-line surface, callable in-process. Every command returns a
// report document and an exit code: 0 success, 1 an identity failed,
// 2 the input was unreadable, invalid, or violated a precondition.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cwkirch/document.hpp"

namespace cwk::cli {

enum class Format { text, structured };
enum class TreesMode { count, list, weights };

enum ExitCode : int { exit_ok = 0, exit_identity_failure = 1, exit_input_error = 2 };

struct Options {
    Format format = Format::text;
    std::optional<std::filesystem::path> weights;  // replaces the complex's own weights
    std::vector<unsigned> beta_schedule;           // empty: 1..12
    Rational tolerance{1, 1000000};
    std::filesystem::path corpus_dir;              // empty: default_corpus_dir()
};

struct Outcome {
    int exit_code = exit_ok;
    doc::Json report;
};

/// $CWKIRCH_CORPUS when set, else the corpus directory of the source tree.
std::filesystem::path default_corpus_dir();

/// A target is a file path or the name of a corpus document.
std::filesystem::path resolve_target(const std::string& target, const Options& opt);

Outcome cmd_info(const std::string& target, const Options& opt);
Outcome cmd_trees(const std::string& target, TreesMode mode, const Options& opt);
/// theorem is one of A, B, C, C2, general, lowtemp, torsion.
Outcome cmd_verify(const std::string& target, const std::string& theorem, const Options& opt);
Outcome cmd_solve(const std::string& problem, const Options& opt);
/// Every applicable verification over every corpus document, sorted by file name.
Outcome cmd_all(const Options& opt);
/// Writes the built-in complexes as canonical documents.
Outcome cmd_export_corpus(const std::filesystem::path& dir);

std::string render(const doc::Json& report, Format format);

std::vector<unsigned> parse_beta_schedule(const std::string& text);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cwk::cli

#endif  // CWKIRCH_COMMANDS_HPP
