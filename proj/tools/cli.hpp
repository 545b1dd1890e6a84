#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace igbm::cli {

enum class Subcommand { Rate, Bond, Asian, MonteCarlo, Reproduce, Validate };
enum class OutputFormat { Json, Csv };

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kNumericalFailure = 1;
inline constexpr int kArgumentError = 2;
inline constexpr int kValidationFailure = 3;

/// Parsed command line. `params` holds the subcommand flags by name
/// (without leading dashes), as given.
struct RunSpec {
    Subcommand subcommand = Subcommand::Rate;
    std::map<std::string, std::string> params;
    OutputFormat output = OutputFormat::Json;
    std::optional<std::string> out_path;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
};

/// Parses argv into a RunSpec. Throws InvalidArgument on bad input; returns
/// nullopt when --help was handled (text already written to `out`).
std::optional<RunSpec> parse(const std::vector<std::string>& args, std::ostream& out);

/// Executes a spec, writing the artifact to spec.out_path or `out` and
/// diagnostics to `err`. Returns one of the exit codes above.
int run(const RunSpec& spec, std::ostream& out, std::ostream& err);

/// parse + run with exceptions mapped to exit codes.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace igbm::cli
