// cli.hpp
// Command-line surface: argument parsing, dispatch, report writing and the
// exit-status contract.

#pragma once
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ppsum/report.hpp"

namespace ppsum::cli {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kMemoryBudgetEnv = "PPSUM_MEMORY_BUDGET";

// Stable exit statuses.
enum ExitCode : int {
    kOk = 0,
    kInternalError = 1,
    kInvalidArguments = 2,
    kResourceLimit = 3,
    kConjectureViolation = 4,   // verify found an exception above 23
    kDecompositionFailure = 5,  // decompose/sample left a target unrepresented
    kCheckpointError = 6,
    kFixtureFailure = 7,
};

enum class Subcommand { verify, decompose, sample, stats, gaps, square_gap, check_fixtures };
enum class Format { json, csv, text };

const char* to_string(Subcommand s) noexcept;
const char* to_string(Format f) noexcept;

struct RunConfig {
    Subcommand subcommand = Subcommand::check_fixtures;

    // verify / sample ranges
    std::uint64_t from = 1;
    std::uint64_t to = 0;
    unsigned max_terms = kDefaultMaxTerms;
    bool strict_min_two = false;

    // decompose / sample search
    std::uint64_t n = 0;
    unsigned width = 200;
    std::uint64_t table_bound = 2'000'000;
    std::uint64_t count = 1000;
    std::optional<std::uint64_t> seed;
    bool keep_representations = false;

    // stats / gaps / square-gap
    std::vector<std::uint64_t> limits;
    std::uint64_t limit = 0;
    std::uint64_t p = 0;
    std::uint64_t q = 0;
    bool check_consecutive = true;

    std::optional<std::string> output_path;
    Format format = Format::json;
    std::optional<std::string> checkpoint_path;
    std::uint64_t memory_budget = kDefaultMemoryBudget;
    unsigned threads = 1;
    bool quiet = false;
};

// Thrown by parse_args when --help was requested; carries the help text.
struct HelpRequested {
    std::string text;
};

// Natural number with optional '_' digit separators ("10_000_000").
// Throws InvalidArgument naming `param` on malformed input.
std::uint64_t parse_natural(std::string_view text, std::string_view param);

// Comma-separated list of naturals.
std::vector<std::uint64_t> parse_natural_list(std::string_view text, std::string_view param);

// args excludes the program name. Throws InvalidArgument or HelpRequested.
RunConfig parse_args(const std::vector<std::string>& args);

// Checks every numeric parameter before any computation.
void validate(const RunConfig& config);

Json config_echo(const RunConfig& config);

// Runs the subcommand, writes the report to `out` (or config.output_path)
// and returns an ExitCode. Diagnostics and progress go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Full entry point used by the executable.
int main(int argc, char** argv);

struct Fixture {
    std::uint64_t target;
    std::vector<std::uint64_t> values;
};

// The eleven published example representations.
const std::vector<Fixture>& published_fixtures();

std::vector<FixtureResult> check_fixtures(const std::vector<Fixture>& fixtures = published_fixtures());

}  // namespace ppsum::cli
