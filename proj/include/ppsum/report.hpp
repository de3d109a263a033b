// report.hpp
// JSON / CSV / text renderings of every result type.
//
// JSON convention: natural numbers that can exceed 2^53 (targets, summand
// values and bases, seeds, sample bounds, gap endpoints) are written as
// decimal strings. Counts bounded by memory stay JSON numbers.

#pragma once
#include <string>
#include <vector>

#include "json.hpp"
#include "ppsum/decomposer.hpp"
#include "ppsum/range_verifier.hpp"
#include "ppsum/statistics.hpp"

namespace ppsum {

using Json = nlohmann::ordered_json;

struct FixtureResult {
    std::uint64_t target = 0;
    std::vector<std::uint64_t> values;
    bool ok = false;
    std::string diagnostic;
    std::vector<PrimePower> parts;  // classified parts, empty when a part fails

    friend bool operator==(const FixtureResult&, const FixtureResult&) = default;
};

struct StatsReport {
    std::vector<DensityRow> rows;
    std::vector<PrimePowerEstimate> estimates;        // one per limit >= 4
    std::vector<TwoTermEstimate> two_term_estimates;  // one per limit >= 16

    friend bool operator==(const StatsReport&, const StatsReport&) = default;
};

struct SquareGapReport {
    std::uint64_t p = 0;
    std::uint64_t q = 0;
    GapRecord record;
    bool consecutive_checked = false;
    bool consecutive = false;
    std::uint64_t candidates_tested = 0;
    std::uint64_t first_prime_between = 0;

    friend bool operator==(const SquareGapReport&, const SquareGapReport&) = default;
};

Json to_json(const PrimePower& pp);
Json to_json(const RangeReport& r);
Json to_json(const Representation& r);
Json to_json(const SampleRun& r);
Json to_json(const DensityRow& r);
Json to_json(const GapRecord& r);
Json to_json(const PrimePowerEstimate& e);
Json to_json(const TwoTermEstimate& e);
Json to_json(const StatsReport& r);
Json to_json(const SquareGapReport& r);
Json to_json(const FixtureResult& r);

// Inverse of to_json. Throws InvalidArgument on malformed documents.
PrimePower prime_power_from_json(const Json& j);
RangeReport range_report_from_json(const Json& j);
Representation representation_from_json(const Json& j);
SampleRun sample_run_from_json(const Json& j);
DensityRow density_row_from_json(const Json& j);
GapRecord gap_record_from_json(const Json& j);
SquareGapReport square_gap_report_from_json(const Json& j);
FixtureResult fixture_result_from_json(const Json& j);
PrimePowerEstimate estimate_from_json(const Json& j);
TwoTermEstimate two_term_estimate_from_json(const Json& j);
StatsReport stats_report_from_json(const Json& j);

// limit,prime_count,prime_power_count
std::string density_csv(const std::vector<DensityRow>& rows);
std::string range_report_csv(const RangeReport& r);
std::string representation_csv(const Representation& r);
std::string sample_run_csv(const SampleRun& r);
std::string gap_record_csv(const GapRecord& r);
std::string square_gap_csv(const SquareGapReport& r);
std::string fixtures_csv(const std::vector<FixtureResult>& results);

std::string range_report_text(const RangeReport& r);
std::string representation_text(const Representation& r);
std::string sample_run_text(const SampleRun& r);
std::string stats_text(const StatsReport& r);
std::string gap_record_text(const GapRecord& r);
std::string square_gap_text(const SquareGapReport& r);
std::string fixtures_text(const std::vector<FixtureResult>& results);

// Four significant figures, e.g. 144.8, 1.048e+04.
std::string sig4(double v);

}  // namespace ppsum
