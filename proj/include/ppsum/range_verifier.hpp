// range_verifier.hpp
// Exhaustive minimal-summand counts over [0, hi] by layered sumsets.
//
//   B_1 = prime powers <= hi
//   B_t = { b + s <= hi : b in B_(t-1), s prime power }
//
// r(n) is the least t with n in B_t (least t >= 2 in strict mode). Summands
// may repeat, so B_t holds sums of exactly t prime powers with multiplicity.
// Every layer is retained: memory is max_terms * (hi+1)/8 bytes.

#pragma once
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ppsum/bitset.hpp"
#include "ppsum/errors.hpp"

namespace ppsum {

// Conjecture 1 allows exceptions only up to this value.
inline constexpr std::uint64_t kConjectureThreshold = 23;
inline constexpr unsigned kDefaultMaxTerms = 5;

struct RangeReport {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    unsigned max_terms = kDefaultMaxTerms;
    bool strict_min_two = false;
    std::map<unsigned, std::uint64_t> histogram;  // t in 1..max_terms
    std::vector<std::uint64_t> exceptions;
    bool conjecture_pass = true;

    friend bool operator==(const RangeReport&, const RangeReport&) = default;
};

struct VerifyOptions {
    unsigned threads = 1;
    std::uint64_t memory_budget = kDefaultMemoryBudget;
    // Invoked after each completed layer with (completed, max_terms).
    std::function<void(unsigned, unsigned)> on_level;
};

struct Checkpoint {
    static constexpr std::uint64_t kFormatVersion = 1;

    std::uint64_t format_version = kFormatVersion;
    std::uint64_t hi = 0;
    std::uint64_t max_terms = 0;
    std::uint64_t completed_levels = 0;
    std::vector<std::vector<std::uint64_t>> level_words;  // one entry per completed layer

    friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

class SumsetLayers {
public:
    // Throws InvalidArgument for max_terms == 0, ResourceLimit when the
    // layers would not fit in the budget.
    SumsetLayers(std::uint64_t hi, unsigned max_terms,
                 std::uint64_t memory_budget = kDefaultMemoryBudget);

    std::uint64_t hi() const noexcept { return hi_; }
    unsigned max_terms() const noexcept { return max_terms_; }
    unsigned completed_levels() const noexcept { return static_cast<unsigned>(layers_.size()); }
    bool complete() const noexcept { return completed_levels() == max_terms_; }
    const std::vector<std::uint64_t>& summands() const noexcept { return summands_; }

    // Builds the next layer. Destination words are split across `threads`
    // workers; each owns a disjoint word range, so the result does not
    // depend on the thread count.
    void advance(unsigned threads = 1);
    void run(unsigned threads = 1,
             const std::function<void(unsigned, unsigned)>& on_level = {});

    // n in B_t. Requires t <= completed_levels() and n <= hi.
    bool contains(unsigned t, std::uint64_t n) const;

    // Least admissible t, or nullopt if none <= max_terms. Requires a
    // complete state; throws InvalidArgument when n > hi.
    std::optional<unsigned> minimal_terms(std::uint64_t n, bool strict_min_two = false) const;

    // Aggregates r(n) over [lo, hi_report]. Requires a complete state.
    RangeReport report(std::uint64_t lo, std::uint64_t hi_report, bool strict_min_two) const;

    Checkpoint save_checkpoint() const;
    // Rebuilds a state; throws CheckpointError on version/parameter
    // mismatch or malformed layers.
    static SumsetLayers resume_from(const Checkpoint& checkpoint, std::uint64_t expected_hi,
                                    unsigned expected_max_terms,
                                    std::uint64_t memory_budget = kDefaultMemoryBudget);

    static std::uint64_t bytes_for(std::uint64_t hi, unsigned max_terms) noexcept;

private:
    std::uint64_t hi_;
    unsigned max_terms_;
    std::vector<std::uint64_t> summands_;
    std::vector<Bitset> layers_;
};

// Runs the full DP from 0 (summands below lo still contribute) and reports
// on [lo, hi]. Throws InvalidArgument unless 1 <= lo <= hi and max_terms >= 1.
RangeReport verify_range(std::uint64_t lo, std::uint64_t hi, unsigned max_terms = kDefaultMaxTerms,
                         bool strict_min_two = false, const VerifyOptions& options = {});

// Binary checkpoint files, all fields little-endian:
//   magic "PPSUMCKP" | u64 format_version | u64 hi | u64 max_terms |
//   u64 completed_levels | per level: u64 word_count, word_count x u64 |
//   u64 crc32 of every preceding byte
void write_checkpoint(std::ostream& out, const Checkpoint& checkpoint);
Checkpoint read_checkpoint(std::istream& in);
void write_checkpoint_file(const std::string& path, const Checkpoint& checkpoint);
Checkpoint read_checkpoint_file(const std::string& path);

}  // namespace ppsum
