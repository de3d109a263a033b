// decomposer.hpp
// Explicit representations of single targets as sums of prime powers.
//
// Search: largest-first over prime powers <= n in descending value order,
// backtracking with a per-level width cap. Remainders up to `table_bound`
// are resolved from a precomputed table of minimal counts.

#pragma once
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "ppsum/errors.hpp"
#include "ppsum/prime_powers.hpp"
#include "ppsum/range_verifier.hpp"

namespace ppsum {

struct Representation {
    std::uint64_t target = 0;
    std::vector<PrimePower> parts;  // descending by value

    std::size_t term_count() const noexcept { return parts.size(); }

    friend bool operator==(const Representation&, const Representation&) = default;
};

struct ValidationResult {
    bool ok = false;
    std::string diagnostic;  // empty when ok

    explicit operator bool() const noexcept { return ok; }
};

// Every part must classify as a prime power and the values must sum to target.
ValidationResult validate(const Representation& rep);
ValidationResult validate(std::uint64_t target, std::span<const std::uint64_t> part_values);

struct DecomposeOptions {
    unsigned width = 200;                    // candidates tried per recursion level
    std::uint64_t table_bound = 2'000'000;  // remainders <= this use the table
    unsigned table_terms = kDefaultMaxTerms;
    std::uint64_t memory_budget = kDefaultMemoryBudget;
    unsigned threads = 1;                    // for building the table
};

struct DecomposeOutcome {
    std::optional<Representation> representation;
    bool width_cap_hit = false;  // some level stopped at `width` candidates
    std::uint64_t nodes = 0;     // recursion nodes visited
};

class Decomposer {
public:
    explicit Decomposer(DecomposeOptions options = {});

    // Throws InvalidArgument for n < 4 or max_terms == 0. A nullopt
    // representation means the bounded search was exhausted.
    DecomposeOutcome decompose(std::uint64_t n, unsigned max_terms = kDefaultMaxTerms,
                               bool strict_min_two = false) const;

    // Minimal count for m <= table_bound, or nullopt if m needs more than
    // table_terms summands.
    std::optional<unsigned> table_minimal_terms(std::uint64_t m) const;

    const DecomposeOptions& options() const noexcept { return options_; }

private:
    struct Search;

    unsigned table_get(std::uint64_t m) const noexcept {
        return (table_[m >> 1] >> ((m & 1) * 4)) & 0xF;
    }
    void from_table(std::uint64_t m, unsigned count, std::vector<PrimePower>& out) const;

    DecomposeOptions options_;
    std::vector<PrimePower> small_powers_;  // prime powers <= table_bound, ascending
    std::vector<std::uint8_t> table_;       // packed 4-bit minimal counts
};

inline constexpr const char* kPrngId = "mt19937_64/rejection-uniform";

struct SampleRun {
    std::uint64_t seed = 0;
    std::uint64_t range_lo = 0;
    std::uint64_t range_hi = 0;
    std::uint64_t count = 0;
    unsigned max_terms = kDefaultMaxTerms;
    bool strict_min_two = false;
    std::string prng = kPrngId;
    std::string distribution = "uniform";
    std::uint64_t successes = 0;
    std::vector<std::uint64_t> failures;              // ascending
    std::uint64_t width_cap_hits = 0;
    std::optional<std::vector<Representation>> representations;  // ordered by target

    friend bool operator==(const SampleRun&, const SampleRun&) = default;
};

struct SampleOptions {
    unsigned threads = 1;
    bool retain_representations = false;
    bool strict_min_two = false;
};

// Uniform integer in [lo, hi] from a 64-bit Mersenne Twister, by rejection
// so the mapping is identical on every platform.
std::uint64_t uniform_draw(std::uint64_t lo, std::uint64_t hi, std::mt19937_64& rng);

// Draws `count` targets from [range_lo, range_hi] with the given seed and
// decomposes each. Throws InvalidArgument unless 4 <= range_lo <= range_hi
// and count >= 1.
SampleRun sample(const Decomposer& decomposer, std::uint64_t range_lo, std::uint64_t range_hi,
                 std::uint64_t count, std::uint64_t seed, unsigned max_terms = kDefaultMaxTerms,
                 const SampleOptions& options = {});

}  // namespace ppsum
