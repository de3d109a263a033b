// statistics.hpp
// Density table, prime-power gaps, consecutive prime-square gaps and the
// asymptotic count estimates built on pi(y) ~ y / ln y.

#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "ppsum/arithmetic.hpp"
#include "ppsum/errors.hpp"

namespace ppsum {

struct DensityRow {
    std::uint64_t limit = 0;
    std::uint64_t prime_count = 0;
    std::uint64_t prime_power_count = 0;

    friend bool operator==(const DensityRow&, const DensityRow&) = default;
};

// Exact pi(limit) and prime-power counts per limit.
std::vector<DensityRow> density_table(const std::vector<std::uint64_t>& limits,
                                      std::uint64_t memory_budget = kDefaultMemoryBudget);

enum class GapKind { consecutive_prime_powers, consecutive_prime_squares };

struct GapRecord {
    u128 lower = 0;
    u128 upper = 0;
    u128 gap = 0;
    GapKind kind = GapKind::consecutive_prime_powers;

    friend bool operator==(const GapRecord&, const GapRecord&) = default;
};

// Widest gap between consecutive prime powers <= limit; the earliest pair
// wins ties. Throws InvalidArgument when fewer than two prime powers exist.
GapRecord largest_gap(std::uint64_t limit, std::uint64_t memory_budget = kDefaultMemoryBudget);

// q^2 - p^2 as (q - p)(q + p), exact for every 64-bit p < q. No primality check.
u128 square_difference(std::uint64_t p, std::uint64_t q);

// q^2 - p^2 for primes p < q. Throws InvalidArgument naming the offending
// parameter when either is composite or p >= q.
GapRecord square_gap(std::uint64_t p, std::uint64_t q);

struct ConsecutivenessCheck {
    bool consecutive = false;
    std::uint64_t candidates_tested = 0;     // odd numbers strictly between p and q
    std::uint64_t first_prime_between = 0;   // 0 when none
};

// Tests every odd candidate strictly between p and q for primality.
ConsecutivenessCheck check_consecutive_primes(std::uint64_t p, std::uint64_t q);

struct EstimateTerm {
    unsigned exponent = 0;
    double root = 0;    // x^(1/k)
    double value = 0;   // root / ln(root), or exact pi(floor(root)) when root < 4
    bool exact = false;

    friend bool operator==(const EstimateTerm&, const EstimateTerm&) = default;
};

struct PrimePowerEstimate {
    std::uint64_t x = 0;
    double total = 0;
    double square_term = 0;  // the k = 2 term
    std::vector<EstimateTerm> terms;
    std::string formula;

    friend bool operator==(const PrimePowerEstimate&, const PrimePowerEstimate&) = default;
};

// sum_{k=2}^{floor(log2 x)} pi(x^(1/k)), with pi(y) ~ y/ln(y) for y >= 4.
// Throws InvalidArgument for x < 4.
PrimePowerEstimate estimate_prime_power_count(std::uint64_t x);

struct TwoTermEstimate {
    std::uint64_t x = 0;
    double value = 0;
    std::string formula;

    friend bool operator==(const TwoTermEstimate&, const TwoTermEstimate&) = default;
};

// (1/2!) * (sqrt(x) / ln(sqrt(x)))^2. Throws InvalidArgument for x < 16.
TwoTermEstimate estimate_two_term_combinations(std::uint64_t x);

std::string to_string(u128 v);
// Parses a non-negative decimal string; throws InvalidArgument on junk or overflow.
u128 parse_u128(const std::string& s);
const char* to_string(GapKind kind) noexcept;
GapKind parse_gap_kind(const std::string& s);

}  // namespace ppsum
