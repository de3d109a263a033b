// prime_powers.hpp
// Prime powers p^k with p prime and k >= 2. Primes themselves (k = 1) are
// never prime powers here.

#pragma once
#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "ppsum/errors.hpp"

namespace ppsum {

struct PrimePower {
    std::uint64_t base = 0;
    unsigned exponent = 0;
    std::uint64_t value = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// All prime powers <= limit in strictly increasing order.
// Throws ResourceLimit if the base sieve or the result would exceed the budget.
std::vector<PrimePower> enumerate_prime_powers(std::uint64_t limit,
                                               std::uint64_t memory_budget = kDefaultMemoryBudget);

// Values only, same order as enumerate_prime_powers.
std::vector<std::uint64_t> prime_power_values(std::uint64_t limit,
                                              std::uint64_t memory_budget = kDefaultMemoryBudget);

// Canonical (p, k) with p^k == n, or nullopt. Exponents are tried from
// floor(log2 n) downwards, so 64 classifies as 2^6.
std::optional<PrimePower> classify(std::uint64_t n);

// Number of prime powers <= limit, computed as sum_{k>=2} pi(floor(limit^(1/k))).
std::uint64_t count_prime_powers(std::uint64_t limit,
                                 std::uint64_t memory_budget = kDefaultMemoryBudget);

}  // namespace ppsum
