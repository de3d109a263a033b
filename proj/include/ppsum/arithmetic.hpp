// arithmetic.hpp
// Integer primitives used throughout: an odd-only prime sieve, deterministic
// Miller-Rabin over the whole 64-bit range, exact integer k-th roots and
// downward prime stepping.

#pragma once
#include <cstdint>
#include <optional>
#include <vector>

#include "ppsum/errors.hpp"

namespace ppsum {

using u128 = unsigned __int128;

// -------------------------------------------------------
// PrimeTable: primality of every n in [0, limit].
// Stores one bit per odd number; 2 is special-cased.
//   bit index i  ->  odd number 2*i + 1
// Memory: ~limit/16 bytes.
// -------------------------------------------------------
class PrimeTable {
public:
    PrimeTable() = default;

    std::uint64_t limit() const noexcept { return limit_; }
    std::uint64_t count() const noexcept { return count_; }

    bool contains(std::uint64_t n) const noexcept {
        if (n > limit_) return false;
        if (n == 2) return true;
        if ((n & 1) == 0) return false;
        const std::uint64_t i = n >> 1;
        return (bits_[i >> 6] >> (i & 63)) & 1;
    }

    // Number of primes <= n, for n <= limit. Linear in n/128.
    std::uint64_t count_upto(std::uint64_t n) const;

    // Primes in ascending order.
    std::vector<std::uint64_t> primes() const;

    // Bytes a table covering `limit` would occupy.
    static std::uint64_t bytes_for(std::uint64_t limit) noexcept;

private:
    friend PrimeTable sieve_primes(std::uint64_t, std::uint64_t);

    std::uint64_t limit_ = 0;
    std::uint64_t count_ = 0;
    std::vector<std::uint64_t> bits_;
};

// Segmented sieve of Eratosthenes. Throws ResourceLimit when the table
// would exceed `memory_budget` bytes.
PrimeTable sieve_primes(std::uint64_t limit,
                        std::uint64_t memory_budget = kDefaultMemoryBudget);

// Deterministic for all 64-bit n (first twelve prime bases).
bool is_prime(std::uint64_t n) noexcept;

// Smallest prime factor of n if it is below `bound`, else nullopt.
std::optional<std::uint64_t> small_factor(std::uint64_t n, std::uint64_t bound = 1000) noexcept;

struct RootResult {
    std::uint64_t root;
    bool exact;

    friend bool operator==(const RootResult&, const RootResult&) = default;
};

// floor(n^(1/k)) by integer Newton iteration; exact when root^k == n.
// Throws InvalidArgument for k < 2.
RootResult integer_root(std::uint64_t n, unsigned k);

std::uint64_t isqrt(std::uint64_t n) noexcept;

// base^exp, or nullopt when the result does not fit in 64 bits.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp) noexcept;

// Largest prime strictly below n; nullopt when n <= 2.
std::optional<std::uint64_t> previous_prime(std::uint64_t n) noexcept;

// Smallest prime strictly above n; nullopt past the largest 64-bit prime.
std::optional<std::uint64_t> next_prime(std::uint64_t n) noexcept;

// floor(log2 n) for n >= 1.
inline unsigned floor_log2(std::uint64_t n) noexcept {
    return 63u - static_cast<unsigned>(__builtin_clzll(n));
}

}  // namespace ppsum
