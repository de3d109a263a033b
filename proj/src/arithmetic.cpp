// arithmetic.cpp

#include "ppsum/arithmetic.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <string>

namespace ppsum {

namespace {

constexpr std::uint64_t kSegmentBits = std::uint64_t{1} << 18;  // 32 KiB window

std::uint64_t odd_slots(std::uint64_t limit) noexcept {
    return limit == 0 ? 0 : (limit - 1) / 2 + 1;
}

std::vector<std::uint64_t> small_odd_primes(std::uint64_t bound) {
    std::vector<char> composite(bound + 1, 0);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 3; i <= bound; i += 2) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= bound; j += 2 * i) composite[j] = 1;
    }
    return out;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept {
    std::uint64_t result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

// n odd, n > a. False means n is certainly composite.
bool strong_probable_prime(std::uint64_t n, std::uint64_t a) noexcept {
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < r; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

// Saturates at 2^64 so callers can compare against any 64-bit n.
u128 saturating_pow(std::uint64_t base, unsigned exp) noexcept {
    constexpr u128 cap = u128{1} << 64;
    u128 result = 1;
    for (unsigned i = 0; i < exp; ++i) {
        result *= base;
        if (result >= cap) return cap;
    }
    return result;
}

}  // namespace

// -------------------------------------------------------
// PrimeTable
// -------------------------------------------------------

std::uint64_t PrimeTable::bytes_for(std::uint64_t limit) noexcept {
    return (odd_slots(limit) + 63) / 64 * 8;
}

std::uint64_t PrimeTable::count_upto(std::uint64_t n) const {
    n = std::min(n, limit_);
    if (n < 2) return 0;
    // odd numbers 3..n live at bit indices 1..(n-1)/2; bit 0 (the number 1) is clear
    const std::uint64_t last = (n - 1) / 2;
    std::uint64_t total = 1;  // the prime 2
    const std::uint64_t full_words = (last + 1) / 64;
    for (std::uint64_t w = 0; w < full_words; ++w) total += std::popcount(bits_[w]);
    const std::uint64_t rem = (last + 1) % 64;
    if (rem) total += std::popcount(bits_[full_words] & ((std::uint64_t{1} << rem) - 1));
    return total;
}

std::vector<std::uint64_t> PrimeTable::primes() const {
    std::vector<std::uint64_t> out;
    out.reserve(count_);
    if (limit_ >= 2) out.push_back(2);
    for (std::uint64_t w = 0; w < bits_.size(); ++w) {
        std::uint64_t word = bits_[w];
        while (word) {
            const int b = std::countr_zero(word);
            out.push_back(2 * (w * 64 + static_cast<std::uint64_t>(b)) + 1);
            word &= word - 1;
        }
    }
    return out;
}

PrimeTable sieve_primes(std::uint64_t limit, std::uint64_t memory_budget) {
    require_budget("sieve_primes(limit=" + std::to_string(limit) + ")",
                   PrimeTable::bytes_for(limit), memory_budget);

    PrimeTable table;
    table.limit_ = limit;
    const std::uint64_t slots = odd_slots(limit);
    table.bits_.assign((slots + 63) / 64, ~std::uint64_t{0});
    if (slots == 0) {
        table.count_ = limit >= 2 ? 1 : 0;
        return table;
    }

    const std::vector<std::uint64_t> base = small_odd_primes(isqrt(limit));
    auto& bits = table.bits_;

    for (std::uint64_t seg_lo = 0; seg_lo < slots; seg_lo += kSegmentBits) {
        const std::uint64_t seg_hi = std::min(seg_lo + kSegmentBits, slots);  // exclusive
        for (std::uint64_t p : base) {
            // first slot index >= seg_lo holding an odd multiple of p, starting at p*p
            std::uint64_t i = (p * p) / 2;
            if (i >= seg_hi) break;
            if (i < seg_lo) {
                const std::uint64_t n = 2 * seg_lo + 1;
                std::uint64_t m = (n + p - 1) / p * p;
                if ((m & 1) == 0) m += p;
                i = m / 2;
            }
            for (; i < seg_hi; i += p) bits[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
        }
    }

    bits[0] &= ~std::uint64_t{1};  // 1 is not prime
    if (slots % 64) bits.back() &= (std::uint64_t{1} << (slots % 64)) - 1;

    std::uint64_t total = limit >= 2 ? 1 : 0;
    for (std::uint64_t w : bits) total += std::popcount(w);
    table.count_ = total;
    return table;
}

// -------------------------------------------------------
// Primality
// -------------------------------------------------------

bool is_prime(std::uint64_t n) noexcept {
    static constexpr std::array<std::uint64_t, 12> kBases = {2, 3, 5, 7, 11, 13,
                                                             17, 19, 23, 29, 31, 37};
    if (n < 2) return false;
    for (std::uint64_t p : kBases) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    if (n < 41 * 41) return true;
    // Smallest deterministic base prefix for the size of n.
    const std::size_t bases = n < 3'215'031'751ull ? 4 : n < 3'825'123'056'546'413'051ull ? 9 : 12;
    for (std::size_t i = 0; i < bases; ++i)
        if (!strong_probable_prime(n, kBases[i])) return false;
    return true;
}

std::optional<std::uint64_t> small_factor(std::uint64_t n, std::uint64_t bound) noexcept {
    if (n < 4) return std::nullopt;
    if ((n & 1) == 0) return 2;
    for (std::uint64_t d = 3; d < bound && d * d <= n; d += 2)
        if (n % d == 0) return d;
    return std::nullopt;
}

// -------------------------------------------------------
// Roots and powers
// -------------------------------------------------------

std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp) noexcept {
    std::uint64_t result = 1;
    for (unsigned i = 0; i < exp; ++i)
        if (__builtin_mul_overflow(result, base, &result)) return std::nullopt;
    return result;
}

RootResult integer_root(std::uint64_t n, unsigned k) {
    if (k < 2) throw InvalidArgument("integer_root: k must be >= 2, got " + std::to_string(k));
    if (n < 2) return {n, true};
    if (k >= 64) return {1, false};  // 2^k > n

    if (k == 2) {
        const std::uint64_t r = isqrt(n);
        return {r, r * r == n};
    }

    // Floating-point estimate, then exact correction below.
    auto x = static_cast<std::uint64_t>(std::pow(static_cast<double>(n), 1.0 / k));
    x = std::min<std::uint64_t>(x, 0xFFFFFFFFull);

    std::uint64_t root = x;
    while (saturating_pow(root, k) > n) --root;
    while (saturating_pow(root + 1, k) <= n) ++root;
    return {root, saturating_pow(root, k) == n};
}

std::uint64_t isqrt(std::uint64_t n) noexcept {
    if (n < 2) return n;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    r = std::min<std::uint64_t>(r, 0xFFFFFFFFull);
    while (r * r > n) --r;
    while (r < 0xFFFFFFFFull && (r + 1) * (r + 1) <= n) ++r;
    return r;
}

// -------------------------------------------------------
// Prime stepping
// -------------------------------------------------------

std::optional<std::uint64_t> previous_prime(std::uint64_t n) noexcept {
    if (n <= 2) return std::nullopt;
    if (n == 3) return 2;
    std::uint64_t c = n - 1;
    if ((c & 1) == 0) --c;
    for (; c >= 3; c -= 2)
        if (is_prime(c)) return c;
    return 2;
}

std::optional<std::uint64_t> next_prime(std::uint64_t n) noexcept {
    if (n < 2) return 2;
    std::uint64_t c = n + 1;
    if ((c & 1) == 0) ++c;
    for (; c > n; c += 2)  // stops on wraparound
        if (is_prime(c)) return c;
    return std::nullopt;
}

}  // namespace ppsum
