// prime_powers.cpp

#include "ppsum/prime_powers.hpp"

#include <algorithm>
#include <string>

#include "ppsum/arithmetic.hpp"

namespace ppsum {

std::vector<PrimePower> enumerate_prime_powers(std::uint64_t limit, std::uint64_t memory_budget) {
    std::vector<PrimePower> out;
    if (limit < 4) return out;

    const PrimeTable table = sieve_primes(isqrt(limit), memory_budget);
    const std::uint64_t expected = count_prime_powers(limit, memory_budget);
    require_budget("enumerate_prime_powers(limit=" + std::to_string(limit) + ")",
                   expected * sizeof(PrimePower) + PrimeTable::bytes_for(table.limit()),
                   memory_budget);
    out.reserve(expected);

    const unsigned max_exponent = floor_log2(limit);
    for (std::uint64_t p : table.primes()) {
        std::uint64_t value = p;
        for (unsigned k = 2; k <= max_exponent; ++k) {
            if (__builtin_mul_overflow(value, p, &value) || value > limit) break;
            out.push_back({p, k, value});
        }
    }
    std::sort(out.begin(), out.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.value < b.value; });
    return out;
}

std::vector<std::uint64_t> prime_power_values(std::uint64_t limit, std::uint64_t memory_budget) {
    const auto powers = enumerate_prime_powers(limit, memory_budget);
    std::vector<std::uint64_t> values;
    values.reserve(powers.size());
    for (const auto& pp : powers) values.push_back(pp.value);
    return values;
}

std::optional<PrimePower> classify(std::uint64_t n) {
    if (n < 4) return std::nullopt;
    // If n = p^k and q is a prime dividing k, the q-th root of n is p^(k/q),
    // so the first exact prime-exponent root decides the answer.
    static constexpr unsigned kPrimeExponents[] = {2,  3,  5,  7,  11, 13, 17, 19, 23,
                                                   29, 31, 37, 41, 43, 47, 53, 59, 61};
    const unsigned max_k = floor_log2(n);
    for (unsigned q : kPrimeExponents) {
        if (q > max_k) break;
        const auto [root, exact] = integer_root(n, q);
        if (!exact) continue;
        if (is_prime(root)) return PrimePower{root, q, n};
        if (auto inner = classify(root)) return PrimePower{inner->base, inner->exponent * q, n};
        return std::nullopt;
    }
    return std::nullopt;
}

std::uint64_t count_prime_powers(std::uint64_t limit, std::uint64_t memory_budget) {
    if (limit < 4) return 0;
    const PrimeTable table = sieve_primes(isqrt(limit), memory_budget);
    std::uint64_t total = 0;
    for (unsigned k = 2; k <= floor_log2(limit); ++k)
        total += table.count_upto(integer_root(limit, k).root);
    return total;
}

}  // namespace ppsum
