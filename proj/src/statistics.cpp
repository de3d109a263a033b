// statistics.cpp

#include "ppsum/statistics.hpp"

#include <algorithm>
#include <cmath>

#include "ppsum/prime_powers.hpp"

namespace ppsum {

std::vector<DensityRow> density_table(const std::vector<std::uint64_t>& limits,
                                      std::uint64_t memory_budget) {
    std::vector<DensityRow> rows;
    if (limits.empty()) return rows;
    for (std::uint64_t limit : limits)
        require_budget("density_table(limit=" + std::to_string(limit) + ")",
                       PrimeTable::bytes_for(limit), memory_budget);

    // One sieve at the largest limit answers every row.
    const std::uint64_t top = *std::max_element(limits.begin(), limits.end());
    const PrimeTable table = sieve_primes(top, memory_budget);
    for (std::uint64_t limit : limits)
        rows.push_back({limit, table.count_upto(limit), count_prime_powers(limit, memory_budget)});
    return rows;
}

GapRecord largest_gap(std::uint64_t limit, std::uint64_t memory_budget) {
    const auto values = prime_power_values(limit, memory_budget);
    if (values.size() < 2)
        throw InvalidArgument("limit=" + std::to_string(limit) +
                              " admits fewer than two prime powers (need limit >= 8)");
    GapRecord best{values[0], values[1], values[1] - values[0], GapKind::consecutive_prime_powers};
    for (std::size_t i = 1; i + 1 < values.size(); ++i) {
        const std::uint64_t gap = values[i + 1] - values[i];
        if (gap > best.gap) best = {values[i], values[i + 1], gap, GapKind::consecutive_prime_powers};
    }
    return best;
}

u128 square_difference(std::uint64_t p, std::uint64_t q) {
    if (p >= q)
        throw InvalidArgument("p=" + std::to_string(p) + " must be less than q=" + std::to_string(q));
    return static_cast<u128>(q - p) * (static_cast<u128>(q) + p);
}

GapRecord square_gap(std::uint64_t p, std::uint64_t q) {
    for (auto [name, v] : {std::pair{"p", p}, std::pair{"q", q}}) {
        if (!is_prime(v)) {
            std::string why = std::string(name) + "=" + std::to_string(v) + " is not prime";
            if (auto f = small_factor(v, 1'000'000)) why += " (divisible by " + std::to_string(*f) + ")";
            throw InvalidArgument(why);
        }
    }
    const u128 gap = square_difference(p, q);
    return {u128{p} * p, u128{q} * q, gap, GapKind::consecutive_prime_squares};
}

ConsecutivenessCheck check_consecutive_primes(std::uint64_t p, std::uint64_t q) {
    ConsecutivenessCheck out;
    if (p >= q) return out;
    std::uint64_t c = p + 1;
    if ((c & 1) == 0 && c != 2) ++c;
    for (; c < q; c += (c == 2 ? 1 : 2)) {
        ++out.candidates_tested;
        if (is_prime(c)) {
            out.first_prime_between = c;
            return out;
        }
    }
    out.consecutive = true;
    return out;
}

PrimePowerEstimate estimate_prime_power_count(std::uint64_t x) {
    if (x < 4) throw InvalidArgument("x must be >= 4, got " + std::to_string(x));
    PrimePowerEstimate est;
    est.x = x;
    est.formula = "sum_{k=2}^{floor(log2 x)} pi(x^(1/k)), pi(y) ~ y/ln(y) for y >= 4, exact pi(y) below";
    const auto xd = static_cast<double>(x);
    for (unsigned k = 2; k <= floor_log2(x); ++k) {
        EstimateTerm term;
        term.exponent = k;
        term.root = std::pow(xd, 1.0 / k);
        // Decide the small-argument branch on the exact integer root.
        const std::uint64_t iroot = integer_root(x, k).root;
        if (iroot < 4) {
            term.exact = true;
            term.value = iroot >= 3 ? 2.0 : (iroot == 2 ? 1.0 : 0.0);
        } else {
            term.value = term.root / std::log(term.root);
        }
        est.total += term.value;
        est.terms.push_back(term);
    }
    est.square_term = est.terms.front().value;
    return est;
}

TwoTermEstimate estimate_two_term_combinations(std::uint64_t x) {
    if (x < 16) throw InvalidArgument("x must be >= 16, got " + std::to_string(x));
    const double root = std::sqrt(static_cast<double>(x));
    const double per = root / std::log(root);
    return {x, 0.5 * per * per, "(1/2!) * (sqrt(x)/ln(sqrt(x)))^2"};
}

std::string to_string(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

u128 parse_u128(const std::string& s) {
    if (s.empty()) throw InvalidArgument("empty integer string");
    const u128 max = ~u128{0};
    u128 v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') throw InvalidArgument("not a decimal integer: \"" + s + "\"");
        const unsigned d = static_cast<unsigned>(c - '0');
        if (v > (max - d) / 10) throw InvalidArgument("integer out of range: \"" + s + "\"");
        v = v * 10 + d;
    }
    return v;
}

const char* to_string(GapKind kind) noexcept {
    return kind == GapKind::consecutive_prime_powers ? "consecutive_prime_powers"
                                                     : "consecutive_prime_squares";
}

GapKind parse_gap_kind(const std::string& s) {
    if (s == "consecutive_prime_powers") return GapKind::consecutive_prime_powers;
    if (s == "consecutive_prime_squares") return GapKind::consecutive_prime_squares;
    throw InvalidArgument("unknown gap kind \"" + s + "\"");
}

}  // namespace ppsum
