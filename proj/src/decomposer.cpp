// decomposer.cpp

#include "ppsum/decomposer.hpp"

#include <algorithm>
#include <queue>
#include <thread>

#include "ppsum/arithmetic.hpp"

namespace ppsum {

namespace {

constexpr unsigned kUnreachable = 0xF;

// -------------------------------------------------------
// Prime powers <= m in descending value order. One stream per exponent k,
// each walking primes p downward from floor(m^(1/k)); the streams are merged
// through a max-heap so squares and higher powers interleave by value.
// -------------------------------------------------------
class DescendingPowers {
public:
    explicit DescendingPowers(std::uint64_t m) {
        if (m < 4) return;
        for (unsigned k = 2; k <= floor_log2(m); ++k) {
            const std::uint64_t root = integer_root(m, k).root;
            const std::uint64_t p = is_prime(root) ? root : previous_prime(root).value_or(0);
            if (p >= 2) heap_.push({p, k, *checked_pow(p, k)});
        }
    }

    std::optional<PrimePower> next() {
        if (heap_.empty()) return std::nullopt;
        const PrimePower top = heap_.top();
        heap_.pop();
        if (auto p = previous_prime(top.base)) heap_.push({*p, top.exponent, *checked_pow(*p, top.exponent)});
        return top;
    }

private:
    struct ByValue {
        bool operator()(const PrimePower& a, const PrimePower& b) const { return a.value < b.value; }
    };
    std::priority_queue<PrimePower, std::vector<PrimePower>, ByValue> heap_;
};

}  // namespace

// -------------------------------------------------------
// Validation
// -------------------------------------------------------

ValidationResult validate(std::uint64_t target, std::span<const std::uint64_t> part_values) {
    if (part_values.empty()) return {false, "representation has no parts"};
    u128 sum = 0;
    for (std::size_t i = 0; i < part_values.size(); ++i) {
        const std::uint64_t v = part_values[i];
        if (!classify(v)) {
            std::string why = "part " + std::to_string(i + 1) + " (" + std::to_string(v) +
                              ") is not a prime power p^k with k >= 2";
            if (is_prime(v))
                why += ": it is prime";
            else if (auto f = small_factor(v))
                why += ": divisible by " + std::to_string(*f) + " and " + std::to_string(v / *f);
            return {false, why};
        }
        sum += v;
    }
    if (sum != target) {
        const bool fits = sum <= u128{~std::uint64_t{0}};
        return {false, "parts sum to " +
                           (fits ? std::to_string(static_cast<std::uint64_t>(sum)) : std::string("> 2^64")) +
                           ", not the target " + std::to_string(target)};
    }
    return {true, {}};
}

ValidationResult validate(const Representation& rep) {
    std::vector<std::uint64_t> values;
    values.reserve(rep.parts.size());
    for (std::size_t i = 0; i < rep.parts.size(); ++i) {
        const auto& part = rep.parts[i];
        const auto canon = classify(part.value);
        if (canon && !(*canon == part))
            return {false, "part " + std::to_string(i + 1) + " (" + std::to_string(part.value) +
                               ") is recorded as " + std::to_string(part.base) + "^" +
                               std::to_string(part.exponent) + ", canonical form is " +
                               std::to_string(canon->base) + "^" + std::to_string(canon->exponent)};
        values.push_back(part.value);
    }
    return validate(rep.target, values);
}

// -------------------------------------------------------
// Decomposer
// -------------------------------------------------------

Decomposer::Decomposer(DecomposeOptions options) : options_(options) {
    if (options_.width == 0) throw InvalidArgument("width must be >= 1");
    if (options_.table_terms == 0 || options_.table_terms >= kUnreachable)
        throw InvalidArgument("table_terms must be in [1, 14]");
    const std::uint64_t bound = options_.table_bound;
    require_budget("decomposer lookup table (bound=" + std::to_string(bound) + ")",
                   SumsetLayers::bytes_for(bound, options_.table_terms) + bound / 2 + 1,
                   options_.memory_budget);

    SumsetLayers layers(bound, options_.table_terms, options_.memory_budget);
    layers.run(options_.threads);

    table_.assign(bound / 2 + 1, 0);
    for (std::uint64_t m = 1; m <= bound; ++m) {
        const unsigned t = layers.minimal_terms(m).value_or(kUnreachable);
        table_[m >> 1] |= static_cast<std::uint8_t>(t << ((m & 1) * 4));
    }
    small_powers_ = enumerate_prime_powers(bound, options_.memory_budget);
}

std::optional<unsigned> Decomposer::table_minimal_terms(std::uint64_t m) const {
    if (m > options_.table_bound)
        throw InvalidArgument("m=" + std::to_string(m) + " exceeds table bound " +
                              std::to_string(options_.table_bound));
    const unsigned t = table_get(m);
    if (t == kUnreachable) return std::nullopt;
    return t;
}

void Decomposer::from_table(std::uint64_t m, unsigned count, std::vector<PrimePower>& out) const {
    while (count > 0) {
        auto it = std::upper_bound(small_powers_.begin(), small_powers_.end(), m,
                                   [](std::uint64_t v, const PrimePower& pp) { return v < pp.value; });
        while (it != small_powers_.begin()) {
            --it;
            if (table_get(m - it->value) == count - 1) break;
        }
        out.push_back(*it);
        m -= it->value;
        --count;
    }
}

struct Decomposer::Search {
    const Decomposer& self;
    std::vector<PrimePower> parts;
    bool width_cap_hit = false;
    std::uint64_t nodes = 0;

    bool solve(std::uint64_t m, unsigned budget, bool allow_single) {
        ++nodes;
        const auto& opt = self.options_;
        if (allow_single) {
            if (m <= opt.table_bound) {
                const unsigned t = self.table_get(m);
                if (t <= budget) {
                    self.from_table(m, t, parts);
                    return true;
                }
                if (t != kUnreachable || budget <= opt.table_terms) return false;
            }
            if (auto pp = classify(m)) {
                parts.push_back(*pp);
                return true;
            }
        }
        if (budget < 2) return false;

        DescendingPowers candidates(m);
        unsigned tried = 0;
        while (auto s = candidates.next()) {
            if (tried == opt.width) {
                width_cap_hit = true;
                break;
            }
            ++tried;
            const std::uint64_t rest = m - s->value;
            if (rest < 4) continue;
            parts.push_back(*s);
            if (solve(rest, budget - 1, true)) return true;
            parts.pop_back();
        }
        return false;
    }
};

DecomposeOutcome Decomposer::decompose(std::uint64_t n, unsigned max_terms, bool strict_min_two) const {
    if (n < 4) throw InvalidArgument("n must be >= 4, got " + std::to_string(n));
    if (max_terms == 0) throw InvalidArgument("max_terms must be >= 1");

    Search search{*this, {}, false, 0};
    DecomposeOutcome outcome;
    if (search.solve(n, max_terms, !strict_min_two)) {
        Representation rep{n, std::move(search.parts)};
        std::sort(rep.parts.begin(), rep.parts.end(),
                  [](const PrimePower& a, const PrimePower& b) { return a.value > b.value; });
        outcome.representation = std::move(rep);
    }
    outcome.width_cap_hit = search.width_cap_hit;
    outcome.nodes = search.nodes;
    return outcome;
}

// -------------------------------------------------------
// Sampling
// -------------------------------------------------------

std::uint64_t uniform_draw(std::uint64_t lo, std::uint64_t hi, std::mt19937_64& rng) {
    const std::uint64_t span = hi - lo;
    if (span == ~std::uint64_t{0}) return rng();
    const std::uint64_t range = span + 1;
    const std::uint64_t threshold = (0 - range) % range;  // 2^64 mod range
    for (;;) {
        const std::uint64_t x = rng();
        if (x >= threshold) return lo + x % range;
    }
}

SampleRun sample(const Decomposer& decomposer, std::uint64_t range_lo, std::uint64_t range_hi,
                 std::uint64_t count, std::uint64_t seed, unsigned max_terms, const SampleOptions& options) {
    if (range_lo < 4) throw InvalidArgument("range_lo must be >= 4, got " + std::to_string(range_lo));
    if (range_lo > range_hi)
        throw InvalidArgument("range_lo=" + std::to_string(range_lo) + " exceeds range_hi=" +
                              std::to_string(range_hi));
    if (count < 1) throw InvalidArgument("count must be >= 1");
    if (max_terms == 0) throw InvalidArgument("max_terms must be >= 1");

    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> targets(count);
    for (auto& t : targets) t = uniform_draw(range_lo, range_hi, rng);

    std::vector<DecomposeOutcome> outcomes(count);
    const unsigned threads =
        static_cast<unsigned>(std::clamp<std::uint64_t>(options.threads, 1, count));
    auto work = [&](unsigned worker) {
        for (std::uint64_t i = worker; i < count; i += threads)
            outcomes[i] = decomposer.decompose(targets[i], max_terms, options.strict_min_two);
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }

    SampleRun run;
    run.seed = seed;
    run.range_lo = range_lo;
    run.range_hi = range_hi;
    run.count = count;
    run.max_terms = max_terms;
    run.strict_min_two = options.strict_min_two;
    if (options.retain_representations) run.representations.emplace();
    for (std::uint64_t i = 0; i < count; ++i) {
        auto& outcome = outcomes[i];
        if (outcome.width_cap_hit) ++run.width_cap_hits;
        if (outcome.representation) {
            ++run.successes;
            if (run.representations) run.representations->push_back(std::move(*outcome.representation));
        } else {
            run.failures.push_back(targets[i]);
        }
    }
    std::sort(run.failures.begin(), run.failures.end());
    if (run.representations)
        std::stable_sort(run.representations->begin(), run.representations->end(),
                         [](const Representation& a, const Representation& b) { return a.target < b.target; });
    return run;
}

}  // namespace ppsum
