// range_verifier.cpp

#include "ppsum/range_verifier.hpp"

#include <algorithm>
#include <limits>
#include <thread>

#include "ppsum/prime_powers.hpp"

namespace ppsum {

std::uint64_t SumsetLayers::bytes_for(std::uint64_t hi, unsigned max_terms) noexcept {
    if (hi == std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t per_layer = Bitset::word_count(hi + 1) * 8;
    if (per_layer > std::numeric_limits<std::uint64_t>::max() / std::max(max_terms, 1u))
        return std::numeric_limits<std::uint64_t>::max();
    return per_layer * max_terms;
}

SumsetLayers::SumsetLayers(std::uint64_t hi, unsigned max_terms, std::uint64_t memory_budget)
    : hi_(hi), max_terms_(max_terms) {
    if (max_terms == 0) throw InvalidArgument("max_terms must be >= 1");
    require_budget("sumset layers (hi=" + std::to_string(hi) + ", max_terms=" +
                       std::to_string(max_terms) + ")",
                   bytes_for(hi, max_terms), memory_budget);
    summands_ = prime_power_values(hi, memory_budget);
    layers_.reserve(max_terms);
}

void SumsetLayers::advance(unsigned threads) {
    if (complete()) return;

    Bitset next(hi_ + 1);
    if (layers_.empty()) {
        for (std::uint64_t s : summands_) next.set(s);
        layers_.push_back(std::move(next));
        return;
    }

    const Bitset& prev = layers_.back();
    const std::uint64_t words = Bitset::word_count(hi_ + 1);
    threads = static_cast<unsigned>(std::clamp<std::uint64_t>(threads, 1, std::max<std::uint64_t>(words, 1)));

    auto work = [&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t s : summands_) next.shift_or(prev, s, lo, hi);
    };

    if (threads == 1) {
        work(0, words);
    } else {
        const std::uint64_t chunk = (words + threads - 1) / threads;
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            const std::uint64_t lo = t * chunk;
            const std::uint64_t hi = std::min(words, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(work, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    next.clear_tail();
    layers_.push_back(std::move(next));
}

void SumsetLayers::run(unsigned threads, const std::function<void(unsigned, unsigned)>& on_level) {
    while (!complete()) {
        advance(threads);
        if (on_level) on_level(completed_levels(), max_terms_);
    }
}

bool SumsetLayers::contains(unsigned t, std::uint64_t n) const {
    if (t == 0 || t > completed_levels())
        throw InvalidArgument("layer " + std::to_string(t) + " not computed");
    if (n > hi_)
        throw InvalidArgument("n=" + std::to_string(n) + " exceeds DP bound hi=" + std::to_string(hi_));
    return layers_[t - 1].test(n);
}

std::optional<unsigned> SumsetLayers::minimal_terms(std::uint64_t n, bool strict_min_two) const {
    if (!complete()) throw Error("minimal_terms: DP state is incomplete");
    if (n > hi_)
        throw InvalidArgument("n=" + std::to_string(n) + " exceeds DP bound hi=" + std::to_string(hi_));
    for (unsigned t = strict_min_two ? 2 : 1; t <= max_terms_; ++t)
        if (layers_[t - 1].test(n)) return t;
    return std::nullopt;
}

RangeReport SumsetLayers::report(std::uint64_t lo, std::uint64_t hi_report, bool strict_min_two) const {
    if (!complete()) throw Error("report: DP state is incomplete");
    if (lo > hi_report || hi_report > hi_)
        throw InvalidArgument("report range [" + std::to_string(lo) + ", " +
                              std::to_string(hi_report) + "] outside [0, " + std::to_string(hi_) + "]");

    RangeReport rep;
    rep.lo = lo;
    rep.hi = hi_report;
    rep.max_terms = max_terms_;
    rep.strict_min_two = strict_min_two;
    for (unsigned t = 1; t <= max_terms_; ++t) rep.histogram[t] = 0;

    std::vector<std::uint64_t> counts(max_terms_ + 1, 0);
    const unsigned first = strict_min_two ? 2 : 1;
    for (std::uint64_t n = lo;; ++n) {
        unsigned t = first;
        while (t <= max_terms_ && !layers_[t - 1].test(n)) ++t;
        if (t <= max_terms_)
            ++counts[t];
        else
            rep.exceptions.push_back(n);
        if (n == hi_report) break;
    }
    for (unsigned t = 1; t <= max_terms_; ++t) rep.histogram[t] = counts[t];
    rep.conjecture_pass = rep.exceptions.empty() || rep.exceptions.back() <= kConjectureThreshold;
    return rep;
}

Checkpoint SumsetLayers::save_checkpoint() const {
    Checkpoint cp;
    cp.hi = hi_;
    cp.max_terms = max_terms_;
    cp.completed_levels = layers_.size();
    for (const auto& layer : layers_) cp.level_words.emplace_back(layer.words().begin(), layer.words().end());
    return cp;
}

SumsetLayers SumsetLayers::resume_from(const Checkpoint& cp, std::uint64_t expected_hi,
                                       unsigned expected_max_terms, std::uint64_t memory_budget) {
    using K = CheckpointError::Kind;
    if (cp.format_version != Checkpoint::kFormatVersion)
        throw CheckpointError(K::version_mismatch,
                              "checkpoint format_version " + std::to_string(cp.format_version) +
                                  ", expected " + std::to_string(Checkpoint::kFormatVersion));
    if (cp.hi != expected_hi)
        throw CheckpointError(K::parameter_mismatch, "checkpoint hi=" + std::to_string(cp.hi) +
                                                         " does not match requested hi=" +
                                                         std::to_string(expected_hi));
    if (cp.max_terms != expected_max_terms)
        throw CheckpointError(K::parameter_mismatch,
                              "checkpoint max_terms=" + std::to_string(cp.max_terms) +
                                  " does not match requested max_terms=" +
                                  std::to_string(expected_max_terms));
    if (cp.completed_levels > cp.max_terms || cp.level_words.size() != cp.completed_levels)
        throw CheckpointError(K::corrupted, "checkpoint completed_levels=" +
                                                std::to_string(cp.completed_levels) + " is inconsistent");

    SumsetLayers state(expected_hi, expected_max_terms, memory_budget);
    const std::uint64_t words = Bitset::word_count(expected_hi + 1);
    for (std::size_t i = 0; i < cp.level_words.size(); ++i) {
        const auto& src = cp.level_words[i];
        if (src.size() != words)
            throw CheckpointError(K::corrupted, "checkpoint layer " + std::to_string(i + 1) + " has " +
                                                    std::to_string(src.size()) + " words, expected " +
                                                    std::to_string(words));
        Bitset layer(expected_hi + 1);
        std::copy(src.begin(), src.end(), layer.words().begin());
        if (!layer.tail_is_clear())
            throw CheckpointError(K::corrupted,
                                  "checkpoint layer " + std::to_string(i + 1) + " has bits beyond hi");
        state.layers_.push_back(std::move(layer));
    }
    if (!state.layers_.empty()) {
        Bitset first(expected_hi + 1);
        for (std::uint64_t s : state.summands_) first.set(s);
        if (!(first == state.layers_.front()))
            throw CheckpointError(K::corrupted, "checkpoint layer 1 does not match the prime powers <= hi");
    }
    return state;
}

RangeReport verify_range(std::uint64_t lo, std::uint64_t hi, unsigned max_terms, bool strict_min_two,
                         const VerifyOptions& options) {
    if (lo < 1) throw InvalidArgument("lo must be >= 1");
    if (lo > hi)
        throw InvalidArgument("lo=" + std::to_string(lo) + " exceeds hi=" + std::to_string(hi));
    if (max_terms < 1) throw InvalidArgument("max_terms must be >= 1");
    SumsetLayers state(hi, max_terms, options.memory_budget);
    state.run(options.threads, options.on_level);
    return state.report(lo, hi, strict_min_two);
}

}  // namespace ppsum
