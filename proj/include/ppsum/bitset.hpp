// bitset.hpp
// Fixed-size bitset over [0, size) backed by 64-bit words. Bits past `size`
// in the last word are always zero.

#pragma once
#include <cstdint>
#include <span>
#include <vector>

namespace ppsum {

class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::uint64_t size) : size_(size), words_(word_count(size), 0) {}

    static std::uint64_t word_count(std::uint64_t size) noexcept { return (size + 63) / 64; }

    std::uint64_t size() const noexcept { return size_; }

    bool test(std::uint64_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(std::uint64_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }

    std::uint64_t count() const noexcept;

    // this |= (src << shift), restricted to destination words [word_lo, word_hi).
    // src must have the same size. Call clear_tail() after the last update.
    void shift_or(const Bitset& src, std::uint64_t shift, std::uint64_t word_lo,
                  std::uint64_t word_hi) noexcept;

    void clear_tail() noexcept;
    bool tail_is_clear() const noexcept;

    std::span<const std::uint64_t> words() const noexcept { return words_; }
    std::span<std::uint64_t> words() noexcept { return words_; }

    friend bool operator==(const Bitset&, const Bitset&) = default;

private:
    std::uint64_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace ppsum
