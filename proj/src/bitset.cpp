// bitset.cpp

#include "ppsum/bitset.hpp"

#include <algorithm>
#include <bit>

namespace ppsum {

std::uint64_t Bitset::count() const noexcept {
    std::uint64_t total = 0;
    for (std::uint64_t w : words_) total += std::popcount(w);
    return total;
}

void Bitset::shift_or(const Bitset& src, std::uint64_t shift, std::uint64_t word_lo,
                      std::uint64_t word_hi) noexcept {
    const std::uint64_t q = shift >> 6;
    const unsigned r = shift & 63;
    const std::uint64_t* in = src.words_.data();
    std::uint64_t* out = words_.data();

    word_hi = std::min<std::uint64_t>(word_hi, words_.size());
    std::uint64_t w = std::max(word_lo, q);
    if (w >= word_hi) return;

    if (r == 0) {
        for (; w < word_hi; ++w) out[w] |= in[w - q];
        return;
    }
    if (w == q) {
        out[w] |= in[0] << r;
        ++w;
    }
    for (; w < word_hi; ++w) out[w] |= (in[w - q] << r) | (in[w - q - 1] >> (64 - r));
}

void Bitset::clear_tail() noexcept {
    if (size_ % 64) words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
}

bool Bitset::tail_is_clear() const noexcept {
    if (size_ % 64 == 0) return true;
    return (words_.back() & ~((std::uint64_t{1} << (size_ % 64)) - 1)) == 0;
}

}  // namespace ppsum
