// checkpoint.cpp
// Binary checkpoint encoding for SumsetLayers (layout in range_verifier.hpp).

#include <zlib.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

#include "ppsum/range_verifier.hpp"

namespace ppsum {

namespace {

constexpr std::array<char, 8> kMagic = {'P', 'P', 'S', 'U', 'M', 'C', 'K', 'P'};

using K = CheckpointError::Kind;

void put_u64(std::string& buf, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint64_t crc_of(const char* data, std::size_t len) {
    uLong crc = crc32(0L, Z_NULL, 0);
    while (len > 0) {
        const auto chunk = static_cast<uInt>(std::min<std::size_t>(len, std::numeric_limits<uInt>::max()));
        crc = crc32(crc, reinterpret_cast<const Bytef*>(data), chunk);
        data += chunk;
        len -= chunk;
    }
    return crc;
}

class Reader {
public:
    explicit Reader(const std::string& buf) : buf_(buf) {}

    std::uint64_t u64(const char* field) {
        if (buf_.size() - pos_ < 8)
            throw CheckpointError(K::corrupted, std::string("checkpoint truncated while reading ") + field);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf_[pos_ + i])) << (8 * i);
        pos_ += 8;
        return v;
    }

    std::size_t remaining() const noexcept { return buf_.size() - pos_; }
    std::size_t pos() const noexcept { return pos_; }
    void skip(std::size_t n) noexcept { pos_ += n; }

private:
    const std::string& buf_;
    std::size_t pos_ = 0;
};

}  // namespace

void write_checkpoint(std::ostream& out, const Checkpoint& cp) {
    std::string buf(kMagic.begin(), kMagic.end());
    put_u64(buf, cp.format_version);
    put_u64(buf, cp.hi);
    put_u64(buf, cp.max_terms);
    put_u64(buf, cp.completed_levels);
    for (const auto& words : cp.level_words) {
        put_u64(buf, words.size());
        for (std::uint64_t w : words) put_u64(buf, w);
    }
    put_u64(buf, crc_of(buf.data(), buf.size()));
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw CheckpointError(K::io, "failed to write checkpoint");
}

Checkpoint read_checkpoint(std::istream& in) {
    const std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (buf.size() < kMagic.size() + 8 || std::memcmp(buf.data(), kMagic.data(), kMagic.size()) != 0)
        throw CheckpointError(K::corrupted, "not a checkpoint file (bad magic)");

    Reader body(buf);
    body.skip(kMagic.size());
    Checkpoint cp;
    cp.format_version = body.u64("format_version");
    if (cp.format_version != Checkpoint::kFormatVersion)
        throw CheckpointError(K::version_mismatch,
                              "checkpoint format_version " + std::to_string(cp.format_version) +
                                  ", expected " + std::to_string(Checkpoint::kFormatVersion));

    const std::uint64_t stored_crc = [&] {
        Reader tail(buf);
        tail.skip(buf.size() - 8);
        return tail.u64("checksum");
    }();
    if (crc_of(buf.data(), buf.size() - 8) != stored_crc)
        throw CheckpointError(K::corrupted, "checkpoint checksum mismatch");

    cp.hi = body.u64("hi");
    cp.max_terms = body.u64("max_terms");
    cp.completed_levels = body.u64("completed_levels");
    if (cp.completed_levels > cp.max_terms)
        throw CheckpointError(K::corrupted, "checkpoint completed_levels exceeds max_terms");

    const std::uint64_t expected_words = Bitset::word_count(cp.hi + 1);
    for (std::uint64_t level = 0; level < cp.completed_levels; ++level) {
        const std::uint64_t count = body.u64("layer length");
        if (count != expected_words || body.remaining() < 8 || (body.remaining() - 8) / 8 < count)
            throw CheckpointError(K::corrupted, "checkpoint layer " + std::to_string(level + 1) +
                                                    " length " + std::to_string(count) + " != " +
                                                    std::to_string(expected_words) + " words");
        std::vector<std::uint64_t> words(count);
        for (auto& w : words) w = body.u64("layer word");
        cp.level_words.push_back(std::move(words));
    }
    if (body.remaining() != 8) throw CheckpointError(K::corrupted, "checkpoint has trailing bytes");
    return cp;
}

void write_checkpoint_file(const std::string& path, const Checkpoint& cp) {
    // Write to a sibling temp file first so an interrupted save never
    // clobbers the previous checkpoint.
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw CheckpointError(K::io, "cannot open checkpoint file for writing: " + tmp);
        write_checkpoint(out, cp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw CheckpointError(K::io, "cannot move checkpoint into place: " + path);
}

Checkpoint read_checkpoint_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CheckpointError(K::io, "cannot open checkpoint file: " + path);
    try {
        return read_checkpoint(in);
    } catch (const CheckpointError& e) {
        throw CheckpointError(e.kind(), path + ": " + e.what());
    }
}

}  // namespace ppsum
