#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "declab/error.hpp"
#include "declab/gf2.hpp"
#include "declab/rng.hpp"

namespace declab {

/// Device-unique random seed, generated once at first boot and stored for
/// the device lifetime. Every module of the same device is provisioned
/// with the same seed.
struct DeviceSeed {
    enum class Origin { fresh_boot, injected_for_test };
    BitVector bits;
    Origin origin = Origin::fresh_boot;
};

inline DeviceSeed generate_seed(RandomStream& entropy, std::size_t length,
                                DeviceSeed::Origin origin = DeviceSeed::Origin::fresh_boot) {
    if (length < 128)
        throw ConfigError("generate_seed: seed length must be >= 128 bits");
    return {BitVector::random(length, entropy), origin};
}

/// Keystream construction. seed_cyclic XORs with the stored seed sequence
/// itself, reused cyclically; it is the simplest realization and leaks
/// under known plaintext once the seed wraps. stream derives a
/// counter-based pseudorandom keystream from the seed and never reuses
/// key material; it is the default.
enum class SealMode { stream, seed_cyclic };

/// One endpoint of an encrypted inter-module link. Sender and receiver
/// endpoints provisioned with the same seed advance their keystream
/// offsets in lockstep; sealing and unsealing are the same XOR transform.
class SealedLink {
public:
    SealedLink(const DeviceSeed& seed, SealMode mode = SealMode::stream)
        : seed_bits_(seed.bits), mode_(mode) {
        auto words = seed_bits_.words();
        key_ = 0x243f6a8885a308d3ull;
        for (std::size_t i = 0; i < words.size(); ++i)
            key_ = mix64(key_ ^ words[i] ^ (i + 1));
    }

    std::uint64_t offset() const { return offset_; }
    void seek(std::uint64_t offset) { offset_ = offset; }

    BitVector seal(const BitVector& x_out) { return apply(x_out); }
    BitVector unseal(const BitVector& x_encrypted) { return apply(x_encrypted); }

private:
    BitVector apply(const BitVector& x) {
        BitVector out(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            out.set(i, x.get(i) ^ keystream_bit(offset_ + i));
        offset_ += x.size();
        return out;
    }

    int keystream_bit(std::uint64_t pos) const {
        if (mode_ == SealMode::seed_cyclic)
            return seed_bits_.get(static_cast<std::size_t>(pos % seed_bits_.size()));
        std::uint64_t word = mix64(key_ ^ (pos >> 6));
        return static_cast<int>((word >> (pos & 63)) & 1u);
    }

    BitVector seed_bits_;
    SealMode mode_;
    std::uint64_t key_ = 0;
    std::uint64_t offset_ = 0;
};

/// Wire form of a sealed block: 32-bit big-endian payload length in bits,
/// then the payload packed MSB-first per byte. This is what a tap on the
/// simulated wire captures.
inline std::vector<std::uint8_t> pack_frame(const BitVector& payload) {
    std::vector<std::uint8_t> frame;
    std::uint32_t len = static_cast<std::uint32_t>(payload.size());
    frame.push_back(static_cast<std::uint8_t>(len >> 24));
    frame.push_back(static_cast<std::uint8_t>(len >> 16));
    frame.push_back(static_cast<std::uint8_t>(len >> 8));
    frame.push_back(static_cast<std::uint8_t>(len));
    frame.resize(4 + (payload.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < payload.size(); ++i)
        if (payload.get(i)) frame[4 + i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
    return frame;
}

inline BitVector unpack_frame(const std::vector<std::uint8_t>& frame) {
    if (frame.size() < 4) throw DomainError("unpack_frame: truncated header");
    std::uint32_t len = (std::uint32_t{frame[0]} << 24) | (std::uint32_t{frame[1]} << 16) |
                        (std::uint32_t{frame[2]} << 8) | std::uint32_t{frame[3]};
    if (frame.size() < 4 + (std::size_t{len} + 7) / 8)
        throw DomainError("unpack_frame: truncated payload");
    BitVector payload(len);
    for (std::uint32_t i = 0; i < len; ++i)
        if (frame[4 + i / 8] & (0x80u >> (i % 8))) payload.set(i, 1);
    return payload;
}

}  // namespace declab
