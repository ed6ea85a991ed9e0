#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace telegraph {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// Maps a 128-bit counter and a 64-bit key to 128 random bits with no
/// internal state, so independent streams are addressed rather than seeded.
class Philox4x32 {
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter generate(Counter ctr, Key key) {
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t prod0 = std::uint64_t{kMul0} * ctr[0];
            const std::uint64_t prod1 = std::uint64_t{kMul1} * ctr[2];
            ctr = {static_cast<std::uint32_t>(prod1 >> 32) ^ ctr[1] ^ key[0],
                   static_cast<std::uint32_t>(prod1),
                   static_cast<std::uint32_t>(prod0 >> 32) ^ ctr[3] ^ key[1],
                   static_cast<std::uint32_t>(prod0)};
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        return ctr;
    }

private:
    static constexpr std::uint32_t kMul0 = 0xD2511F53;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85;
};

/// Random stream owned by one particle: key = seed, counter = (draw, particle).
/// Results depend only on (seed, particle index), never on scheduling.
class ParticleStream {
public:
    ParticleStream(std::uint64_t seed, std::uint64_t particle)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          particle_(particle) {}

    /// Uniform on the open interval (0, 1) with 53-bit resolution.
    double uniform() {
        if (cursor_ == 4) refill();
        const std::uint64_t hi = block_[cursor_];
        const std::uint64_t lo = block_[cursor_ + 1];
        cursor_ += 2;
        const std::uint64_t bits = ((hi << 32) | lo) >> 11;
        return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
    }

    /// Exponential variate with the given rate.
    double exponential(double rate) { return -std::log(uniform()) / rate; }

private:
    void refill() {
        block_ = Philox4x32::generate({static_cast<std::uint32_t>(draw_),
                                       static_cast<std::uint32_t>(draw_ >> 32),
                                       static_cast<std::uint32_t>(particle_),
                                       static_cast<std::uint32_t>(particle_ >> 32)},
                                      key_);
        ++draw_;
        cursor_ = 0;
    }

    Philox4x32::Key key_;
    std::uint64_t particle_;
    std::uint64_t draw_ = 0;
    Philox4x32::Counter block_{};
    int cursor_ = 4;
};

}  // namespace telegraph
