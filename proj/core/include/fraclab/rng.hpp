#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace fraclab {

/// Counter-based random streams. Every (master seed, stream id) pair derives
/// an independent generator state, so parallel scheduling cannot change which
/// variates a path/component consumes. Output is platform-stable: no
/// library distributions are involved.
namespace rng {

inline std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// xoshiro256++ seeded via splitmix64 from (seed, stream).
class Stream {
public:
    Stream(std::uint64_t seed, std::uint64_t stream_id) noexcept {
        std::uint64_t sm = seed ^ (0x6a09e667f3bcc909ULL + stream_id * 0x9e3779b97f4a7c15ULL);
        for (auto& word : s_) word = splitmix64(sm);
        have_cached_ = false;
        cached_ = 0.0;
    }

    std::uint64_t next_u64() noexcept {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform in (0,1); never returns 0 or 1.
    double next_uniform() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller on the stream's uniforms.
    double next_normal() noexcept {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double u1 = next_uniform();
        const double u2 = next_uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * std::numbers::pi * u2;
        cached_ = r * std::sin(phi);
        have_cached_ = true;
        return r * std::cos(phi);
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
    bool have_cached_;
    double cached_;
};

} // namespace rng
} // namespace fraclab
