#pragma once

#include <cstdint>
#include <cmath>

namespace sharkswim {

// SplitMix64 finalizer (Stafford mix13). Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Counter-based PRNG. Output i of a stream is a pure function of
// (seed, stream_id, i), so replicates can be farmed out to any number of
// workers and still reproduce bit-for-bit. Two mixing rounds keyed by the
// stream separate streams with distinct (seed, stream_id).
class RngStream {
public:
    RngStream() : RngStream(0, 0) {}
    RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
        : key1_(mix64(seed + 0x9e3779b97f4a7c15ULL) ^
                mix64(stream_id * 0xbf58476d1ce4e5b9ULL + 0x94d049bb133111ebULL)),
          key2_(mix64(key1_ ^ 0xd1b54a32d192ed03ULL)),
          counter_(0) {}

    std::uint64_t next_u64() noexcept {
        std::uint64_t a = mix64(counter_++ * 0x9e3779b97f4a7c15ULL + key1_);
        return mix64(a ^ key2_);
    }

    // Uniform on [0,1), 53-bit resolution.
    double uniform() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform on the open interval (0,1); safe as a log() argument.
    double uniform_pos() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Uniform integer in [0, bound), bound >= 1. Lemire's rejection scheme.
    std::uint64_t uniform_below(std::uint64_t bound) noexcept {
        unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < bound) {
            std::uint64_t t = (0 - bound) % bound;
            while (lo < t) {
                m = static_cast<unsigned __int128>(next_u64()) * bound;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    bool bernoulli(double prob) noexcept { return uniform() < prob; }

    double exponential(double rate = 1.0) noexcept {
        return -std::log(uniform_pos()) / rate;
    }

    // Standard normal via Box-Muller; two uniforms per variate, no cached state.
    double normal() noexcept {
        double r = std::sqrt(-2.0 * std::log(uniform_pos()));
        return r * std::cos(6.283185307179586476925286766559 * uniform());
    }

    std::uint64_t counter() const noexcept { return counter_; }

private:
    std::uint64_t key1_;
    std::uint64_t key2_;
    std::uint64_t counter_;
};

} // namespace sharkswim
