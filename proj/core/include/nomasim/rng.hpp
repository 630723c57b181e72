#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace nomasim {

// SplitMix64 finalizer. Used to turn (seed, index) pairs into decorrelated
// engine seeds so that every Monte Carlo trial owns an independent substream.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Seeded random stream with hand-rolled samplers.  std::uniform_real_distribution
// and friends are implementation-defined, so results would not be reproducible
// across standard libraries; the samplers below are fully specified and all
// consume a fixed number of engine draws per call.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : gen_(splitmix64(seed)) {}

    // Substream i of a master seed.  Streams with distinct indices are
    // decorrelated; the same (seed, index) pair always yields the same stream.
    static RngStream substream(std::uint64_t master_seed, std::uint64_t index) {
        return RngStream(splitmix64(master_seed) ^ splitmix64(index * 0x9e3779b97f4a7c15ull + 0x632be59bd9b4e019ull));
    }

    // Two-level substream, e.g. (trial, purpose) or (trial, user).
    static RngStream substream(std::uint64_t master_seed, std::uint64_t a, std::uint64_t b) {
        const std::uint64_t mixed = splitmix64(master_seed) ^ splitmix64(a * 0x9e3779b97f4a7c15ull + 0x632be59bd9b4e019ull);
        return RngStream(mixed ^ splitmix64(b * 0xd1b54a32d192ed03ull + 0x2545f4914f6cdd1dull));
    }

    std::uint64_t next_u64() { return gen_(); }

    // Uniform on [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Exponential with the given rate; uses -log1p(-u) so u = 0 is safe.
    double exponential(double rate = 1.0) { return -std::log1p(-uniform01()) / rate; }

    // Box-Muller without the cached second variate: each call consumes exactly
    // two engine draws regardless of history, keeping call sequences aligned.
    double normal(double mean = 0.0, double stddev = 1.0) {
        const double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return mean + stddev * r * std::cos(2.0 * std::numbers::pi * u2);
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace nomasim
