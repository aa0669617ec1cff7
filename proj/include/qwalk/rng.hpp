#pragma once

#include <cstdint>

namespace qwalk {

// SplitMix64 (Steele/Lea/Flood). Chosen because streams can be derived
// from a master seed by pure mixing, so sampling stays reproducible no
// matter how work is split across threads: stream k of a run depends only
// on (seed, k), never on execution order.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1), 53 bits of mantissa.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t state_;
};

// Stateless seed derivation: feeds (seed, a, b) through the SplitMix64
// mixing function. Used for per-shot and per-purpose substreams.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    SplitMix64 g(seed ^ (a * 0xd1342543de82ef95ULL) ^ (b * 0xaf251af3b0f025b5ULL));
    g.next();
    return g.next();
}

// Substream tags, so the draws used for noise insertion never shift the
// draws used for measurement (a zero-noise run must sample identically to
// the ideal path).
enum : std::uint64_t {
    kStreamMeasure = 1,
    kStreamNoise = 2,
    kStreamReadout = 3,
    kStreamTrial = 4,
};

}  // namespace qwalk
