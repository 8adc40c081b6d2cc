#pragma once

#include <cstdint>

namespace qkonc {

// SplitMix64 (Steele, Lea, Flood). The state is a plain 64-bit counter
// advanced by a fixed odd constant and hashed per draw, so streams are
// identical on every platform and seeds can be derived arithmetically
// (e.g. master_seed ^ n for per-sweep datasets).
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), from the top 53 bits.
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Uniform in [low, high).
    double next_double(double low, double high) {
        return low + (high - low) * next_double();
    }

  private:
    std::uint64_t state_;
};

} // namespace qkonc
