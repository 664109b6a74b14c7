#ifndef ZIC_RNG_HPP
#define ZIC_RNG_HPP

#include <cstdint>

namespace zic {

// SplitMix64: tiny, fast, and splittable enough for reproducible simulation
// streams.  Streams for (master seed, cell, repetition) are derived with
// mix_seed so that parallel execution order cannot change any draw.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1), 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Deterministic stream derivation: feeds the inputs through the SplitMix64
// output function so nearby (seed, index) pairs give unrelated streams.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  SplitMix64 g(a ^ (0x9e3779b97f4a7c15ULL + (b << 1)));
  g.next();
  return g.next() ^ b;
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return mix_seed(mix_seed(a, b), c);
}

}  // namespace zic

#endif  // ZIC_RNG_HPP
