#ifndef FASDG_RNG_HPP
#define FASDG_RNG_HPP

#include <cstdint>

namespace fas {

// SplitMix64 (Steele, Lea, Vigna). This generator is part of the
// reproducibility contract: a (n, p, seed) triple identifies one digraph on
// every platform, so the algorithm is fixed here rather than delegated to
// <random>, whose distributions are not bit-stable across implementations.
//
// The k-th output of a stream seeded with s equals mix(s + (k+1)*GAMMA),
// which makes derive_seed an O(1) jump to the k-th output. Derived streams
// are used to give independent substreams to trials and restarts.
class SplitMix64 {
 public:
  static constexpr std::uint64_t GAMMA = 0x9e3779b97f4a7c15ull;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += GAMMA);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), using the top 53 bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// k-th output of the stream seeded with `seed`, in O(1).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t k) {
  return SplitMix64(seed + k * SplitMix64::GAMMA).next();
}

}  // namespace fas

#endif
