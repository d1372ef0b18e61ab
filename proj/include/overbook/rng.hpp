// Seeded random streams. All sampling goes through this wrapper so that runs
// are reproducible from a single 64-bit seed: we draw raw mt19937_64 words and
// derive uniforms ourselves instead of relying on std distribution objects,
// whose output is implementation-defined.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace overbook {

// Derives an independent stream seed from a base seed and a tag.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t tag) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (tag + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  return mix_seed(mix_seed(base, a), b);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // uniform in [0, 1) with 53-bit resolution
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  // uniform integer in [0, n]
  int uniform_int(int n) {
    int v = static_cast<int>(uniform() * (n + 1));
    return v > n ? n : v;
  }

  // index j with probability cum[j] - cum[j-1]; cum is a cumulative
  // probability vector whose last entry is 1
  int categorical(const std::vector<double>& cum) {
    double u = uniform();
    int lo = 0, hi = static_cast<int>(cum.size()) - 1;
    while (lo < hi) {
      int mid = (lo + hi) / 2;
      if (u < cum[mid]) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    return lo;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace overbook
