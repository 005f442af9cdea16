#pragma once

#include <cstdint>
#include <vector>

namespace dlg {

// splitmix64: small, fast, and identical on every platform. All pipeline
// randomness flows through this from the CLI seed.
struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  uint64_t below(uint64_t n) { return n ? next() % n : 0; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; i--) {
      size_t j = below(i);
      std::swap(v[i - 1], v[j]);
    }
  }
};

inline uint64_t mix_seed(uint64_t seed, uint64_t stream) {
  SplitMix64 rng(seed ^ (0x632be59bd9b4e019ull * (stream + 1)));
  return rng.next();
}

}  // namespace dlg
