#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace artssl {

// splitmix64: cheap, well-mixed stream for deriving independent sub-seeds
// from one master seed without correlated mt19937 states.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(master ^ splitmix64(stream + 1));
}

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

template <class T>
void seeded_shuffle(std::vector<T>& items, std::uint64_t seed) {
  auto rng = make_rng(seed);
  std::shuffle(items.begin(), items.end(), rng);
}

inline std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  seeded_shuffle(idx, seed);
  return idx;
}

}  // namespace artssl
