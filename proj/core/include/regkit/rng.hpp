#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace regkit {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t hash_label(std::string_view label);

// Seed for a named stream below a master seed. Every random choice in the
// library draws from a stream derived this way, so results depend only on the
// master seed and the derivation path, never on scheduling.
template <class... Ts>
std::uint64_t derive_seed(std::uint64_t master, std::string_view label, Ts... path) {
  std::uint64_t h = splitmix64(master ^ hash_label(label));
  ((h = splitmix64(h ^ splitmix64(static_cast<std::uint64_t>(path) + 0x632be59bd9b4e019ULL))), ...);
  return h;
}

// Uniform integer in [lo, hi]; platform independent (unlike std distributions).
std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi);
// Uniform double in [0, 1) from the top 53 bits.
double uniform_unit(Rng& rng);
bool bernoulli(Rng& rng, double p);

template <class T>
void shuffle(Rng& rng, std::vector<T>& v) {
  for (std::size_t i = v.size(); i > 1; --i) {
    auto j = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(i) - 1));
    std::swap(v[i - 1], v[j]);
  }
}

// k distinct elements of {0..n-1}, uniformly, in ascending order.
std::vector<int> sample_subset(Rng& rng, int n, int k);

}  // namespace regkit
