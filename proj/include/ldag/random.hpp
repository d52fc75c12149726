#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

namespace ldag {

using Rng = std::mt19937_64;

// Stream for (seed, stream) pairs; distinct streams never share a seed sequence.
inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), 0x1dau};
  return Rng(seq);
}

// Uniform on [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Uniform on 0..n-1 without modulo bias.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return x % n;
}

// Index drawn from a probability vector.
inline int categorical(Rng& rng, std::span<const double> probabilities) {
  double u = uniform01(rng);
  for (std::size_t i = 0; i + 1 < probabilities.size(); ++i) {
    if (u < probabilities[i]) return static_cast<int>(i);
    u -= probabilities[i];
  }
  return static_cast<int>(probabilities.size()) - 1;
}

template <class T>
void shuffle(std::span<T> values, Rng& rng) {
  for (std::size_t i = values.size(); i > 1; --i) std::swap(values[i - 1], values[uniform_index(rng, i)]);
}

}  // namespace ldag
