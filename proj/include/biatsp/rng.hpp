// SPDX-License-Identifier: Apache-2.0

/// \file
/// Portable seeded random numbers.
///
/// The engine is xoshiro256** (Blackman & Vigna), state filled from a
/// SplitMix64 sequence. Bounded integers use rejection sampling on the raw
/// 64-bit output, so streams are identical across compilers and standard
/// libraries (std::uniform_int_distribution gives no such guarantee).

#ifndef BIATSP_RNG_HPP
#define BIATSP_RNG_HPP

#include <array>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string_view>

namespace biatsp {

inline constexpr std::uint64_t splitmix64_next(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// FNV-1a over the tag bytes.
inline constexpr std::uint64_t hash_tag(std::string_view tag) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Seed of an independent stream for (seed, purpose, index). Instance
/// generation and solver randomness draw from different purposes so they
/// never interleave.
inline constexpr std::uint64_t derive_seed(std::uint64_t seed, std::string_view purpose,
                                           std::uint64_t index = 0) noexcept {
  std::uint64_t s = seed ^ hash_tag(purpose);
  std::uint64_t a = splitmix64_next(s);
  s ^= index * 0xd1b54a32d192ed03ULL;
  return a ^ splitmix64_next(s);
}

class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0) noexcept { reseed(seed); }

  void reseed(std::uint64_t seed) noexcept {
    std::uint64_t sm = seed;
    for (auto& w : state_) w = splitmix64_next(sm);
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: empty range");
    const std::uint64_t limit = max() - (max() % bound);
    std::uint64_t x;
    do {
      x = (*this)();
    } while (x >= limit);
    return x % bound;
  }

  /// Uniform integer in [lo, hi], both ends inclusive.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("Rng::uniform: lo > hi");
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>((*this)());
    return lo + static_cast<std::int64_t>(below(span));
  }

  std::size_t index(std::size_t size) { return static_cast<std::size_t>(below(size)); }

  /// Uniform real in [0, 1) with 53 random bits.
  double unit() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) noexcept { return unit() < p; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

}  // namespace biatsp

#endif  // BIATSP_RNG_HPP
