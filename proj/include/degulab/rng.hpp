#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <utility>

namespace degulab {

/// Stream identifiers used when deriving child seeds from the global seed.
enum class Stream : std::uint64_t {
  separator = 1,
  rounding = 2,
  search = 3,
  equipartition = 4,
  equalize = 5,
  audit_rounding = 6,
  fixtures = 7,
  cascade = 8,
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Derives a child key from a parent seed and a path of integers.
/// derive_seed(s, {a, b}) == derive_seed(derive_seed(s, {a}), {b}).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t k = mix64(seed ^ 0x6A09E667F3BCC909ULL);
  for (std::uint64_t p : path) k = mix64(k ^ mix64(p + 0x3C6EF372FE94F82BULL));
  return k;
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, Stream s, std::initializer_list<std::uint64_t> path = {}) noexcept {
  std::uint64_t k = derive_seed(seed, {static_cast<std::uint64_t>(s)});
  for (std::uint64_t p : path) k = mix64(k ^ mix64(p + 0x3C6EF372FE94F82BULL));
  return k;
}

/// Counter-based generator: the i-th output is mix64(key + i * golden).
/// Distributions are implemented here rather than with <random> so that
/// streams are bit-identical across standard library implementations.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept { return mix64(key_ + 0x9E3779B97F4A7C15ULL * counter_++); }

  /// Uniform integer in [0, bound), bound > 0 (Lemire's multiply-shift with rejection).
  std::uint64_t below(std::uint64_t bound) noexcept {
    unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (lo < threshold) {
        m = static_cast<unsigned __int128>((*this)()) * bound;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  template <class T>
  void shuffle(std::span<T> xs) noexcept {
    for (std::size_t i = xs.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(xs[i - 1], xs[j]);
    }
  }

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Stateless uniform in [0,1) keyed by (key, a, b); used for per-edge coins.
inline double keyed_uniform01(std::uint64_t key, std::uint64_t a, std::uint64_t b) noexcept {
  const std::uint64_t x = mix64(key ^ mix64(a * 0xD1B54A32D192ED03ULL + b));
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

}  // namespace degulab
