#pragma once

#include <cstdint>
#include <random>

namespace lowrank {

/// Seeded generator with a platform independent bounded draw.
///
/// std::uniform_int_distribution is implementation defined, so bounded
/// integers use Lemire's rejection method on top of mt19937_64 instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t range = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    if (range == 0) return static_cast<std::int64_t>(next());
    unsigned __int128 prod = static_cast<unsigned __int128>(next()) * range;
    std::uint64_t low = static_cast<std::uint64_t>(prod);
    if (low < range) {
      const std::uint64_t threshold = -range % range;
      while (low < threshold) {
        prod = static_cast<unsigned __int128>(next()) * range;
        low = static_cast<std::uint64_t>(prod);
      }
    }
    return lo + static_cast<std::int64_t>(prod >> 64);
  }

  /// Independent child stream.
  Rng split() { return Rng(splitmix(next())); }

 private:
  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  std::mt19937_64 eng_;
};

}  // namespace lowrank
