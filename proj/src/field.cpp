#include "lowrank/field.hpp"

namespace lowrank {

namespace {

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t small : {2u, 3u, 5u, 7u, 11u, 13u}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Bases 2, 7, 61 are deterministic below 4,759,123,141.
  for (std::uint64_t a : {2ull, 7ull, 61ull}) {
    if (a % n == 0) continue;
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = x * x % n;
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint32_t previous_prime(std::uint32_t below) {
  std::uint32_t c = below - 1;
  while (c > 2 && !is_prime_u32(c)) --c;
  return c;
}

}  // namespace lowrank
