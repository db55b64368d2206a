#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace lowrank {

/// Exponent vector with room for kMaxVars variables.
///
/// Exponents are stored back to front: variable i lives at byte
/// kMaxVars - 1 - i. With that layout the graded reverse lexicographic
/// tie-break (the last variable decides) is a plain memcmp over the bytes.
class Monomial {
 public:
  static constexpr int kMaxVars = 62;
  static constexpr int kMaxExponent = 255;

  Monomial() { bytes_.fill(0); }

  static Monomial from_exponents(std::span<const int> exps) {
    if (static_cast<int>(exps.size()) > kMaxVars) throw std::length_error("too many variables for Monomial");
    Monomial m;
    int deg = 0;
    for (std::size_t i = 0; i < exps.size(); ++i) {
      if (exps[i] < 0 || exps[i] > kMaxExponent) throw std::out_of_range("monomial exponent out of range");
      m.bytes_[slot(static_cast<int>(i))] = static_cast<std::uint8_t>(exps[i]);
      deg += exps[i];
    }
    m.set_degree(deg);
    return m;
  }

  static Monomial variable(int i, int power = 1) {
    Monomial m;
    m.bytes_[slot(i)] = static_cast<std::uint8_t>(power);
    m.set_degree(power);
    return m;
  }

  int exponent(int var) const { return bytes_[slot(var)]; }
  int degree() const { return bytes_[kMaxVars] | (bytes_[kMaxVars + 1] << 8); }
  bool is_one() const { return degree() == 0; }

  void set_exponent(int var, int e) {
    const int d = degree() - exponent(var) + e;
    bytes_[slot(var)] = static_cast<std::uint8_t>(e);
    set_degree(d);
  }

  std::vector<int> exponents(int nvars) const {
    std::vector<int> out(nvars);
    for (int i = 0; i < nvars; ++i) out[i] = exponent(i);
    return out;
  }

  /// Bit i set when variable i (i < 64) occurs.
  std::uint64_t support_mask() const {
    std::uint64_t mask = 0;
    for (int i = 0; i < kMaxVars; ++i) {
      if (bytes_[slot(i)] != 0) mask |= std::uint64_t{1} << i;
    }
    return mask;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    if (a.degree() + b.degree() > kMaxExponent) {
      for (int i = 0; i < kMaxVars; ++i) {
        if (a.bytes_[i] + b.bytes_[i] > kMaxExponent) throw std::overflow_error("monomial exponent overflow");
      }
    }
    Monomial m;
    for (int i = 0; i < kMaxVars; ++i) m.bytes_[i] = static_cast<std::uint8_t>(a.bytes_[i] + b.bytes_[i]);
    m.set_degree(a.degree() + b.degree());
    return m;
  }

  bool divides(const Monomial& other) const {
    if (degree() > other.degree()) return false;
    for (int i = 0; i < kMaxVars; ++i) {
      if (bytes_[i] > other.bytes_[i]) return false;
    }
    return true;
  }

  /// other / *this; requires divides(other).
  Monomial quotient_of(const Monomial& other) const {
    Monomial m;
    for (int i = 0; i < kMaxVars; ++i) m.bytes_[i] = static_cast<std::uint8_t>(other.bytes_[i] - bytes_[i]);
    m.set_degree(other.degree() - degree());
    return m;
  }

  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial m;
    int deg = 0;
    for (int i = 0; i < kMaxVars; ++i) {
      m.bytes_[i] = std::max(a.bytes_[i], b.bytes_[i]);
      deg += m.bytes_[i];
    }
    m.set_degree(deg);
    return m;
  }

  friend Monomial gcd(const Monomial& a, const Monomial& b) {
    Monomial m;
    int deg = 0;
    for (int i = 0; i < kMaxVars; ++i) {
      m.bytes_[i] = std::min(a.bytes_[i], b.bytes_[i]);
      deg += m.bytes_[i];
    }
    m.set_degree(deg);
    return m;
  }

  friend bool coprime(const Monomial& a, const Monomial& b) {
    for (int i = 0; i < kMaxVars; ++i) {
      if (a.bytes_[i] != 0 && b.bytes_[i] != 0) return false;
    }
    return true;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.bytes_ == b.bytes_; }

  /// Graded reverse lexicographic comparison: negative when a < b.
  friend int grevlex_compare(const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    // First differing byte is the highest-index variable that differs;
    // the smaller exponent there is the larger monomial.
    const int c = std::memcmp(a.bytes_.data(), b.bytes_.data(), kMaxVars);
    return c < 0 ? 1 : (c > 0 ? -1 : 0);
  }

  /// Lexicographic with x0 > x1 > ...
  friend int lex_compare(const Monomial& a, const Monomial& b) {
    for (int i = 0; i < kMaxVars; ++i) {
      const int ea = a.exponent(i), eb = b.exponent(i);
      if (ea != eb) return ea < eb ? -1 : 1;
    }
    return 0;
  }

  /// Block order: grevlex on variables [0, k) first, then grevlex on the rest.
  friend int block_compare(const Monomial& a, const Monomial& b, int k) {
    const int lo = kMaxVars - k;  // bytes [lo, kMaxVars) hold variables 0..k-1
    int da = 0, db = 0;
    for (int i = lo; i < kMaxVars; ++i) {
      da += a.bytes_[i];
      db += b.bytes_[i];
    }
    if (da != db) return da < db ? -1 : 1;
    int c = std::memcmp(a.bytes_.data() + lo, b.bytes_.data() + lo, k);
    if (c != 0) return c < 0 ? 1 : -1;
    const int ra = a.degree() - da, rb = b.degree() - db;
    if (ra != rb) return ra < rb ? -1 : 1;
    c = std::memcmp(a.bytes_.data(), b.bytes_.data(), lo);
    return c < 0 ? 1 : (c > 0 ? -1 : 0);
  }

  std::size_t hash() const {
    std::uint64_t h = 1469598103934665603ull;
    std::uint64_t words[8];
    std::memcpy(words, bytes_.data(), sizeof(words));
    for (std::uint64_t w : words) {
      h ^= w;
      h *= 1099511628211ull;
      h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
  }

 private:
  static constexpr int slot(int var) { return kMaxVars - 1 - var; }
  void set_degree(int d) {
    bytes_[kMaxVars] = static_cast<std::uint8_t>(d & 0xff);
    bytes_[kMaxVars + 1] = static_cast<std::uint8_t>(d >> 8);
  }

  std::array<std::uint8_t, kMaxVars + 2> bytes_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Term order selector shared by polynomials and the Gröbner engine.
struct MonomialOrder {
  enum class Kind { kGrevlex, kLex, kBlock };
  Kind kind = Kind::kGrevlex;
  int block = 0;  // number of leading variables eliminated by kBlock

  static MonomialOrder grevlex() { return {}; }
  static MonomialOrder lex() { return {Kind::kLex, 0}; }
  static MonomialOrder elimination(int k) { return {Kind::kBlock, k}; }

  int compare(const Monomial& a, const Monomial& b) const {
    switch (kind) {
      case Kind::kGrevlex:
        return grevlex_compare(a, b);
      case Kind::kLex:
        return lex_compare(a, b);
      case Kind::kBlock:
        return block_compare(a, b, block);
    }
    return 0;
  }

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;
};

}  // namespace lowrank
