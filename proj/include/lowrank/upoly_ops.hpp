#pragma once

// Dense univariate polynomial algorithms over a generic coefficient field.
// Coefficients are stored in ascending degree order; the zero polynomial is
// the empty vector.

#include <algorithm>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

namespace lowrank::upoly {

template <class F>
using Coeffs = std::vector<typename F::T>;

template <class F>
void trim(const F& f, Coeffs<F>& a) {
  while (!a.empty() && f.is_zero(a.back())) a.pop_back();
}

template <class F>
int degree(const Coeffs<F>& a) {
  return static_cast<int>(a.size()) - 1;
}

template <class F>
Coeffs<F> add(const F& f, const Coeffs<F>& a, const Coeffs<F>& b) {
  Coeffs<F> out(std::max(a.size(), b.size()), f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = f.add(out[i], b[i]);
  trim(f, out);
  return out;
}

template <class F>
Coeffs<F> sub(const F& f, const Coeffs<F>& a, const Coeffs<F>& b) {
  Coeffs<F> out(std::max(a.size(), b.size()), f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = f.sub(out[i], b[i]);
  trim(f, out);
  return out;
}

template <class F>
Coeffs<F> scale(const F& f, Coeffs<F> a, const typename F::T& c) {
  if (f.is_zero(c)) return {};
  for (auto& x : a) x = f.mul(x, c);
  return a;
}

template <class F>
Coeffs<F> mul(const F& f, const Coeffs<F>& a, const Coeffs<F>& b) {
  if (a.empty() || b.empty()) return {};
  Coeffs<F> out(a.size() + b.size() - 1, f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (f.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
  }
  trim(f, out);
  return out;
}

/// a = q * b + r with deg r < deg b.
template <class F>
std::pair<Coeffs<F>, Coeffs<F>> divmod(const F& f, const Coeffs<F>& a, const Coeffs<F>& b) {
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  Coeffs<F> r = a;
  trim(f, r);
  if (r.size() < b.size()) return {Coeffs<F>{}, r};
  const auto lead_inv = f.inv(b.back());
  Coeffs<F> q(r.size() - b.size() + 1, f.zero());
  for (int k = static_cast<int>(r.size()) - static_cast<int>(b.size()); k >= 0; --k) {
    const auto c = f.mul(r[k + b.size() - 1], lead_inv);
    q[k] = c;
    if (f.is_zero(c)) continue;
    for (std::size_t j = 0; j < b.size(); ++j) f.sub_mul(r[k + j], c, b[j]);
  }
  r.resize(b.size() - 1);
  trim(f, r);
  trim(f, q);
  return {std::move(q), std::move(r)};
}

template <class F>
Coeffs<F> mod(const F& f, const Coeffs<F>& a, const Coeffs<F>& b) {
  return divmod(f, a, b).second;
}

template <class F>
Coeffs<F> make_monic(const F& f, Coeffs<F> a) {
  trim(f, a);
  if (a.empty()) return a;
  return scale(f, std::move(a), f.inv(a.back()));
}

template <class F>
Coeffs<F> gcd(const F& f, Coeffs<F> a, Coeffs<F> b) {
  trim(f, a);
  trim(f, b);
  while (!b.empty()) {
    Coeffs<F> r = mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(f, std::move(a));
}

/// Returns (g, s, t) with s*a + t*b = g monic.
template <class F>
std::tuple<Coeffs<F>, Coeffs<F>, Coeffs<F>> ext_gcd(const F& f, Coeffs<F> a, Coeffs<F> b) {
  trim(f, a);
  trim(f, b);
  Coeffs<F> s0{f.one()}, s1{}, t0{}, t1{f.one()};
  while (!b.empty()) {
    auto [q, r] = divmod(f, a, b);
    Coeffs<F> s2 = sub(f, s0, mul(f, q, s1));
    Coeffs<F> t2 = sub(f, t0, mul(f, q, t1));
    a = std::move(b);
    b = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (a.empty()) return {a, s0, t0};
  const auto li = f.inv(a.back());
  return {scale(f, std::move(a), li), scale(f, std::move(s0), li), scale(f, std::move(t0), li)};
}

/// Inverse of a modulo m; throws std::domain_error when not coprime.
template <class F>
Coeffs<F> inverse_mod(const F& f, const Coeffs<F>& a, const Coeffs<F>& m) {
  auto [g, s, t] = ext_gcd(f, mod(f, a, m), m);
  if (g.size() != 1) throw std::domain_error("polynomial not invertible modulo m");
  return mod(f, s, m);
}

template <class F>
Coeffs<F> derivative(const F& f, const Coeffs<F>& a) {
  if (a.size() <= 1) return {};
  Coeffs<F> out(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) out[i - 1] = f.mul(a[i], f.from_int(static_cast<long>(i)));
  trim(f, out);
  return out;
}

/// Monic squarefree part (characteristic 0, or p larger than the degree).
template <class F>
Coeffs<F> squarefree_part(const F& f, const Coeffs<F>& a) {
  Coeffs<F> t = a;
  trim(f, t);
  if (t.size() <= 1) return make_monic(f, std::move(t));
  const Coeffs<F> g = gcd(f, t, derivative(f, t));
  return make_monic(f, divmod(f, t, g).first);
}

template <class F>
typename F::T eval(const F& f, const Coeffs<F>& a, const typename F::T& x) {
  typename F::T acc = f.zero();
  for (std::size_t i = a.size(); i-- > 0;) acc = f.add(f.mul(acc, x), a[i]);
  return acc;
}

template <class F>
Coeffs<F> mul_mod(const F& f, const Coeffs<F>& a, const Coeffs<F>& b, const Coeffs<F>& m) {
  return mod(f, mul(f, a, b), m);
}

/// a(b(t)) mod m, Horner style.
template <class F>
Coeffs<F> compose_mod(const F& f, const Coeffs<F>& a, const Coeffs<F>& b, const Coeffs<F>& m) {
  Coeffs<F> acc;
  const Coeffs<F> bm = mod(f, b, m);
  for (std::size_t i = a.size(); i-- > 0;) {
    acc = mul_mod(f, acc, bm, m);
    acc = add(f, acc, Coeffs<F>{a[i]});
  }
  return acc;
}

}  // namespace lowrank::upoly
