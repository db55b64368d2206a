#include "lowrank/realroots.hpp"

#include <algorithm>
#include <stdexcept>

namespace lowrank {

namespace {

using IntPoly = std::vector<Integer>;

IntPoly primitive_integer(const UniPoly& h) {
  Integer l = 1;
  for (const auto& c : h.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  IntPoly out;
  Integer g = 0;
  for (const auto& c : h.coeffs()) {
    out.push_back(Integer(c.get_num() * (l / c.get_den())));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
  }
  if (g > 1)
    for (auto& c : out) c /= g;
  return out;
}

int sign_variations(const IntPoly& p) {
  int v = 0, last = 0;
  for (const auto& c : p) {
    const int s = sgn(c);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

// p(x + 1)
IntPoly taylor_shift(IntPoly p) {
  const int d = static_cast<int>(p.size()) - 1;
  for (int i = 0; i < d; ++i)
    for (int j = d - 1; j >= i; --j) p[j] += p[j + 1];
  return p;
}

// Descartes bound for roots in (0, 1): variations of (x+1)^d p(1/(x+1)).
int descartes_01(const IntPoly& p) {
  IntPoly rev(p.rbegin(), p.rend());
  return sign_variations(taylor_shift(std::move(rev)));
}

// 2^d p(x/2)
IntPoly halve(const IntPoly& p) {
  const int d = static_cast<int>(p.size()) - 1;
  IntPoly out(p.size());
  for (int i = 0; i <= d; ++i) out[i] = p[i] << (d - i);
  return out;
}

Integer eval_half(const IntPoly& p) {
  // 2^d p(1/2)
  const int d = static_cast<int>(p.size()) - 1;
  Integer acc = 0;
  for (int i = 0; i <= d; ++i) acc += p[i] << (d - i);
  return acc;
}

// Roots of p in (0,1) map to (a, a + w).
void vca(const IntPoly& p, const Rational& a, const Rational& w, std::vector<RootInterval>& out) {
  const int v = descartes_01(p);
  if (v == 0) return;
  if (v == 1) {
    out.push_back({a, a + w});
    return;
  }
  const Rational half = w / 2;
  IntPoly left = halve(p);
  if (sgn(eval_half(p)) == 0) {
    // Divide out the root at 1/2, i.e. (2x - 1) in the halved coordinates: x - 1 for left.
    out.push_back({a + half, a + half});
  }
  IntPoly right = taylor_shift(left);
  vca(left, a, half, out);
  vca(right, a + half, half, out);
}

void trim(IntPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

void make_primitive(IntPoly& p) {
  Integer g = 0;
  for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g > 1)
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

// A positive multiple of a mod b.
IntPoly positive_prem(IntPoly a, const IntPoly& b) {
  const int db = static_cast<int>(b.size()) - 1;
  const Integer& lb = b.back();
  int steps = 0;
  while (static_cast<int>(a.size()) - 1 >= db) {
    const Integer la = a.back();
    const int shift = static_cast<int>(a.size()) - 1 - db;
    for (auto& c : a) c *= lb;
    for (int i = 0; i <= db; ++i) a[i + shift] -= la * b[i];
    trim(a);
    ++steps;
    make_primitive(a);
  }
  if (sgn(lb) < 0 && steps % 2 == 1)
    for (auto& c : a) c = -c;
  return a;
}

// Primitive pseudo-remainder sequence: each entry is a positive multiple of the
// Euclidean Sturm sequence entry, so sign variations are unchanged.
std::vector<UniPoly> sturm_sequence(const UniPoly& h) {
  std::vector<IntPoly> seq{primitive_integer(h), primitive_integer(h.derivative())};
  while (seq.back().size() > 1) {
    IntPoly r = positive_prem(seq[seq.size() - 2], seq.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    make_primitive(r);
    seq.push_back(std::move(r));
  }
  std::vector<UniPoly> out;
  for (const auto& p : seq) out.push_back(UniPoly(std::vector<Rational>(p.begin(), p.end())));
  return out;
}

int variations_at(const std::vector<UniPoly>& seq, const Rational& x) {
  int v = 0, last = 0;
  for (const auto& s : seq) {
    const int sg = s.sign_at(x);
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++v;
    last = sg;
  }
  return v;
}

int variations_at_infinity(const std::vector<UniPoly>& seq, bool positive) {
  int v = 0, last = 0;
  for (const auto& s : seq) {
    int sg = sgn(s.leading());
    if (!positive && s.degree() % 2 == 1) sg = -sg;
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++v;
    last = sg;
  }
  return v;
}

struct Interval {
  Rational lo, hi;
};

Interval mul(const Interval& a, const Interval& b) {
  const Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

Interval horner(const UniPoly& f, const Interval& x) {
  Interval acc{0, 0};
  for (int i = f.degree(); i >= 0; --i) {
    acc = mul(acc, x);
    acc.lo += f.coeff(i);
    acc.hi += f.coeff(i);
  }
  return acc;
}

}  // namespace

std::vector<RootInterval> isolate_roots(const UniPoly& h) {
  if (h.is_zero()) throw std::invalid_argument("isolate_roots: zero polynomial");
  if (!is_squarefree(h)) throw std::invalid_argument("isolate_roots: polynomial is not squarefree");
  std::vector<RootInterval> out;
  if (h.degree() <= 0) return out;
  IntPoly p = primitive_integer(h);
  // Exact root at zero.
  std::vector<RootInterval> zero;
  if (sgn(p[0]) == 0) {
    p.erase(p.begin());
    zero.push_back({Rational(0), Rational(0)});
  }
  // Cauchy bound rounded up to a power of two.
  Rational bound = 0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) bound = std::max(bound, Rational(abs(p[i]), abs(p.back())));
  bound += 1;
  Integer b = 1;
  int k = 0;
  while (Rational(b) < bound) {
    b <<= 1;
    ++k;
  }
  // Positive roots: x = b u with u in (0,1); p(b u) has coefficients p_i b^i.
  IntPoly pos(p.size()), neg(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    pos[i] = p[i] << (static_cast<unsigned>(i) * k);
    neg[i] = (i % 2 ? -p[i] : p[i]) << (static_cast<unsigned>(i) * k);
  }
  std::vector<RootInterval> positive, negative;
  vca(pos, Rational(0), Rational(b), positive);
  vca(neg, Rational(0), Rational(b), negative);
  for (auto it = negative.rbegin(); it != negative.rend(); ++it) out.push_back({-it->hi, -it->lo});
  out.insert(out.end(), zero.begin(), zero.end());
  out.insert(out.end(), positive.begin(), positive.end());
  std::sort(out.begin(), out.end(), [](const RootInterval& x, const RootInterval& y) {
    return x.lo < y.lo || (x.lo == y.lo && x.hi < y.hi);
  });
  // Pull endpoints off neighbouring exact roots so every open interval has a sign change.
  std::vector<UniPoly> seq;
  for (auto& root : out) {
    if (root.exact() || (h.sign_at(root.lo) != 0 && h.sign_at(root.hi) != 0)) continue;
    if (seq.empty()) seq = sturm_sequence(h);
    while (h.sign_at(root.lo) == 0 || h.sign_at(root.hi) == 0) {
      const Rational mid = (root.lo + root.hi) / 2;
      if (h.sign_at(mid) == 0) {
        root.lo = root.hi = mid;
        break;
      }
      if (variations_at(seq, root.lo) - variations_at(seq, mid) == 1) {
        root.hi = mid;
      } else {
        root.lo = mid;
      }
    }
  }
  return out;
}

int sturm_count(const UniPoly& h) {
  if (h.degree() <= 0) return 0;
  const UniPoly s = squarefree_part(h);
  const auto seq = sturm_sequence(s);
  return variations_at_infinity(seq, false) - variations_at_infinity(seq, true);
}

int sturm_count(const UniPoly& h, const Rational& a, const Rational& b) {
  if (h.degree() <= 0) return 0;
  const UniPoly s = squarefree_part(h);
  const auto seq = sturm_sequence(s);
  return variations_at(seq, a) - variations_at(seq, b);
}

void refine(const UniPoly& h, RootInterval& root, const Rational& width) {
  if (root.exact()) return;
  int slo = h.sign_at(root.lo);
  while (root.hi - root.lo > width) {
    const Rational mid = (root.lo + root.hi) / 2;
    const int s = h.sign_at(mid);
    if (s == 0) {
      root.lo = root.hi = mid;
      return;
    }
    if (s == slo) {
      root.lo = mid;
    } else {
      root.hi = mid;
    }
    (void)slo;
  }
}

IsolatedRealPoint evaluate_box(const RationalParametrization& p, RootInterval root, const Rational& width) {
  if (sgn(width) <= 0) throw std::invalid_argument("evaluate_box: width must be positive");
  IsolatedRealPoint out;
  const int n = p.n;
  out.lo.resize(n);
  out.hi.resize(n);
  if (root.exact()) {
    const Rational d = p.q0.eval(root.lo);
    if (sgn(d) == 0) throw std::runtime_error("evaluate_box: q0 vanishes at the root");
    for (int i = 0; i < n; ++i) out.lo[i] = out.hi[i] = p.q[i].eval(root.lo) / d;
    out.root = root;
    return out;
  }
  for (int iter = 0; iter < 4096; ++iter) {
    const Interval t{root.lo, root.hi};
    const Interval d = horner(p.q0, t);
    bool ok = !(sgn(d.lo) <= 0 && sgn(d.hi) >= 0);
    if (ok) {
      const Interval inv = {1 / d.hi, 1 / d.lo};
      for (int i = 0; i < n && ok; ++i) {
        const Interval x = mul(horner(p.q[i], t), inv);
        out.lo[i] = x.lo;
        out.hi[i] = x.hi;
        if (x.hi - x.lo > width) ok = false;
      }
    }
    if (ok) {
      out.root = root;
      const Rational w = root.hi - root.lo;
      out.precision_bits = static_cast<int>(mpz_sizeinbase(w.get_den_mpz_t(), 2)) -
                           static_cast<int>(mpz_sizeinbase(w.get_num_mpz_t(), 2));
      return out;
    }
    refine(p.qlast, root, (root.hi - root.lo) / 2);
    if (root.exact()) return evaluate_box(p, root, width);
  }
  throw std::runtime_error("evaluate_box: refinement budget exceeded");
}

int count_real(const RationalParametrization& p) {
  if (p.is_empty()) return 0;
  const auto seq = sturm_sequence(p.qlast);  // qlast is squarefree
  return variations_at_infinity(seq, false) - variations_at_infinity(seq, true);
}

std::vector<IsolatedRealPoint> real_points(const RationalParametrization& p, const Rational& width) {
  std::vector<IsolatedRealPoint> out;
  if (p.is_empty()) return out;
  for (const auto& r : isolate_roots(p.qlast)) out.push_back(evaluate_box(p, r, width));
  return out;
}

nlohmann::json to_json(const std::vector<IsolatedRealPoint>& points) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& pt : points) {
    nlohmann::json lo = nlohmann::json::array(), hi = nlohmann::json::array();
    for (const auto& x : pt.lo) lo.push_back(to_string(x));
    for (const auto& x : pt.hi) hi.push_back(to_string(x));
    out.push_back({{"lo", lo}, {"hi", hi}});
  }
  return out;
}

}  // namespace lowrank
