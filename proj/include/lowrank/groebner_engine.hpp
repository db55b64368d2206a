#pragma once

// Buchberger's algorithm over a generic coefficient field: sugar pair
// selection, Gebauer-Moeller installation of both Buchberger criteria,
// monic reduced output.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lowrank/monomial.hpp"

namespace lowrank {

class GroebnerBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace gb {

template <class F>
struct Term {
  Monomial m;
  typename F::T c;
};

/// Polynomial with terms in strictly decreasing order for the engine's order.
template <class F>
struct Poly {
  std::vector<Term<F>> terms;
  int sugar = 0;

  bool is_zero() const { return terms.empty(); }
  const Monomial& lm() const { return terms.front().m; }
  int total_degree() const {
    int d = -1;
    for (const auto& t : terms) d = std::max(d, t.m.degree());
    return d;
  }
};

template <class F>
class Engine {
 public:
  Engine(F field, MonomialOrder order, std::size_t max_steps)
      : f_(std::move(field)), order_(order), max_steps_(max_steps) {}

  const F& field() const { return f_; }
  const MonomialOrder& order() const { return order_; }
  std::size_t steps() const { return steps_; }

  void sort_terms(Poly<F>& p) const {
    std::sort(p.terms.begin(), p.terms.end(),
              [this](const Term<F>& a, const Term<F>& b) { return order_.compare(a.m, b.m) > 0; });
    // merge duplicates
    std::vector<Term<F>> out;
    out.reserve(p.terms.size());
    for (auto& t : p.terms) {
      if (!out.empty() && out.back().m == t.m) {
        out.back().c = f_.add(out.back().c, t.c);
      } else {
        if (!out.empty() && f_.is_zero(out.back().c)) out.pop_back();
        out.push_back(std::move(t));
      }
    }
    if (!out.empty() && f_.is_zero(out.back().c)) out.pop_back();
    p.terms = std::move(out);
  }

  void make_monic(Poly<F>& p) const {
    if (p.is_zero() || f_.is_one(p.terms.front().c)) return;
    const auto inv = f_.inv(p.terms.front().c);
    for (auto& t : p.terms) t.c = f_.mul(t.c, inv);
  }

  /// Reduced Gröbner basis, sorted by increasing leading monomial.
  std::vector<Poly<F>> compute(std::vector<Poly<F>> input) {
    basis_.clear();
    lead_.clear();
    masks_.clear();
    active_.clear();
    pairs_.clear();
    steps_ = 0;

    for (auto& p : input) {
      if (p.is_zero()) continue;
      make_monic(p);
      p.sugar = p.total_degree();
    }
    std::erase_if(input, [](const Poly<F>& p) { return p.is_zero(); });
    std::sort(input.begin(), input.end(), [this](const Poly<F>& a, const Poly<F>& b) {
      return order_.compare(a.lm(), b.lm()) < 0;
    });
    for (auto& p : input) {
      reduce_full(p);
      if (p.is_zero()) continue;
      make_monic(p);
      if (p.lm().is_one()) return unit_basis();
      install(std::move(p));
    }

    while (!pairs_.empty()) {
      if (++steps_ > max_steps_) throw GroebnerBudgetExceeded("Groebner basis step budget exceeded");
      const std::size_t pick = select_pair();
      const Pair pr = pairs_[pick];
      pairs_[pick] = pairs_.back();
      pairs_.pop_back();
      Poly<F> s = spoly(pr);
      reduce_full(s);
      if (s.is_zero()) continue;
      make_monic(s);
      if (s.lm().is_one()) return unit_basis();
      install(std::move(s));
    }
    return finalize();
  }

  /// Full reduction of p by a reduced basis (terms all in normal form afterwards).
  void reduce_by(Poly<F>& p, const std::vector<Poly<F>>& basis) const {
    std::vector<std::uint64_t> masks;
    masks.reserve(basis.size());
    for (const auto& g : basis) masks.push_back(g.lm().support_mask());
    reduce_with(p, basis, masks, nullptr);
  }

 private:
  struct Pair {
    int i;
    int j;
    Monomial lcm;
    int sugar;
  };

  std::vector<Poly<F>> unit_basis() const {
    Poly<F> one;
    one.terms.push_back({Monomial(), f_.one()});
    return {one};
  }

  std::size_t select_pair() const {
    std::size_t best = 0;
    for (std::size_t k = 1; k < pairs_.size(); ++k) {
      const Pair& a = pairs_[k];
      const Pair& b = pairs_[best];
      if (a.sugar != b.sugar) {
        if (a.sugar < b.sugar) best = k;
        continue;
      }
      const int c = order_.compare(a.lcm, b.lcm);
      if (c < 0 || (c == 0 && (a.j < b.j || (a.j == b.j && a.i < b.i)))) best = k;
    }
    return best;
  }

  Poly<F> spoly(const Pair& pr) const {
    const Poly<F>& a = basis_[pr.i];
    const Poly<F>& b = basis_[pr.j];
    const Monomial ma = a.lm().quotient_of(pr.lcm);
    const Monomial mb = b.lm().quotient_of(pr.lcm);
    Poly<F> s;
    s.sugar = pr.sugar;
    s.terms.reserve(a.terms.size() + b.terms.size());
    // a*ma - b*mb, skipping the cancelling leading terms (both monic).
    std::size_t i = 1, j = 1;
    while (i < a.terms.size() || j < b.terms.size()) {
      int c;
      Monomial x, y;
      if (i < a.terms.size()) x = a.terms[i].m * ma;
      if (j < b.terms.size()) y = b.terms[j].m * mb;
      if (i == a.terms.size()) c = -1;
      else if (j == b.terms.size()) c = 1;
      else c = order_.compare(x, y);
      if (c > 0) {
        s.terms.push_back({x, a.terms[i].c});
        ++i;
      } else if (c < 0) {
        s.terms.push_back({y, f_.neg(b.terms[j].c)});
        ++j;
      } else {
        auto v = f_.sub(a.terms[i].c, b.terms[j].c);
        if (!f_.is_zero(v)) s.terms.push_back({x, std::move(v)});
        ++i;
        ++j;
      }
    }
    return s;
  }

  // p -= c * m * g where the term of p at index `at` cancels against c*m*lm(g).
  void sub_multiple(Poly<F>& p, std::size_t at, const typename F::T& c, const Monomial& m, const Poly<F>& g) const {
    scratch_.clear();
    scratch_.reserve(p.terms.size() + g.terms.size());
    for (std::size_t k = 0; k < at; ++k) scratch_.push_back(std::move(p.terms[k]));
    std::size_t i = at + 1, j = 1;
    while (i < p.terms.size() || j < g.terms.size()) {
      int cmp;
      Monomial y;
      if (j < g.terms.size()) y = g.terms[j].m * m;
      if (i == p.terms.size()) cmp = -1;
      else if (j == g.terms.size()) cmp = 1;
      else cmp = order_.compare(p.terms[i].m, y);
      if (cmp > 0) {
        scratch_.push_back(std::move(p.terms[i]));
        ++i;
      } else if (cmp < 0) {
        scratch_.push_back({y, f_.neg(f_.mul(c, g.terms[j].c))});
        ++j;
      } else {
        auto v = p.terms[i].c;
        f_.sub_mul(v, c, g.terms[j].c);
        if (!f_.is_zero(v)) scratch_.push_back({p.terms[i].m, std::move(v)});
        ++i;
        ++j;
      }
    }
    p.terms.swap(scratch_);
  }

  int find_reducer(const Monomial& m, const std::vector<Poly<F>>& basis, const std::vector<std::uint64_t>& masks,
                   const std::vector<char>* skip) const {
    const std::uint64_t mm = m.support_mask();
    int best = -1;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (skip && (*skip)[k]) continue;
      if ((masks[k] & ~mm) != 0) continue;
      if (!basis[k].lm().divides(m)) continue;
      if (best < 0 || basis[k].terms.size() < basis[best].terms.size()) best = static_cast<int>(k);
    }
    return best;
  }

  void reduce_with(Poly<F>& p, const std::vector<Poly<F>>& basis, const std::vector<std::uint64_t>& masks,
                   const std::vector<char>* skip) const {
    std::size_t pos = 0;
    while (pos < p.terms.size()) {
      const int r = find_reducer(p.terms[pos].m, basis, masks, skip);
      if (r < 0) {
        ++pos;
        continue;
      }
      const Poly<F>& g = basis[r];
      const Monomial q = g.lm().quotient_of(p.terms[pos].m);
      const auto c = p.terms[pos].c;  // g is monic
      if (pos == 0) p.sugar = std::max(p.sugar, g.sugar + q.degree());
      sub_multiple(p, pos, c, q, g);
    }
  }

  void reduce_full(Poly<F>& p) const { reduce_with(p, basis_, masks_, nullptr); }

  void install(Poly<F> h) {
    const int k = static_cast<int>(basis_.size());
    const Monomial lk = h.lm();
    basis_.push_back(std::move(h));
    lead_.push_back(lk);
    masks_.push_back(lk.support_mask());
    active_.push_back(1);

    // Gebauer-Moeller update.
    struct Cand {
      int i;
      Monomial lcm;
      bool coprime;
      bool keep = true;
    };
    std::vector<Cand> cands;
    for (int i = 0; i < k; ++i) {
      if (!active_[i]) continue;
      cands.push_back({i, lcm(lead_[i], lk), coprime(lead_[i], lk)});
    }
    // Chain criterion among new pairs: drop (i,k) when some other lcm(j,k) divides lcm(i,k)
    // properly, or equals it and comes earlier.
    for (std::size_t a = 0; a < cands.size(); ++a) {
      for (std::size_t b = 0; b < cands.size(); ++b) {
        if (a == b || !cands[b].keep) continue;
        if (!cands[b].lcm.divides(cands[a].lcm)) continue;
        if (cands[b].lcm == cands[a].lcm) {
          // among equal lcms keep one, preferring a coprime representative
          if (cands[a].coprime && !cands[b].coprime) continue;
          if (cands[a].coprime == cands[b].coprime && a < b) continue;
        }
        cands[a].keep = false;
        break;
      }
    }
    // Old pairs whose lcm is divisible by lk with both side lcms different.
    std::erase_if(pairs_, [&](const Pair& pr) {
      if (!lk.divides(pr.lcm)) return false;
      const Monomial li = lcm(lead_[pr.i], lk);
      const Monomial lj = lcm(lead_[pr.j], lk);
      return !(li == pr.lcm) && !(lj == pr.lcm);
    });
    const Poly<F>& hk = basis_[k];
    for (const auto& c : cands) {
      if (!c.keep || c.coprime) continue;  // product criterion
      const Poly<F>& gi = basis_[c.i];
      const int sugar = std::max(gi.sugar + c.lcm.degree() - lead_[c.i].degree(), hk.sugar + c.lcm.degree() - lk.degree());
      pairs_.push_back({c.i, k, c.lcm, sugar});
    }
    for (int i = 0; i < k; ++i) {
      if (active_[i] && lk.divides(lead_[i])) active_[i] = 0;
    }
  }

  std::vector<Poly<F>> finalize() {
    std::vector<Poly<F>> out;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (!active_[i]) continue;
      bool redundant = false;
      for (std::size_t j = 0; j < basis_.size() && !redundant; ++j) {
        if (j == i || !active_[j]) continue;
        if (lead_[j].divides(lead_[i]) && (!(lead_[j] == lead_[i]) || j < i)) redundant = true;
      }
      if (!redundant) out.push_back(basis_[i]);
    }
    std::sort(out.begin(), out.end(), [this](const Poly<F>& a, const Poly<F>& b) { return order_.compare(a.lm(), b.lm()) < 0; });
    // Inter-reduce tails.
    std::vector<std::uint64_t> masks;
    for (const auto& g : out) masks.push_back(g.lm().support_mask());
    std::vector<char> skip(out.size(), 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
      skip[i] = 1;
      Poly<F>& g = out[i];
      // Leading term is irreducible by the others (minimal basis); reduce the tail only.
      Poly<F> tail;
      tail.terms.assign(g.terms.begin() + 1, g.terms.end());
      reduce_with(tail, out, masks, &skip);
      tail.terms.insert(tail.terms.begin(), g.terms.front());
      tail.sugar = g.sugar;
      g = std::move(tail);
      skip[i] = 0;
    }
    return out;
  }

  F f_;
  MonomialOrder order_;
  std::size_t max_steps_;
  std::size_t steps_ = 0;

  std::vector<Poly<F>> basis_;
  std::vector<Monomial> lead_;
  std::vector<std::uint64_t> masks_;
  std::vector<char> active_;
  std::vector<Pair> pairs_;
  mutable std::vector<Term<F>> scratch_;
};

}  // namespace gb
}  // namespace lowrank
