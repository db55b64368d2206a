#pragma once

// Zero-dimensional quotient algebras K[x]/I: staircase, multiplication by
// variables, Krylov minimal polynomials, and shape-position coordinates for a
// linear form over a subset of the variables.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lowrank/groebner_engine.hpp"
#include "lowrank/upoly_ops.hpp"

namespace lowrank {

class NotZeroDimensional : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class QuotientTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace zd {

template <class F>
using Vec = std::vector<typename F::T>;

/// Incremental echelon form of w_0, w_1, ... tracking each row as a
/// combination of the w's.
template <class F>
class Krylov {
 public:
  Krylov(const F& f, int dim) : f_(f), dim_(dim) {}

  int size() const { return count_; }

  /// v = remainder + sum_l coeffs[l] w_l.
  std::pair<Vec<F>, Vec<F>> reduce(Vec<F> v) const {
    Vec<F> coeffs(count_, f_.zero());
    for (std::size_t j = 0; j < rows_.size(); ++j) {
      const auto c = v[pivots_[j]];
      if (f_.is_zero(c)) continue;
      const Vec<F>& row = rows_[j];
      for (int k = 0; k < dim_; ++k)
        if (!f_.is_zero(row[k])) f_.sub_mul(v[k], c, row[k]);
      const Vec<F>& comb = combs_[j];
      for (std::size_t l = 0; l < comb.size(); ++l)
        if (!f_.is_zero(comb[l])) coeffs[l] = f_.add(coeffs[l], f_.mul(c, comb[l]));
    }
    return {std::move(v), std::move(coeffs)};
  }

  /// Appends w_k. Returns the coefficients of w_k in w_0..w_{k-1} when it is dependent
  /// (and then does not append).
  std::optional<Vec<F>> add(const Vec<F>& w) {
    auto [rem, coeffs] = reduce(w);
    int pivot = -1;
    for (int k = 0; k < dim_; ++k)
      if (!f_.is_zero(rem[k])) {
        pivot = k;
        break;
      }
    if (pivot < 0) return coeffs;
    // rem = w_k - sum coeffs_l w_l, scaled to a unit pivot
    const auto inv = f_.inv(rem[pivot]);
    for (auto& x : rem) x = f_.mul(x, inv);
    Vec<F> comb(count_ + 1, f_.zero());
    for (int l = 0; l < count_; ++l) comb[l] = f_.neg(f_.mul(coeffs[l], inv));
    comb[count_] = inv;
    rows_.push_back(std::move(rem));
    combs_.push_back(std::move(comb));
    pivots_.push_back(pivot);
    ++count_;
    return std::nullopt;
  }

 private:
  F f_;
  int dim_;
  int count_ = 0;
  std::vector<Vec<F>> rows_;
  std::vector<Vec<F>> combs_;
  std::vector<int> pivots_;
};

/// Minimal polynomial of the operator `apply` on the cyclic space of `start`.
/// Leaves the Krylov basis start, T start, ... in `kry`.
template <class F, class Apply>
upoly::Coeffs<F> krylov_minpoly(const F& f, const Vec<F>& start, Apply&& apply, Krylov<F>& kry) {
  Vec<F> w = start;
  while (true) {
    auto dep = kry.add(w);
    if (dep) {
      upoly::Coeffs<F> mu(dep->size() + 1, f.zero());
      for (std::size_t l = 0; l < dep->size(); ++l) mu[l] = f.neg((*dep)[l]);
      mu.back() = f.one();
      return mu;
    }
    w = apply(w);
  }
}

/// K[x]/I for a zero-dimensional I given by a reduced grevlex basis.
template <class F>
class Quotient {
 public:
  Quotient(const F& f, std::vector<gb::Poly<F>> basis, int nvars, std::size_t max_dim)
      : f_(f), engine_(f, MonomialOrder::grevlex(), 0), basis_(std::move(basis)), nvars_(nvars) {
    if (basis_.size() == 1 && basis_[0].lm().is_one()) throw std::invalid_argument("Quotient: unit ideal");
    for (int i = 0; i < nvars_; ++i) {
      bool pure = false;
      for (const auto& g : basis_) {
        const Monomial& lm = g.lm();
        if (lm.support_mask() == (std::uint64_t{1} << i)) {
          pure = true;
          break;
        }
      }
      if (!pure) throw NotZeroDimensional("ideal is not zero-dimensional");
    }
    // Breadth-first walk of the staircase.
    std::vector<Monomial> frontier{Monomial()};
    index_.emplace(Monomial(), 0);
    stair_.push_back(Monomial());
    while (!frontier.empty()) {
      std::vector<Monomial> next;
      for (const auto& m : frontier)
        for (int i = 0; i < nvars_; ++i) {
          const Monomial c = m * Monomial::variable(i);
          if (index_.count(c) || is_leading_multiple(c)) continue;
          index_.emplace(c, static_cast<int>(stair_.size()));
          stair_.push_back(c);
          next.push_back(c);
          if (stair_.size() > max_dim) throw QuotientTooLarge("quotient dimension exceeds the configured cap");
        }
      frontier = std::move(next);
    }
    table_.assign(nvars_, std::vector<std::optional<Vec<F>>>(stair_.size()));
  }

  int dim() const { return static_cast<int>(stair_.size()); }
  int nvars() const { return nvars_; }
  const F& field() const { return f_; }
  const std::vector<Monomial>& staircase() const { return stair_; }
  const std::vector<gb::Poly<F>>& basis() const { return basis_; }

  Vec<F> unit() const {
    Vec<F> v(dim(), f_.zero());
    v[0] = f_.one();
    return v;
  }

  /// Coordinates of the normal form of p.
  Vec<F> coordinates(gb::Poly<F> p) const {
    engine_.reduce_by(p, basis_);
    Vec<F> v(dim(), f_.zero());
    for (const auto& t : p.terms) v[index_.at(t.m)] = t.c;
    return v;
  }

  Vec<F> variable(int i) const {
    gb::Poly<F> p;
    p.terms.push_back({Monomial::variable(i), f_.one()});
    return coordinates(std::move(p));
  }

  Vec<F> mul_var(int i, const Vec<F>& v) {
    Vec<F> out(dim(), f_.zero());
    for (int j = 0; j < dim(); ++j) {
      if (f_.is_zero(v[j])) continue;
      const Vec<F>& col = column(i, j);
      for (int k = 0; k < dim(); ++k)
        if (!f_.is_zero(col[k])) out[k] = f_.add(out[k], f_.mul(v[j], col[k]));
    }
    return out;
  }

  /// Multiplication by sum_i c[i] x_i.
  Vec<F> mul_linear(std::span<const typename F::T> c, const Vec<F>& v) {
    Vec<F> out(dim(), f_.zero());
    for (int i = 0; i < nvars_; ++i) {
      if (f_.is_zero(c[i])) continue;
      const Vec<F> part = mul_var(i, v);
      for (int k = 0; k < dim(); ++k)
        if (!f_.is_zero(part[k])) out[k] = f_.add(out[k], f_.mul(c[i], part[k]));
    }
    return out;
  }

  /// Minimal polynomial of x_i in the quotient.
  upoly::Coeffs<F> variable_minpoly(int i) {
    Krylov<F> kry(f_, dim());
    return krylov_minpoly(f_, unit(), [&](const Vec<F>& w) { return mul_var(i, w); }, kry);
  }

 private:
  bool is_leading_multiple(const Monomial& m) const {
    for (const auto& g : basis_)
      if (g.lm().divides(m)) return true;
    return false;
  }

  const Vec<F>& column(int i, int j) {
    auto& slot = table_[i][j];
    if (!slot) {
      const Monomial m = stair_[j] * Monomial::variable(i);
      auto it = index_.find(m);
      if (it != index_.end()) {
        Vec<F> e(dim(), f_.zero());
        e[it->second] = f_.one();
        slot = std::move(e);
      } else {
        gb::Poly<F> p;
        p.terms.push_back({m, f_.one()});
        slot = coordinates(std::move(p));
      }
    }
    return *slot;
  }

  F f_;
  gb::Engine<F> engine_;
  std::vector<gb::Poly<F>> basis_;
  int nvars_;
  std::vector<Monomial> stair_;
  std::unordered_map<Monomial, int, MonomialHash> index_;
  std::vector<std::vector<std::optional<Vec<F>>>> table_;
};

enum class ShapeStatus { kOk, kEmpty, kNotSeparating };

/// Points of V(I) projected on `keep`, as x_keep[i] = g[i](t) over the roots of h,
/// where t = sum lambda[i] x_keep[i].
template <class F>
struct ShapeImage {
  ShapeStatus status = ShapeStatus::kOk;
  upoly::Coeffs<F> h;               // monic squarefree
  std::vector<upoly::Coeffs<F>> g;  // deg < deg h
  int quotient_dim = 0;
  bool radicalized = false;
  std::size_t steps = 0;
};

namespace detail {

template <class F>
bool try_shape(Quotient<F>& q, std::span<const int> keep, std::span<const typename F::T> lambda, ShapeImage<F>& out) {
  const F& f = q.field();
  Vec<F> c(q.nvars(), f.zero());
  for (std::size_t k = 0; k < keep.size(); ++k) c[keep[k]] = lambda[k];
  Krylov<F> kry(f, q.dim());
  const auto mu = krylov_minpoly(f, q.unit(), [&](const Vec<F>& w) { return q.mul_linear(c, w); }, kry);
  const auto h = upoly::squarefree_part(f, mu);
  std::vector<upoly::Coeffs<F>> g;
  for (int var : keep) {
    auto [rem, coeffs] = kry.reduce(q.variable(var));
    for (const auto& x : rem)
      if (!f.is_zero(x)) return false;
    upoly::Coeffs<F> gi(coeffs.begin(), coeffs.end());
    upoly::trim(f, gi);
    g.push_back(upoly::mod(f, gi, h));
  }
  out.h = h;
  out.g = std::move(g);
  return true;
}

template <class F>
gb::Poly<F> univariate_in(const F& f, const upoly::Coeffs<F>& u, int var) {
  gb::Poly<F> p;
  for (std::size_t k = u.size(); k-- > 0;)
    if (!f.is_zero(u[k])) p.terms.push_back({Monomial::variable(var, static_cast<int>(k)), u[k]});
  p.sugar = static_cast<int>(u.size()) - 1;
  return p;
}

}  // namespace detail

/// Throws NotZeroDimensional, QuotientTooLarge or GroebnerBudgetExceeded.
template <class F>
ShapeImage<F> shape_image(const F& f, std::vector<gb::Poly<F>> gens, int nvars, std::span<const int> keep,
                          std::span<const typename F::T> lambda, std::size_t max_steps, std::size_t max_dim) {
  ShapeImage<F> out;
  gb::Engine<F> engine(f, MonomialOrder::grevlex(), max_steps);
  auto basis = engine.compute(gens);
  out.steps = engine.steps();
  if (basis.size() == 1 && basis[0].lm().is_one()) {
    out.status = ShapeStatus::kEmpty;
    out.h = {f.one()};
    out.g.assign(keep.size(), {});
    return out;
  }
  Quotient<F> q(f, std::move(basis), nvars, max_dim);
  out.quotient_dim = q.dim();
  if (detail::try_shape(q, keep, lambda, out)) return out;

  // Seidenberg: adjoin the squarefree parts of the univariate minimal polynomials.
  bool radical = true;
  for (int i = 0; i < nvars; ++i) {
    const auto mu = q.variable_minpoly(i);
    const auto sq = upoly::squarefree_part(f, mu);
    if (sq.size() != mu.size()) {
      radical = false;
      gens.push_back(detail::univariate_in(f, sq, i));
    }
  }
  if (radical) {
    out.status = ShapeStatus::kNotSeparating;
    return out;
  }
  auto rbasis = engine.compute(std::move(gens));
  out.steps += engine.steps();
  Quotient<F> rq(f, std::move(rbasis), nvars, max_dim);
  out.radicalized = true;
  out.quotient_dim = rq.dim();
  if (detail::try_shape(rq, keep, lambda, out)) return out;
  out.status = ShapeStatus::kNotSeparating;
  return out;
}

}  // namespace zd
}  // namespace lowrank
