#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "lowrank/field.hpp"
#include "lowrank/groebner_engine.hpp"
#include "lowrank/multipoly.hpp"

namespace lowrank {

struct GroebnerOptions {
  MonomialOrder order = MonomialOrder::grevlex();
  /// Cap on S-pair reductions; exceeding it throws GroebnerBudgetExceeded.
  std::size_t max_steps = 2'000'000;
  /// 0 computes over Q; otherwise over Z/modulus (modulus must be a prime < 2^31).
  std::uint32_t modulus = 0;
};

/// A polynomial ideal given by generators, with a lazily filled exact basis cache.
class Ideal {
 public:
  explicit Ideal(PolySystem generators);
  Ideal(Universe universe, PolySystem generators);

  const Universe& universe() const { return universe_; }
  int nvars() const { return static_cast<int>(universe_->size()); }
  const PolySystem& generators() const { return generators_; }

  /// Reduced basis over Q for `order` (computed once per order).
  const PolySystem& basis(const GroebnerOptions& options = {}) const;

 private:
  Universe universe_;
  PolySystem generators_;
  struct Cache {
    std::mutex mu;
    std::map<std::pair<int, int>, PolySystem> by_order;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Reduced Gröbner basis over Q, sorted by increasing leading monomial.
/// Options.modulus must be 0 here (a basis mod p has no Q representative).
PolySystem groebner_basis(const Ideal& ideal, const GroebnerOptions& options = {});

/// Krull dimension of the zero set; -1 when the ideal is the unit ideal.
int ideal_dimension(const Ideal& ideal, const GroebnerOptions& options = {});
bool is_zero_dimensional(const Ideal& ideal, const GroebnerOptions& options = {});
bool is_empty(const Ideal& ideal, const GroebnerOptions& options = {});

/// Dimension of K[x]/<leading monomials>: nvars minus a minimum hitting set of supports.
int dimension_from_leading_monomials(std::span<const Monomial> leads, int nvars);

/// Reduces p completely by a reduced grevlex basis over Q.
MultiPoly normal_form(const MultiPoly& p, const PolySystem& basis);

namespace gb {

template <class F>
Poly<F> from_multipoly(const F& field, const MultiPoly& p, const MonomialOrder& order) {
  Poly<F> out;
  out.terms.reserve(p.size());
  for (const auto& t : p.terms()) {
    auto c = field.from_rational(t.coef);
    if (!field.is_zero(c)) out.terms.push_back({t.mono, c});
  }
  if (order.kind != MonomialOrder::Kind::kGrevlex) {
    std::sort(out.terms.begin(), out.terms.end(),
              [&](const Term<F>& a, const Term<F>& b) { return order.compare(a.m, b.m) > 0; });
  }
  out.sugar = p.total_degree();
  return out;
}

MultiPoly to_multipoly(const Universe& universe, const Poly<RationalField>& p);

template <class F>
std::vector<Poly<F>> from_system(const F& field, const PolySystem& system, const MonomialOrder& order) {
  std::vector<Poly<F>> out;
  out.reserve(system.size());
  for (const auto& p : system) out.push_back(from_multipoly(field, p, order));
  return out;
}

template <class F>
int dimension_of_basis(const std::vector<Poly<F>>& basis, int nvars) {
  if (basis.size() == 1 && basis[0].lm().is_one()) return -1;
  std::vector<Monomial> leads;
  for (const auto& g : basis) leads.push_back(g.lm());
  return dimension_from_leading_monomials(leads, nvars);
}

}  // namespace gb

/// ideal_dimension over Z/p for two (or, on disagreement, three) large primes,
/// returning the agreeing value. Primes dividing a denominator are skipped.
int ideal_dimension_multimodular(const Ideal& ideal, std::size_t max_steps = 2'000'000);

}  // namespace lowrank
