#include "lowrank/groebner.hpp"

#include <algorithm>
#include <stdexcept>

namespace lowrank {

namespace {

std::pair<int, int> order_key(const MonomialOrder& o) { return {static_cast<int>(o.kind), o.block}; }

Universe universe_of(const PolySystem& gens) {
  for (const auto& g : gens)
    if (g.universe()) return g.universe();
  throw std::invalid_argument("Ideal: cannot infer the universe from an empty generator list");
}

template <class F>
std::vector<gb::Poly<F>> run(const F& field, const PolySystem& gens, const GroebnerOptions& options) {
  gb::Engine<F> engine(field, options.order, options.max_steps);
  return engine.compute(gb::from_system(field, gens, options.order));
}

int dimension_impl(const Ideal& ideal, const GroebnerOptions& options) {
  GroebnerOptions grevlex = options;
  grevlex.order = MonomialOrder::grevlex();
  if (options.modulus != 0) {
    const PrimeField field(options.modulus);
    return gb::dimension_of_basis(run(field, ideal.generators(), grevlex), ideal.nvars());
  }
  const PolySystem& basis = ideal.basis(grevlex);
  if (basis.size() == 1 && basis[0].is_constant()) return -1;
  if (basis.empty()) return ideal.nvars();
  std::vector<Monomial> leads;
  for (const auto& g : basis) leads.push_back(g.terms().front().mono);
  return dimension_from_leading_monomials(leads, ideal.nvars());
}

}  // namespace

Ideal::Ideal(PolySystem generators) : universe_(universe_of(generators)), generators_(std::move(generators)) {
  for (const auto& g : generators_)
    if (!same_universe(g.universe(), universe_)) throw std::invalid_argument("Ideal: generators over different universes");
}

Ideal::Ideal(Universe universe, PolySystem generators) : universe_(std::move(universe)), generators_(std::move(generators)) {
  for (const auto& g : generators_)
    if (!same_universe(g.universe(), universe_)) throw std::invalid_argument("Ideal: generators over different universes");
}

const PolySystem& Ideal::basis(const GroebnerOptions& options) const {
  if (options.modulus != 0) throw std::invalid_argument("Ideal::basis: exact bases only");
  std::lock_guard lock(cache_->mu);
  auto key = order_key(options.order);
  auto it = cache_->by_order.find(key);
  if (it != cache_->by_order.end()) return it->second;
  const RationalField q;
  auto polys = run(q, generators_, options);
  PolySystem out;
  out.reserve(polys.size());
  for (const auto& p : polys) {
    // Engine order may differ from MultiPoly's grevlex storage; from_terms re-sorts.
    out.push_back(gb::to_multipoly(universe_, p));
  }
  return cache_->by_order.emplace(key, std::move(out)).first->second;
}

PolySystem groebner_basis(const Ideal& ideal, const GroebnerOptions& options) { return ideal.basis(options); }

int ideal_dimension(const Ideal& ideal, const GroebnerOptions& options) { return dimension_impl(ideal, options); }

bool is_zero_dimensional(const Ideal& ideal, const GroebnerOptions& options) { return ideal_dimension(ideal, options) == 0; }

bool is_empty(const Ideal& ideal, const GroebnerOptions& options) { return ideal_dimension(ideal, options) == -1; }

int dimension_from_leading_monomials(std::span<const Monomial> leads, int nvars) {
  // Supports as bitmasks, minimal under inclusion.
  std::vector<std::uint64_t> supports;
  for (const auto& m : leads) {
    const std::uint64_t s = m.support_mask();
    if (s == 0) return -1;
    supports.push_back(s);
  }
  std::sort(supports.begin(), supports.end(), [](std::uint64_t a, std::uint64_t b) {
    return __builtin_popcountll(a) < __builtin_popcountll(b);
  });
  std::vector<std::uint64_t> minimal;
  for (auto s : supports) {
    bool dominated = false;
    for (auto t : minimal)
      if ((t & s) == t) {
        dominated = true;
        break;
      }
    if (!dominated) minimal.push_back(s);
  }
  // Minimum hitting set by branch and bound.
  int best = nvars;
  auto search = [&](auto&& self, std::uint64_t chosen, int count) -> void {
    if (count >= best) return;
    for (auto s : minimal) {
      if ((s & chosen) != 0) continue;
      for (int v = 0; v < nvars; ++v) {
        if (s & (std::uint64_t{1} << v)) self(self, chosen | (std::uint64_t{1} << v), count + 1);
      }
      return;
    }
    best = count;
  };
  search(search, 0, 0);
  return nvars - best;
}

MultiPoly normal_form(const MultiPoly& p, const PolySystem& basis) {
  const RationalField q;
  gb::Engine<RationalField> engine(q, MonomialOrder::grevlex(), 0);
  auto gbasis = gb::from_system(q, basis, MonomialOrder::grevlex());
  for (auto& g : gbasis) engine.make_monic(g);
  auto poly = gb::from_multipoly(q, p, MonomialOrder::grevlex());
  engine.reduce_by(poly, gbasis);
  return gb::to_multipoly(p.universe(), poly);
}

namespace gb {

MultiPoly to_multipoly(const Universe& universe, const Poly<RationalField>& p) {
  std::vector<MultiPoly::Term> terms;
  terms.reserve(p.terms.size());
  for (const auto& t : p.terms) terms.push_back({t.m, t.c});
  return MultiPoly::from_terms(universe, std::move(terms));
}

}  // namespace gb


int ideal_dimension_multimodular(const Ideal& ideal, std::size_t max_steps) {
  std::vector<int> seen;
  std::uint32_t p = 2147483648u;
  for (int tries = 0; tries < 64; ++tries) {
    p = previous_prime(p);
    GroebnerOptions o;
    o.modulus = p;
    o.max_steps = max_steps;
    int d;
    try {
      d = ideal_dimension(ideal, o);
    } catch (const BadPrime&) {
      continue;
    }
    for (int s : seen)
      if (s == d) return d;
    seen.push_back(d);
  }
  throw std::runtime_error("ideal_dimension_multimodular: no agreeing primes");
}

}  // namespace lowrank
