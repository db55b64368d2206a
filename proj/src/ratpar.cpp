#include "lowrank/ratpar.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>

#include "lowrank/zerodim.hpp"

namespace lowrank {

namespace {

const RationalField kQ{};

UniPoly pad_mod(const UniPoly& a, const UniPoly& h) { return a.degree() >= h.degree() ? a % h : a; }

std::vector<long> draw_lambda(Rng& rng, std::size_t k, int bound) {
  std::vector<long> lam(k);
  do {
    for (auto& l : lam) l = static_cast<long>(rng.uniform(-bound, bound));
  } while (k > 0 && std::all_of(lam.begin(), lam.end(), [](long l) { return l == 0; }));
  return lam;
}

template <class F>
zd::ShapeImage<F> field_image(const F& f, const PolySystem& gens, int nvars, std::span<const int> keep,
                              std::span<const long> lam, const RatParOptions& opt, int eliminate) {
  std::vector<typename F::T> lf;
  for (long l : lam) lf.push_back(f.from_int(l));
  const auto grevlex = MonomialOrder::grevlex();
  if (eliminate == 0)
    return zd::shape_image(f, gb::from_system(f, gens, grevlex), nvars, keep, std::span<const typename F::T>(lf),
                           opt.max_steps, opt.max_dim);

  const auto order = MonomialOrder::elimination(eliminate);
  gb::Engine<F> eng(f, order, opt.max_steps);
  auto basis = eng.compute(gb::from_system(f, gens, order));
  gb::Engine<F> grev(f, grevlex, 0);
  const std::uint64_t low = (std::uint64_t{1} << eliminate) - 1;
  std::vector<gb::Poly<F>> rest;
  for (const auto& g : basis) {
    bool free = true;
    for (const auto& t : g.terms)
      if (t.m.support_mask() & low) {
        free = false;
        break;
      }
    if (!free) continue;
    gb::Poly<F> p;
    std::vector<int> ex(nvars - eliminate);
    for (const auto& t : g.terms) {
      for (int v = 0; v < nvars - eliminate; ++v) ex[v] = t.m.exponent(v + eliminate);
      p.terms.push_back({Monomial::from_exponents(ex), t.c});
    }
    grev.sort_terms(p);
    rest.push_back(std::move(p));
  }
  if (rest.empty()) throw NotZeroDimensional("projection is not finite");
  std::vector<int> k2;
  for (int v : keep) k2.push_back(v - eliminate);
  return zd::shape_image(f, std::move(rest), nvars - eliminate, k2, std::span<const typename F::T>(lf), opt.max_steps,
                         opt.max_dim);
}

class Crt {
 public:
  void reset() {
    modulus_ = 1;
    residues_.clear();
  }
  bool empty() const { return residues_.empty(); }

  void add(const std::vector<std::uint32_t>& values, std::uint32_t p) {
    const PrimeField f(p);
    if (residues_.empty()) {
      residues_.reserve(values.size());
      for (auto v : values) residues_.emplace_back(static_cast<unsigned long>(v));
      modulus_ = static_cast<unsigned long>(p);
      return;
    }
    const auto ninv = f.inv(f.from_integer(modulus_));
    for (std::size_t i = 0; i < values.size(); ++i) {
      const auto r = f.from_integer(residues_[i]);
      const auto k = f.mul(f.sub(values[i], r), ninv);
      residues_[i] += modulus_ * static_cast<unsigned long>(k);
    }
    modulus_ *= static_cast<unsigned long>(p);
  }

  std::optional<std::vector<Rational>> reconstruct() const {
    std::vector<Rational> out;
    out.reserve(residues_.size());
    Integer bound;
    mpz_fdiv_q_2exp(bound.get_mpz_t(), modulus_.get_mpz_t(), 1);
    mpz_sqrt(bound.get_mpz_t(), bound.get_mpz_t());
    for (const auto& a : residues_) {
      auto q = rational_reconstruct(a, bound);
      if (!q) return std::nullopt;
      out.push_back(std::move(*q));
    }
    return out;
  }

 private:
  std::optional<Rational> rational_reconstruct(const Integer& a, const Integer& bound) const {
    Integer r0 = modulus_, r1 = a, t0 = 0, t1 = 1, q, tmp;
    while (r1 > bound) {
      mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
      tmp = r0 - q * r1;
      r0 = r1;
      r1 = tmp;
      tmp = t0 - q * t1;
      t0 = t1;
      t1 = tmp;
    }
    if (t1 == 0 || abs(t1) > bound) return std::nullopt;
    Integer g;
    mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
    if (g != 1) return std::nullopt;
    Rational out(r1, t1);
    out.canonicalize();
    return out;
  }

  Integer modulus_ = 1;
  std::vector<Integer> residues_;
};

std::vector<std::uint32_t> flatten(const PrimeField& f, const zd::ShapeImage<PrimeField>& img) {
  const int d = upoly::degree<PrimeField>(img.h);
  std::vector<std::uint32_t> out(img.h.begin(), img.h.end());
  const auto dh = upoly::derivative(f, img.h);
  for (const auto& g : img.g) {
    auto qi = d > 0 ? upoly::mul_mod(f, g, dh, img.h) : upoly::Coeffs<PrimeField>{};
    qi.resize(d, 0);
    out.insert(out.end(), qi.begin(), qi.end());
  }
  return out;
}

RationalParametrization unflatten(const std::vector<Rational>& v, int d, int k) {
  RationalParametrization p;
  p.n = k;
  p.qlast = UniPoly(std::vector<Rational>(v.begin(), v.begin() + d + 1));
  p.q0 = p.qlast.derivative();
  if (d == 0) return RationalParametrization::empty(k);
  for (int i = 0; i < k; ++i) {
    auto first = v.begin() + d + 1 + static_cast<std::ptrdiff_t>(i) * d;
    p.q.push_back(UniPoly(std::vector<Rational>(first, first + d)));
  }
  return p;
}

template <class F>
struct Reparam {
  upoly::Coeffs<F> chi;
  std::vector<upoly::Coeffs<F>> G;
};

template <class F>
upoly::Coeffs<F> padded_f(const F& f, upoly::Coeffs<F> a, int size) {
  a.resize(size, f.zero());
  return a;
}

// Minimal polynomial chi of mu = lambda . g[keep] in F[t]/h and g[keep] as polynomials in mu.
// Nothing when some kept coordinate is not a polynomial in mu. chi may have
// lower degree than h when points merge on the kept coordinates.
template <class F>
std::optional<Reparam<F>> reparametrize(const F& f, const upoly::Coeffs<F>& h, const std::vector<upoly::Coeffs<F>>& g,
                                        std::span<const int> keep, std::span<const long> lam) {
  const int d = upoly::degree<F>(h);
  upoly::Coeffs<F> mu;
  for (std::size_t k = 0; k < keep.size(); ++k)
    mu = upoly::add(f, mu, upoly::scale(f, g[keep[k]], f.from_int(lam[k])));
  mu = upoly::mod(f, mu, h);
  zd::Krylov<F> kry(f, d);
  zd::Vec<F> start(d, f.zero());
  start[0] = f.one();
  auto chi = zd::krylov_minpoly(
      f, start, [&](const zd::Vec<F>& w) { return padded_f(f, upoly::mul_mod(f, w, mu, h), d); }, kry);
  Reparam<F> out;
  out.chi = std::move(chi);
  for (int var : keep) {
    auto [rem, coeffs] = kry.reduce(padded_f(f, g[var], d));
    for (const auto& x : rem)
      if (!f.is_zero(x)) return std::nullopt;
    upoly::trim(f, coeffs);
    out.G.push_back(std::move(coeffs));
  }
  return out;
}

// qlast and the coordinates mod p. Nothing when p divides a denominator or
// qlast, q0 lose their degree or coprimality.
std::optional<std::pair<upoly::Coeffs<PrimeField>, std::vector<upoly::Coeffs<PrimeField>>>> reduce_mod(
    const PrimeField& f, const RationalParametrization& p) {
  auto conv = [&](const UniPoly& a) {
    upoly::Coeffs<PrimeField> out;
    for (const auto& c : a.coeffs()) out.push_back(f.from_rational(c));
    upoly::trim(f, out);
    return out;
  };
  try {
    auto h = conv(p.qlast);
    if (upoly::degree<PrimeField>(h) != p.qlast.degree()) return std::nullopt;
    const auto q0 = conv(p.q0);
    auto [gcd, s, t] = upoly::ext_gcd(f, upoly::mod(f, q0, h), h);
    if (gcd.size() != 1) return std::nullopt;
    const auto inv = upoly::mod(f, s, h);
    std::vector<upoly::Coeffs<PrimeField>> g;
    for (const auto& qi : p.q) g.push_back(upoly::mul_mod(f, conv(qi), inv, h));
    return std::make_pair(std::move(h), std::move(g));
  } catch (const BadPrime&) {
    return std::nullopt;
  }
}

// [chi, G_i chi' mod chi] padded to deg chi.
std::vector<std::uint32_t> flatten(const PrimeField& f, const upoly::Coeffs<PrimeField>& chi,
                                   const std::vector<upoly::Coeffs<PrimeField>>& G) {
  zd::ShapeImage<PrimeField> img;
  img.h = upoly::make_monic(f, chi);
  img.g = G;
  return flatten(f, img);
}

enum class ModStep { kOk, kBadPrime, kNotSeparating };

// Multimodular reconstruction of a parametrization of k coordinates. `step`
// fills the flattened image mod p and its degree. Nothing when the linear
// form keeps failing to separate.
template <class Step>
std::optional<RationalParametrization> reconstruct_par(int k, Step&& step, int max_primes = 400) {
  Crt crt;
  std::optional<std::vector<Rational>> previous;
  int best = -1, failures = 0, used = 0;
  std::uint32_t p = 2147483648u;
  for (int tries = 0; tries < max_primes; ++tries) {
    p = previous_prime(p);
    const PrimeField f(p);
    std::vector<std::uint32_t> flat;
    int d = 0;
    const ModStep st = step(f, flat, d);
    if (st == ModStep::kBadPrime) continue;
    if (st == ModStep::kNotSeparating) {
      if (++failures >= (used == 0 ? 2 : 4)) return std::nullopt;
      continue;
    }
    if (d < best) continue;
    if (d > best) {
      crt.reset();
      previous.reset();
      best = d;
      used = 0;
    }
    crt.add(flat, p);
    ++used;
    auto rec = crt.reconstruct();
    if (rec && previous && *rec == *previous) {
      auto out = unflatten(*rec, d, k);
      if (d == 0 || is_squarefree(out.qlast)) return out;
    }
    previous = std::move(rec);
  }
  throw SeparationFailure("parametrization: rational reconstruction did not stabilize");
}

using ZPoly = std::vector<Integer>;

void ztrim(ZPoly& a) {
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly out(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  ztrim(out);
  return out;
}

void zaxpy(ZPoly& acc, const ZPoly& a, bool negate) {
  if (acc.size() < a.size()) acc.resize(a.size(), Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (negate) acc[i] -= a[i];
    else acc[i] += a[i];
  }
  ztrim(acc);
}

void divide_content(ZPoly& a) {
  Integer g = 0;
  for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g > 1)
    for (auto& c : a) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

// Whether h divides a in Q[t], by pseudo-division with content removal.
bool divisible(ZPoly a, const ZPoly& h) {
  const std::size_t dh = h.size() - 1;
  const Integer& lc = h.back();
  divide_content(a);
  while (!a.empty() && a.size() - 1 >= dh) {
    const Integer top = a.back();
    const std::size_t shift = a.size() - 1 - dh;
    for (auto& c : a) c *= lc;
    for (std::size_t i = 0; i <= dh; ++i) mpz_submul(a[i + shift].get_mpz_t(), top.get_mpz_t(), h[i].get_mpz_t());
    ztrim(a);
    divide_content(a);
  }
  return a.empty();
}

// Every k-minor of an integer polynomial matrix is divisible by h.
bool all_minors_divisible(const std::vector<std::vector<ZPoly>>& a, int k, const ZPoly& h) {
  const int m = static_cast<int>(a.size());
  std::vector<int> rows(k);
  for (int i = 0; i < k; ++i) rows[i] = i;
  while (true) {
    std::map<std::uint32_t, ZPoly> level{{0u, ZPoly{Integer(1)}}};
    for (int j = 1; j <= k; ++j) {
      std::map<std::uint32_t, ZPoly> next;
      for (const auto& [mask, det] : level) {
        if (det.empty()) continue;
        for (int c = 0; c < m; ++c) {
          if (mask & (1u << c)) continue;
          const ZPoly& e = a[rows[j - 1]][c];
          if (e.empty()) continue;
          zaxpy(next[mask | (1u << c)], zmul(e, det), __builtin_popcount(mask >> c) % 2 != 0);
        }
      }
      level = std::move(next);
    }
    for (const auto& [mask, det] : level)
      if (!divisible(det, h)) return false;
    int i = k - 1;
    while (i >= 0 && rows[i] == m - k + i) --i;
    if (i < 0) break;
    ++rows[i];
    for (int t = i + 1; t < k; ++t) rows[t] = rows[t - 1] + 1;
  }
  return true;
}

}  // namespace

RationalParametrization RationalParametrization::empty(int n) {
  RationalParametrization p;
  p.n = n;
  p.q.assign(n, UniPoly());
  return p;
}

RationalParametrization RationalParametrization::from_shape(const UniPoly& h, const std::vector<UniPoly>& g) {
  const int n = static_cast<int>(g.size());
  if (h.is_zero()) throw std::invalid_argument("from_shape: h is zero");
  if (h.degree() == 0) return empty(n);
  RationalParametrization p;
  p.n = n;
  p.qlast = h.monic();
  p.q0 = p.qlast.derivative();
  for (const auto& gi : g) p.q.push_back((pad_mod(gi, p.qlast) * p.q0) % p.qlast);
  return p;
}

std::vector<UniPoly> RationalParametrization::coordinates() const {
  if (is_empty()) return std::vector<UniPoly>(n);
  const UniPoly inv = inverse_mod(q0, qlast);
  std::vector<UniPoly> out;
  out.reserve(q.size());
  for (const auto& qi : q) out.push_back((qi * inv) % qlast);
  return out;
}

void RationalParametrization::validate() const {
  if (static_cast<int>(q.size()) != n) throw std::invalid_argument("parametrization: wrong number of coordinates");
  if (qlast.is_zero()) throw std::invalid_argument("parametrization: qlast is zero");
  if (is_empty()) {
    if (qlast != UniPoly::constant(1) || q0 != UniPoly::constant(1))
      throw std::invalid_argument("parametrization: empty set must be q = 1");
    for (const auto& qi : q)
      if (!qi.is_zero()) throw std::invalid_argument("parametrization: empty set must be q = 1");
    return;
  }
  if (qlast.leading() != 1) throw std::invalid_argument("parametrization: qlast not monic");
  if (!is_squarefree(qlast)) throw std::invalid_argument("parametrization: qlast not squarefree");
  if (univariate_gcd(q0, qlast).degree() != 0) throw std::invalid_argument("parametrization: q0 and qlast not coprime");
  for (const auto& qi : q)
    if (qi.degree() >= qlast.degree()) throw std::invalid_argument("parametrization: coordinate not reduced");
}

nlohmann::json to_json(const RationalParametrization& p) {
  auto coeffs = [](const UniPoly& u) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& c : u.coeffs()) a.push_back(to_string(c));
    return a;
  };
  nlohmann::json q = nlohmann::json::array();
  for (const auto& qi : p.q) q.push_back(coeffs(qi));
  return {{"n", p.n}, {"q0", coeffs(p.q0)}, {"q", q}, {"qlast", coeffs(p.qlast)}};
}

RationalParametrization parametrization_from_json(const nlohmann::json& j) {
  auto poly = [](const nlohmann::json& a) {
    std::vector<Rational> c;
    for (const auto& s : a) c.push_back(parse_rational(s.get<std::string>()));
    return UniPoly(std::move(c));
  };
  RationalParametrization p;
  p.n = j.at("n").get<int>();
  p.q0 = poly(j.at("q0"));
  p.qlast = poly(j.at("qlast"));
  for (const auto& qi : j.at("q")) p.q.push_back(poly(qi));
  p.validate();
  return p;
}

RationalParametrization rat_par(const PolySystem& gens, std::span<const int> keep, Rng& rng,
                                const RatParOptions& opt, RatParInfo* info) {
  if (gens.empty()) throw NotZeroDimensional("rat_par: no equations");
  const Universe u = gens.front().universe();
  const int nvars = static_cast<int>(u->size());
  const int k = static_cast<int>(keep.size());
  {
    std::vector<int> sorted(keep.begin(), keep.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || (!sorted.empty() && (sorted.front() < 0 || sorted.back() >= nvars)))
      throw std::invalid_argument("rat_par: bad variable subset");
  }

  PolySystem work = gens;
  std::vector<int> wkeep(keep.begin(), keep.end());
  int elim = 0;
  auto switch_to_elimination = [&]() {
    if (elim != 0 || !opt.allow_elimination || k == nvars) return false;
    std::vector<int> map(nvars, -1);
    std::vector<std::string> names;
    int next = 0;
    for (int v = 0; v < nvars; ++v)
      if (std::find(keep.begin(), keep.end(), v) == keep.end()) {
        map[v] = next++;
        names.push_back((*u)[v]);
      }
    elim = next;
    wkeep.clear();
    for (int v : keep) {
      map[v] = next;
      wkeep.push_back(next++);
      names.push_back((*u)[v]);
    }
    const Universe nu = make_universe(std::move(names));
    work.clear();
    for (const auto& g : gens) work.push_back(g.rename(nu, map));
    return true;
  };
  auto fill_info = [&](const std::vector<long>& lam, int primes, int qdim, bool rad) {
    if (!info) return;
    info->lambda.clear();
    for (long l : lam) info->lambda.emplace_back(l);
    info->primes = primes;
    info->quotient_dim = qdim;
    info->radicalized = rad;
    info->eliminated = elim != 0;
  };

  for (int attempt = 0; attempt < opt.lambda_attempts; ++attempt) {
    const auto lam = draw_lambda(rng, k, opt.lambda_bound);

    if (!opt.modular) {
      zd::ShapeImage<RationalField> img;
      while (true) {
        try {
          img = field_image(kQ, work, nvars, wkeep, lam, opt, elim);
          break;
        } catch (const NotZeroDimensional&) {
          if (!switch_to_elimination()) throw;
        }
      }
      if (img.status == zd::ShapeStatus::kNotSeparating) continue;
      std::vector<UniPoly> g;
      for (const auto& gi : img.g) g.push_back(UniPoly(gi));
      fill_info(lam, 0, img.quotient_dim, img.radicalized);
      return RationalParametrization::from_shape(UniPoly(img.h), g);
    }

    Crt crt;
    int best_deg = -1, used = 0, not_zero_dim = 0, not_separating = 0, last_qdim = 0;
    bool last_rad = false;
    std::optional<std::vector<Rational>> previous;
    std::uint32_t p = 2147483648u;
    bool next_lambda = false;
    for (int tries = 0; tries < opt.max_primes && !next_lambda; ++tries) {
      p = previous_prime(p);
      const PrimeField f(p);
      zd::ShapeImage<PrimeField> img;
      try {
        img = field_image(f, work, nvars, wkeep, lam, opt, elim);
      } catch (const BadPrime&) {
        continue;
      } catch (const NotZeroDimensional&) {
        if (switch_to_elimination()) {
          crt.reset();
          previous.reset();
          best_deg = -1;
          used = 0;
          continue;
        }
        if (++not_zero_dim >= 2) throw;
        continue;
      }
      if (img.status == zd::ShapeStatus::kNotSeparating) {
        if (++not_separating >= (used == 0 ? 2 : 4)) next_lambda = true;
        continue;
      }
      const int d = upoly::degree<PrimeField>(img.h);
      if (d < best_deg) continue;
      if (d > best_deg) {
        crt.reset();
        previous.reset();
        best_deg = d;
        used = 0;
      }
      crt.add(flatten(f, img), p);
      ++used;
      last_qdim = img.quotient_dim;
      last_rad = img.radicalized;
      auto rec = crt.reconstruct();
      if (rec && previous && *rec == *previous) {
        auto out = unflatten(*rec, d, k);
        if (d == 0 || is_squarefree(out.qlast)) {
          fill_info(lam, used, last_qdim, last_rad);
          return out;
        }
      }
      previous = std::move(rec);
    }
    if (!next_lambda) throw SeparationFailure("rat_par: rational reconstruction did not stabilize");
  }
  throw SeparationFailure("rat_par: no separating linear form found");
}

RationalParametrization rat_par(const Ideal& ideal, Rng& rng, const RatParOptions& options, RatParInfo* info) {
  std::vector<int> keep(ideal.nvars());
  for (int i = 0; i < ideal.nvars(); ++i) keep[i] = i;
  if (ideal.generators().empty()) throw NotZeroDimensional("rat_par: no equations");
  return rat_par(ideal.generators(), keep, rng, options, info);
}

RationalParametrization project(const RationalParametrization& p, std::span<const int> keep, Rng& rng, int bound,
                                int attempts) {
  for (int v : keep)
    if (v < 0 || v >= p.n) throw std::invalid_argument("project: coordinate out of range");
  const int k = static_cast<int>(keep.size());
  if (p.is_empty()) return RationalParametrization::empty(k);
  if (k == 0) return RationalParametrization::from_shape(UniPoly::t(), {});
  for (int a = 0; a < attempts; ++a) {
    const auto lam = draw_lambda(rng, k, bound);
    auto out = reconstruct_par(k, [&](const PrimeField& f, std::vector<std::uint32_t>& flat, int& d) {
      const auto red = reduce_mod(f, p);
      if (!red) return ModStep::kBadPrime;
      const auto rp = reparametrize(f, red->first, red->second, keep, lam);
      if (!rp) return ModStep::kNotSeparating;
      d = upoly::degree<PrimeField>(rp->chi);
      flat = flatten(f, rp->chi, rp->G);
      return ModStep::kOk;
    });
    if (out) return *out;
  }
  throw SeparationFailure("project: no separating linear form found");
}

RationalParametrization lift(const RationalParametrization& p, const Rational& t0) {
  if (p.is_empty()) return RationalParametrization::empty(p.n + 1);
  RationalParametrization out = p;
  out.n = p.n + 1;
  out.q.insert(out.q.begin(), pad_mod(t0 * p.q0, p.qlast));
  return out;
}

RationalParametrization image(const RationalParametrization& p, const RationalMatrix& M) {
  if (M.rows() != p.n || M.cols() != p.n) throw std::invalid_argument("image: matrix size differs from n");
  const auto inv = M.inverse();
  if (!inv) throw std::invalid_argument("image: singular matrix");
  if (p.is_empty()) return p;
  RationalParametrization out = p;
  for (int i = 0; i < p.n; ++i) {
    UniPoly s;
    for (int j = 0; j < p.n; ++j)
      if (sgn((*inv)(i, j)) != 0) s = s + (*inv)(i, j) * p.q[j];
    out.q[i] = s;
  }
  return out;
}

RationalParametrization unite(const RationalParametrization& a, const RationalParametrization& b, Rng& rng, int bound,
                              int attempts) {
  if (a.n != b.n) throw std::invalid_argument("unite: different numbers of coordinates");
  if (a.is_empty()) return b;
  if (b.is_empty()) return a;
  const int n = a.n;
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  using C = upoly::Coeffs<PrimeField>;
  for (int att = 0; att < attempts; ++att) {
    const auto lam = draw_lambda(rng, n, bound);
    auto out = reconstruct_par(n, [&](const PrimeField& f, std::vector<std::uint32_t>& flat, int& d) {
      const auto ma = reduce_mod(f, a);
      const auto mb = reduce_mod(f, b);
      if (!ma || !mb) return ModStep::kBadPrime;
      const auto ra = reparametrize(f, ma->first, ma->second, all, lam);
      const auto rb = reparametrize(f, mb->first, mb->second, all, lam);
      if (!ra || !rb) return ModStep::kNotSeparating;
      const C common = upoly::gcd(f, ra->chi, rb->chi);
      if (upoly::degree<PrimeField>(common) > 0)
        for (int i = 0; i < n; ++i)
          if (!upoly::mod(f, upoly::sub(f, ra->G[i], rb->G[i]), common).empty()) return ModStep::kNotSeparating;
      const C c2 = upoly::divmod(f, rb->chi, common).first;
      if (upoly::degree<PrimeField>(c2) == 0) {
        d = upoly::degree<PrimeField>(ra->chi);
        flat = flatten(f, ra->chi, ra->G);
        return ModStep::kOk;
      }
      const C inv = upoly::inverse_mod(f, upoly::mod(f, ra->chi, c2), c2);
      std::vector<C> G;
      for (int i = 0; i < n; ++i) {
        const C corr = upoly::mul_mod(f, upoly::sub(f, rb->G[i], ra->G[i]), inv, c2);
        G.push_back(upoly::add(f, ra->G[i], upoly::mul(f, ra->chi, corr)));
      }
      const C chi = upoly::mul(f, ra->chi, c2);
      d = upoly::degree<PrimeField>(chi);
      flat = flatten(f, chi, G);
      return ModStep::kOk;
    });
    if (out) return *out;
  }
  throw SeparationFailure("unite: no separating linear form found");
}

UniPoly evaluate_mod(const MultiPoly& f, const RationalParametrization& p) {
  if (f.nvars() != p.n) throw std::invalid_argument("evaluate_mod: variable count differs");
  if (p.is_empty()) return UniPoly();
  const auto g = p.coordinates();
  const UniPoly& h = p.qlast;
  std::vector<std::vector<UniPoly>> powers(p.n, std::vector<UniPoly>{UniPoly::constant(1)});
  auto power = [&](int var, int e) -> const UniPoly& {
    auto& pw = powers[var];
    while (static_cast<int>(pw.size()) <= e) pw.push_back((pw.back() * g[var]) % h);
    return pw[e];
  };
  UniPoly acc;
  for (const auto& t : f.terms()) {
    UniPoly term = UniPoly::constant(t.coef);
    for (int v = 0; v < p.n; ++v) {
      const int e = t.mono.exponent(v);
      if (e) term = (term * power(v, e)) % h;
    }
    acc = acc + term;
  }
  return acc % h;
}

bool vanishes_on(const PolySystem& polys, const RationalParametrization& p) {
  for (const auto& f : polys)
    if (!evaluate_mod(f, p).is_zero()) return false;
  return true;
}

bool minors_vanish(const LinearMatrix& a, int r, const RationalParametrization& p) {
  if (p.n != a.n) throw std::invalid_argument("minors_vanish: variable count differs");
  if (r + 1 > a.m) return true;
  if (p.is_empty()) return true;
  // q0 is a unit mod qlast, so the minors of q0 A(q / q0) = q0 A0 + sum q_k A_k decide.
  // Entries are scaled by one common denominator, which only scales the minors.
  std::vector<std::vector<UniPoly>> entries(a.m, std::vector<UniPoly>(a.m));
  Integer den = 1;
  for (int i = 0; i < a.m; ++i)
    for (int j = 0; j < a.m; ++j) {
      UniPoly e = a.mats[0](i, j) * p.q0;
      for (int k = 0; k < a.n; ++k)
        if (sgn(a.mats[k + 1](i, j)) != 0) e = e + a.mats[k + 1](i, j) * p.q[k];
      for (const auto& c : e.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
      entries[i][j] = std::move(e);
    }
  auto to_z = [](const UniPoly& e, const Integer& scale) {
    ZPoly out;
    for (const auto& c : e.coeffs()) {
      Integer v = c.get_num() * (scale / c.get_den());
      out.push_back(std::move(v));
    }
    return out;
  };
  std::vector<std::vector<ZPoly>> z(a.m, std::vector<ZPoly>(a.m));
  for (int i = 0; i < a.m; ++i)
    for (int j = 0; j < a.m; ++j) z[i][j] = to_z(entries[i][j], den);
  Integer hden = 1;
  for (const auto& c : p.qlast.coeffs()) mpz_lcm(hden.get_mpz_t(), hden.get_mpz_t(), c.get_den_mpz_t());
  ZPoly h = to_z(p.qlast, hden);
  divide_content(h);
  return all_minors_divisible(z, r + 1, h);
}

ShapeBasis shape_position_basis(const Ideal& ideal, std::span<const int> vars, Rng& rng,
                                std::span<const Rational> lambda, int attempts) {
  RatParOptions opt;
  opt.modular = false;
  opt.allow_elimination = false;
  const auto& basis = ideal.basis();
  if (basis.size() == 1 && basis[0].is_constant()) {
    ShapeBasis out;
    out.vars.assign(vars.begin(), vars.end());
    out.h = UniPoly::constant(1);
    out.coords.assign(vars.size(), UniPoly());
    return out;
  }
  const int nvars = ideal.nvars();
  for (int a = 0; a < attempts; ++a) {
    std::vector<long> lam;
    if (!lambda.empty()) {
      if (lambda.size() != vars.size()) throw std::invalid_argument("shape_position_basis: lambda size");
      for (const auto& c : lambda) {
        if (c.get_den() != 1 || !c.get_num().fits_slong_p())
          throw std::invalid_argument("shape_position_basis: lambda must have small integer entries");
        lam.push_back(c.get_num().get_si());
      }
    } else {
      lam = draw_lambda(rng, vars.size(), 99);
    }
    auto img = field_image(kQ, basis, nvars, vars, lam, opt, 0);
    if (img.status == zd::ShapeStatus::kOk) {
      ShapeBasis out;
      for (long l : lam) out.lambda.emplace_back(l);
      out.vars.assign(vars.begin(), vars.end());
      out.h = UniPoly(img.h);
      for (const auto& g : img.g) out.coords.push_back(UniPoly(g));
      return out;
    }
    if (!lambda.empty()) break;
  }
  throw SeparationFailure("shape_position_basis: no separating linear form found");
}

}  // namespace lowrank
