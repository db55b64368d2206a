#include "lowrank/unipoly.hpp"

#include <sstream>

#include "lowrank/upoly_ops.hpp"

namespace lowrank {

namespace {
const RationalField kQ{};
}

UniPoly::UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { upoly::trim(kQ, c_); }

UniPoly UniPoly::from_roots(std::span<const Rational> roots) {
  UniPoly p = constant(1);
  for (const auto& r : roots) p = p * UniPoly({-r, Rational(1)});
  return p;
}

Rational UniPoly::eval(const Rational& x) const { return upoly::eval(kQ, c_, x); }

UniPoly UniPoly::derivative() const { return UniPoly(upoly::derivative(kQ, c_)); }

UniPoly UniPoly::monic() const { return UniPoly(upoly::make_monic(kQ, c_)); }

UniPoly operator+(const UniPoly& a, const UniPoly& b) { return UniPoly(upoly::add(kQ, a.c_, b.c_)); }
UniPoly operator-(const UniPoly& a, const UniPoly& b) { return UniPoly(upoly::sub(kQ, a.c_, b.c_)); }
UniPoly operator*(const UniPoly& a, const UniPoly& b) { return UniPoly(upoly::mul(kQ, a.c_, b.c_)); }
UniPoly operator*(const Rational& c, const UniPoly& a) { return UniPoly(upoly::scale(kQ, a.c_, c)); }
UniPoly UniPoly::operator-() const { return Rational(-1) * *this; }

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& b) const {
  auto [q, r] = upoly::divmod(kQ, c_, b.c_);
  return {UniPoly(std::move(q)), UniPoly(std::move(r))};
}

UniPoly UniPoly::compose_mod(const UniPoly& inner, const UniPoly& m) const {
  return UniPoly(upoly::compose_mod(kQ, c_, inner.c_, m.c_));
}

std::string UniPoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    Rational c = c_[i];
    if (sgn(c) == 0) continue;
    if (!first) out << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) out << "-";
    if (sgn(c) < 0) c = -c;
    first = false;
    if (i == 0 || c != 1) {
      out << lowrank::to_string(c);
      if (i > 0) out << "*";
    }
    if (i > 0) out << var;
    if (i > 1) out << "^" << i;
  }
  return out.str();
}

namespace {

// A trivial gcd modulo a prime keeping both degrees certifies a trivial gcd over Q.
bool coprime_mod_p(const UniPoly& a, const UniPoly& b) {
  std::uint32_t p = 2147483648u;
  for (int tries = 0; tries < 3; ++tries) {
    p = previous_prime(p);
    const PrimeField f(p);
    try {
      upoly::Coeffs<PrimeField> ap, bp;
      for (const auto& c : a.coeffs()) ap.push_back(f.from_rational(c));
      for (const auto& c : b.coeffs()) bp.push_back(f.from_rational(c));
      upoly::trim(f, ap);
      upoly::trim(f, bp);
      if (upoly::degree<PrimeField>(ap) != a.degree() || upoly::degree<PrimeField>(bp) != b.degree()) continue;
      return upoly::gcd(f, std::move(ap), std::move(bp)).size() == 1;
    } catch (const BadPrime&) {
    }
  }
  return false;
}

}  // namespace

UniPoly univariate_gcd(const UniPoly& a, const UniPoly& b) {
  if (!a.is_zero() && !b.is_zero() && coprime_mod_p(a, b)) return UniPoly::constant(1);
  return UniPoly(upoly::gcd(kQ, a.coeffs(), b.coeffs()));
}

UniPoly squarefree_part(const UniPoly& a) { return UniPoly(upoly::squarefree_part(kQ, a.coeffs())); }

UniPoly derivative(const UniPoly& a) { return a.derivative(); }

UniPoly inverse_mod(const UniPoly& a, const UniPoly& m) { return UniPoly(upoly::inverse_mod(kQ, a.coeffs(), m.coeffs())); }

bool is_squarefree(const UniPoly& a) {
  if (a.degree() <= 0) return true;
  return univariate_gcd(a, a.derivative()).degree() == 0;
}

}  // namespace lowrank
