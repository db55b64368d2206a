#include "lowrank/multipoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "lowrank/matrix.hpp"

namespace lowrank {

Universe make_universe(std::vector<std::string> names) {
  if (static_cast<int>(names.size()) > Monomial::kMaxVars) throw std::length_error("universe exceeds Monomial::kMaxVars");
  return std::make_shared<const std::vector<std::string>>(std::move(names));
}

bool same_universe(const Universe& a, const Universe& b) {
  if (a == b) return true;
  if (!a || !b) return (!a || a->empty()) && (!b || b->empty());
  return *a == *b;
}

namespace {

bool term_greater(const MultiPoly::Term& a, const MultiPoly::Term& b) { return grevlex_compare(a.mono, b.mono) > 0; }

}  // namespace

MultiPoly MultiPoly::constant(Universe universe, const Rational& c) {
  MultiPoly p(std::move(universe));
  if (sgn(c) != 0) p.terms_.push_back({Monomial(), c});
  return p;
}

MultiPoly MultiPoly::variable(Universe universe, int index) {
  if (index < 0 || index >= static_cast<int>(universe->size())) throw std::out_of_range("variable index");
  MultiPoly p(std::move(universe));
  p.terms_.push_back({Monomial::variable(index), Rational(1)});
  return p;
}

MultiPoly MultiPoly::variable(Universe universe, std::string_view name) {
  const auto it = std::find(universe->begin(), universe->end(), name);
  if (it == universe->end()) throw std::invalid_argument("unknown variable '" + std::string(name) + "'");
  return variable(universe, static_cast<int>(it - universe->begin()));
}

MultiPoly MultiPoly::from_terms(Universe universe, std::vector<Term> terms) {
  MultiPoly p(std::move(universe));
  std::sort(terms.begin(), terms.end(), term_greater);
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coef += t.coef;
    } else {
      if (!p.terms_.empty() && sgn(p.terms_.back().coef) == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && sgn(p.terms_.back().coef) == 0) p.terms_.pop_back();
  return p;
}

Rational MultiPoly::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coef;
  return 0;
}

int MultiPoly::total_degree() const { return terms_.empty() ? -1 : terms_.front().mono.degree(); }

int MultiPoly::degree_in(std::span<const int> block) const {
  int best = terms_.empty() ? -1 : 0;
  for (const auto& t : terms_) {
    int d = 0;
    for (int v : block) d += t.mono.exponent(v);
    best = std::max(best, d);
  }
  return best;
}

int MultiPoly::degree_in(int var) const {
  const int block[1] = {var};
  return degree_in(block);
}

Rational MultiPoly::eval(std::span<const Rational> point) const {
  if (static_cast<int>(point.size()) != nvars()) throw std::invalid_argument("eval: point length differs from universe");
  Rational acc = 0;
  for (const auto& t : terms_) {
    Rational v = t.coef;
    for (int i = 0; i < nvars(); ++i) {
      const int e = t.mono.exponent(i);
      for (int k = 0; k < e; ++k) v *= point[i];
    }
    acc += v;
  }
  return acc;
}

MultiPoly MultiPoly::derivative(int var) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    const int e = t.mono.exponent(var);
    if (e == 0) continue;
    Monomial m = t.mono;
    m.set_exponent(var, e - 1);
    out.push_back({m, t.coef * e});
  }
  // Differentiation can reorder grevlex-equal-degree terms, so re-sort.
  return from_terms(universe_, std::move(out));
}

MultiPoly MultiPoly::compose(std::span<const MultiPoly> images, const Universe& target) const {
  if (static_cast<int>(images.size()) != nvars()) throw std::invalid_argument("compose: wrong number of images");
  for (const auto& img : images)
    if (!same_universe(img.universe(), target)) throw std::invalid_argument("compose: image universe mismatch");
  // Cache powers of each image.
  std::vector<std::vector<MultiPoly>> powers(nvars());
  auto power = [&](int var, int e) -> const MultiPoly& {
    auto& list = powers[var];
    if (list.empty()) list.push_back(MultiPoly::constant(target, 1));
    while (static_cast<int>(list.size()) <= e) list.push_back(list.back() * images[var]);
    return list[e];
  };
  std::vector<Term> acc;
  for (const auto& t : terms_) {
    MultiPoly prod = MultiPoly::constant(target, t.coef);
    for (int i = 0; i < nvars() && !prod.is_zero(); ++i) {
      const int e = t.mono.exponent(i);
      if (e > 0) prod = prod * power(i, e);
    }
    for (auto& pt : prod.terms_) acc.push_back(std::move(pt));
  }
  return from_terms(target, std::move(acc));
}

MultiPoly MultiPoly::rename(const Universe& target, std::span<const int> map) const {
  if (static_cast<int>(map.size()) != nvars()) throw std::invalid_argument("rename: map size");
  std::vector<Term> out;
  out.reserve(terms_.size());
  std::vector<int> exps(target->size());
  for (const auto& t : terms_) {
    std::fill(exps.begin(), exps.end(), 0);
    for (int i = 0; i < nvars(); ++i) {
      const int e = t.mono.exponent(i);
      if (e == 0) continue;
      if (map[i] < 0) throw std::invalid_argument("rename: variable dropped while still present");
      exps[map[i]] += e;
    }
    out.push_back({Monomial::from_exponents(exps), t.coef});
  }
  return from_terms(target, std::move(out));
}

void MultiPoly::check_universe(const MultiPoly& other) const {
  if (!same_universe(universe_, other.universe_)) throw std::invalid_argument("polynomials over different universes");
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly p = *this;
  for (auto& t : p.terms_) t.coef = -t.coef;
  return p;
}

namespace {

template <bool Subtract>
std::vector<MultiPoly::Term> merge(const std::vector<MultiPoly::Term>& a, const std::vector<MultiPoly::Term>& b) {
  std::vector<MultiPoly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c;
    if (i == a.size()) c = -1;
    else if (j == b.size()) c = 1;
    else c = grevlex_compare(a[i].mono, b[j].mono);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(Subtract ? MultiPoly::Term{b[j].mono, Rational(-b[j].coef)} : b[j]);
      ++j;
    } else {
      Rational s = Subtract ? Rational(a[i].coef - b[j].coef) : Rational(a[i].coef + b[j].coef);
      if (sgn(s) != 0) out.push_back({a[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  if (!universe_) universe_ = other.universe_;
  check_universe(other);
  terms_ = merge<false>(terms_, other.terms_);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
  if (!universe_) universe_ = other.universe_;
  check_universe(other);
  terms_ = merge<true>(terms_, other.terms_);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.coef *= c;
  }
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_universe(b);
  if (a.is_zero() || b.is_zero()) return MultiPoly(a.universe_);
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  acc.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) acc[s.mono * t.mono] += s.coef * t.coef;
  std::vector<MultiPoly::Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (sgn(c) != 0) terms.push_back({m, std::move(c)});
  std::sort(terms.begin(), terms.end(), term_greater);
  MultiPoly p(a.universe_);
  p.terms_ = std::move(terms);
  return p;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (!same_universe(a.universe_, b.universe_)) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coef != b.terms_[i].coef) return false;
  }
  return true;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coef;
    if (first) {
      if (sgn(c) < 0) {
        out << "-";
        c = -c;
      }
    } else {
      out << (sgn(c) < 0 ? " - " : " + ");
      if (sgn(c) < 0) c = -c;
    }
    first = false;
    bool wrote = false;
    if (c != 1 || t.mono.is_one()) {
      out << lowrank::to_string(c);
      wrote = true;
    }
    for (int i = 0; i < nvars(); ++i) {
      const int e = t.mono.exponent(i);
      if (e == 0) continue;
      if (wrote) out << "*";
      out << (*universe_)[i];
      if (e > 1) out << "^" << e;
      wrote = true;
    }
  }
  return out.str();
}

namespace {

class Parser {
 public:
  Parser(Universe u, std::string_view s) : u_(std::move(u)), s_(s) {}

  MultiPoly parse() {
    MultiPoly p = sum();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("polynomial parse error at " + std::to_string(pos_) + ": " + what + " in '" +
                                std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MultiPoly sum() {
    MultiPoly acc = MultiPoly::constant(u_, 0);
    bool negate = false;
    if (accept('-')) negate = true;
    else accept('+');
    MultiPoly t = product();
    acc += negate ? -t : t;
    while (true) {
      if (accept('+')) acc += product();
      else if (accept('-')) acc -= product();
      else break;
    }
    return acc;
  }

  MultiPoly product() {
    MultiPoly acc = power();
    while (true) {
      skip();
      // '/' directly after a number is consumed by number(); here it means division by a constant.
      if (accept('*')) {
        acc = acc * power();
      } else if (accept('/')) {
        MultiPoly d = power();
        if (!d.is_constant() || d.is_zero()) fail("division by a non-constant");
        acc *= Rational(1) / d.constant_term();
      } else {
        break;
      }
    }
    return acc;
  }

  MultiPoly power() {
    MultiPoly base = atom();
    if (accept('^')) {
      skip();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      const int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
      MultiPoly r = MultiPoly::constant(u_, 1);
      for (int i = 0; i < e; ++i) r = r * base;
      return r;
    }
    return base;
  }

  MultiPoly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly inner = sum();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == '-') {
      ++pos_;
      return -power();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return MultiPoly::constant(u_, parse_rational(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '.'))
        ++pos_;
      return MultiPoly::variable(u_, s_.substr(start, pos_ - start));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  Universe u_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly MultiPoly::parse(Universe universe, std::string_view text) { return Parser(std::move(universe), text).parse(); }

MultiPoly apply_linear_change(const MultiPoly& p, const RationalMatrix& m, std::span<const int> block) {
  if (!m.is_square() || m.rows() != static_cast<int>(block.size()))
    throw std::invalid_argument("apply_linear_change: matrix size must equal block size");
  if (!m.inverse()) throw std::invalid_argument("apply_linear_change: singular matrix");
  const Universe& u = p.universe();
  std::vector<MultiPoly> images;
  images.reserve(p.nvars());
  for (int i = 0; i < p.nvars(); ++i) images.push_back(MultiPoly::variable(u, i));
  for (std::size_t r = 0; r < block.size(); ++r) {
    MultiPoly row(u);
    for (std::size_t c = 0; c < block.size(); ++c) {
      const Rational& a = m(static_cast<int>(r), static_cast<int>(c));
      if (sgn(a) != 0) row += MultiPoly::variable(u, block[c]) * a;
    }
    images[block[r]] = std::move(row);
  }
  return p.compose(images, u);
}

}  // namespace lowrank
