#include "lowrank/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace lowrank {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  num = trim(num);
  den = trim(den);
  if (!is_integer_literal(num) || !is_integer_literal(den)) {
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  }
  if (num[0] == '+') num.remove_prefix(1);
  if (den[0] == '+') den.remove_prefix(1);
  Integer n(std::string(num), 10);
  Integer d(std::string(den), 10);
  if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& value) { return value.get_str(); }

}  // namespace lowrank
