#include "nilrig/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace nilrig {

Rational Rational::parse(std::string_view s) {
  // Trim whitespace.
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  std::string t(s);
  if (!t.empty() && t.front() == '+') t.erase(t.begin());
  auto dot = t.find('.');
  if (dot != std::string::npos) {
    // Exact decimal: "-1.25" -> -125/100.
    std::string digits = t.substr(0, dot) + t.substr(dot + 1);
    size_t frac_len = t.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+")
      throw std::invalid_argument("bad decimal literal: " + t);
    Integer num(digits, 10);
    Integer den(1);
    for (size_t i = 0; i < frac_len; ++i) den *= 10;
    return Rational(num, den);
  }
  mpq_class q;
  if (q.set_str(t, 10) != 0) throw std::invalid_argument("bad rational literal: " + t);
  if (sgn(q.get_den()) == 0) throw std::invalid_argument("zero denominator: " + t);
  q.canonicalize();
  return Rational(q);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace nilrig
