#include "cyclex/rational.hpp"

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <sstream>

#include "cyclex/errors.hpp"

namespace cyclex {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer pow10(size_t k) {
  Integer r = 1;
  for (size_t i = 0; i < k; ++i) r *= 10;
  return r;
}

}  // namespace

Rational make_rational(long long num, long long den) {
  if (den == 0) throw DomainError("make_rational: zero denominator");
  return Rational(num) / Rational(den);
}

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw ParseError("empty rational literal");

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw ParseError("bare sign is not a rational: '" + std::string(text) + "'");

  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw ParseError("malformed fraction: '" + std::string(text) + "'");
    }
    Integer d{std::string(den)};
    if (d == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
    value = Rational(Integer{std::string(num)}) / Rational(d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw ParseError("malformed decimal: '" + std::string(text) + "'");
    }
    Integer scaled = whole.empty() ? Integer(0) : Integer{std::string(whole)};
    scaled *= pow10(frac.size());
    if (!frac.empty()) scaled += Integer{std::string(frac)};
    value = Rational(scaled) / Rational(pow10(frac.size()));
  } else {
    if (!all_digits(s)) throw ParseError("malformed rational: '" + std::string(text) + "'");
    value = Rational(Integer{std::string(s)});
  }
  return negative ? Rational(-value) : value;
}

std::string fraction_string(const Rational& value) {
  return numerator(value).str() + "/" + denominator(value).str();
}

std::string decimal_string(const Rational& value, int digits) {
  boost::multiprecision::mpf_float_100 wide(value);
  std::ostringstream out;
  out.precision(digits);
  out << wide;
  return out.str();
}

}  // namespace cyclex
