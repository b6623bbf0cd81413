#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace prelie {

/// Exact rational scalar over Q. Always kept in lowest terms with a
/// positive denominator (cpp_rational canonicalizes on construction).
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline Rational rational_div(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::domain_error("rational division by zero");
  return a / b;
}

/// Canonical "p/q" form, q > 0, lowest terms. Integers print as "p/1".
inline std::string rational_str(const Rational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

/// Accepts "p" or "p/q" with optional sign; rejects q = 0.
inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(Integer(s));
  Integer p(s.substr(0, slash));
  Integer q(s.substr(slash + 1));
  if (q.is_zero()) throw std::domain_error("rational with zero denominator: " + s);
  return Rational(p, q);
}

inline Rational factorial(int n) {
  Integer f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return Rational(f);
}

}  // namespace prelie
