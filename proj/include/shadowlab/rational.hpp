#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "shadowlab/errors.hpp"

namespace shadowlab {

using Rational = mpq_class;

namespace detail {

inline bool canonical_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return s.size() == 1 || s.front() != '0';
}

}  // namespace detail

/// Parses "p/q" or an integer literal. Only canonical forms are accepted:
/// no sign on the denominator, no leading zeros, gcd(p,q) = 1, q > 1.
inline Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && s.front() == '-') {
    negative = true;
    s.remove_prefix(1);
  }
  auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : s.substr(slash + 1);
  if (!detail::canonical_digits(num))
    throw InputError("invalid rational literal '" + std::string(text) + "'");
  if (slash != std::string_view::npos && !detail::canonical_digits(den))
    throw InputError("invalid rational denominator in '" + std::string(text) + "'");
  if (negative && num == "0")
    throw InputError("non-canonical rational '" + std::string(text) + "'");

  Rational q;
  if (slash == std::string_view::npos) {
    q = Rational(mpz_class(std::string(num)));
  } else {
    mpz_class p{std::string(num)};
    mpz_class d{std::string(den)};
    if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    q = Rational(p, d);
    q.canonicalize();
    if (q.get_den() != d || d == 1 || p == 0)
      throw InputError("non-canonical rational '" + std::string(text) + "'");
  }
  if (negative) q = -q;
  return q;
}

/// num/den in lowest terms; the two-argument mpq constructor does not reduce.
inline Rational ratio(long num, long den) {
  if (den == 0) throw InputError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Decimal rendering rounded half-up at `places` digits, for plots and logs.
inline std::string to_decimal(const Rational& q, unsigned places = 6) {
  mpz_class scale = 1;
  for (unsigned i = 0; i < places; ++i) scale *= 10;
  const Rational mag = (q < 0 ? Rational(-q) : q) * scale + Rational(1, 2);
  mpz_class n;
  mpz_fdiv_q(n.get_mpz_t(), mag.get_num_mpz_t(), mag.get_den_mpz_t());
  std::string digits = n.get_str();
  if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
  std::string out = (q < 0 && n != 0 ? "-" : "") + digits.substr(0, digits.size() - places);
  if (places) out += "." + digits.substr(digits.size() - places);
  return out;
}

inline Rational abs_value(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace shadowlab
