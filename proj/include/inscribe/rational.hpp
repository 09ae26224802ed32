#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

#include "inscribe/errors.hpp"

namespace inscribe {

/// Exact rational number. GMP keeps it canonical (lowest terms, positive
/// denominator) after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

inline int sign(const Rational& r) { return sgn(r); }

/// Parses "p" or "p/q" with an optional leading '-' on the numerator.
/// Throws SchemaError on anything else, including a zero denominator.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&](const char* why) {
    throw SchemaError("invalid rational '" + std::string(text) + "': " + why);
  };
  if (text.empty()) fail("empty");
  std::size_t pos = 0;
  if (text[0] == '-') pos = 1;
  const std::size_t slash = text.find('/');
  const std::string_view num = text.substr(pos, slash == std::string_view::npos ? std::string_view::npos : slash - pos);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  auto all_digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
      if (c < '0' || c > '9') return false;
    }
    return true;
  };
  if (!all_digits(num)) fail("numerator is not a decimal integer");
  if (slash != std::string_view::npos && !all_digits(den)) fail("denominator is not a decimal integer");

  Integer n(std::string(num), 10);
  Integer d(1);
  if (slash != std::string_view::npos) d = Integer(std::string(den), 10);
  if (d == 0) fail("zero denominator");
  if (pos == 1) n = -n;
  Rational r(n, d);
  r.canonicalize();
  return r;
}

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) { return r.get_str(10); }

/// Fixed-point decimal with exactly `digits` fractional digits, rounded half
/// away from zero. Exact: no intermediate floating point.
inline std::string to_decimal(const Rational& r, int digits) {
  if (digits < 0) digits = 0;
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  const bool negative = sgn(r) < 0;
  Integer num = abs(r.get_num()) * scale * 2 + r.get_den();
  Integer den = r.get_den() * 2;
  Integer scaled;
  mpz_fdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());

  std::string body = scaled.get_str(10);
  if (digits > 0) {
    if (body.size() <= static_cast<std::size_t>(digits)) {
      body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    }
    body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  }
  const bool is_zero = scaled == 0;
  return (negative && !is_zero ? "-" : "") + body;
}

inline double to_double(const Rational& r) { return r.get_d(); }

/// Exact conversion of a finite double.
inline Rational from_double(double x) {
  Rational r(x);
  r.canonicalize();
  return r;
}

}  // namespace inscribe
