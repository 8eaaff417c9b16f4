#pragma once

// Exact rationals backed by GMP. Every coordinate, time and tolerance in the
// library is a Rational; there is no floating-point path in the core.

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>

#include "cdyn/errors.hpp"

namespace cdyn {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q" or "p" (optionally signed). Throws Error(Parse) on bad input
/// or a zero denominator. The result is canonical.
inline Rational parse_rational(std::string_view text) {
  auto bad = [&](const char* why) {
    return Error(ErrorKind::Parse, std::string(why) + ": '" + std::string(text) + "'");
  };
  if (text.empty()) throw bad("empty rational");
  auto slash = text.find('/');
  auto digits_ok = [](std::string_view s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  std::string num(text.substr(0, slash));
  std::string den = slash == std::string_view::npos ? "1" : std::string(text.substr(slash + 1));
  if (!digits_ok(num, true) || !digits_ok(den, false)) throw bad("malformed rational");
  if (num[0] == '+') num.erase(0, 1);
  Integer n(num, 10), d(den, 10);
  if (d == 0) throw bad("zero denominator");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

/// num/den in lowest terms; the raw mpq constructor does not reduce.
inline Rational ratio(const Integer& num, const Integer& den) {
  if (den == 0) throw Error(ErrorKind::DegenerateInput, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Integer floor_int(const Rational& r) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

inline Integer ceil_int(const Rational& r) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

/// Fractional part in [0, 1).
inline Rational frac(const Rational& r) { return r - Rational(floor_int(r)); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline double to_double(const Rational& r) { return r.get_d(); }

/// Six-place decimal approximation, used only in human-facing reports.
inline std::string to_decimal(const Rational& r, int places = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(places) << r.get_d();
  return os.str();
}

/// Bit size of numerator plus denominator; the orbit precision budget counts this.
inline std::size_t bit_size(const Rational& r) {
  return mpz_sizeinbase(r.get_num_mpz_t(), 2) + mpz_sizeinbase(r.get_den_mpz_t(), 2);
}

struct RationalHash {
  std::size_t operator()(const Rational& r) const {
    return std::hash<std::string>{}(to_string(r));
  }
};

}  // namespace cdyn
