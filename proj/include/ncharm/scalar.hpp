#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "ncharm/error.hpp"

namespace ncharm {

/// Exact rational coefficient. mpq_class keeps values in lowest terms with a
/// positive denominator as long as every constructor goes through
/// make_scalar/parse_scalar (which canonicalize).
using Scalar = mpq_class;

inline Scalar make_scalar(long num, long den = 1) {
  if (den == 0) throw Error("zero denominator");
  Scalar s(num, den);
  s.canonicalize();
  return s;
}

inline Scalar make_scalar(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw Error("zero denominator");
  Scalar s(num, den);
  s.canonicalize();
  return s;
}

/// Canonical "num/den" rendering; integers carry "/1".
inline std::string to_fraction_string(const Scalar& s) {
  return s.get_num().get_str() + "/" + s.get_den().get_str();
}

/// Accepts "n", "-n" or "n/d" with d > 0.
inline Scalar parse_scalar(std::string_view text) {
  auto valid_int = [](std::string_view t, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !t.empty() && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false))
    throw Error("malformed rational '" + std::string(text) + "'");
  std::string num_str(num);
  if (!num_str.empty() && num_str[0] == '+') num_str.erase(0, 1);
  return make_scalar(mpz_class(num_str), mpz_class(std::string(den)));
}

}  // namespace ncharm
