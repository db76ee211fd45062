#pragma once
// Scalar types used throughout the library.
//
// Every probability computation is templated on the scalar: `double` for
// fast floating evaluation, `Rational` for exact end-to-end arithmetic. The
// rational mode is the authority for identities (NFL conservation, the
// futility identity) whenever the algorithm rules emit rational distributions.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <concepts>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace algsearch {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

template <class T>
concept Scalar = std::same_as<T, double> || std::same_as<T, Rational>;

template <Scalar S>
inline constexpr bool is_exact_v = std::is_same_v<S, Rational>;

// Floating equality tolerance for probability identities.
inline constexpr double kTolerance = 1e-9;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }

template <Scalar S>
S ratio(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("ratio: zero denominator");
  if constexpr (is_exact_v<S>) {
    return Rational(num, den);
  } else {
    return static_cast<double>(num) / static_cast<double>(den);
  }
}

// Exact for Rational (every finite double is a dyadic rational).
template <Scalar S>
S from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("from_double: non-finite value");
  return S(x);
}

namespace detail {

inline Rational parse_decimal(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';
  BigInt mantissa = 0;
  std::int64_t scale = 0;
  bool any_digit = false;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c >= '0' && c <= '9') {
      mantissa = mantissa * 10 + (c - '0');
      if (seen_point) --scale;
      any_digit = true;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool exp_negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) exp_negative = text[i++] == '-';
    std::int64_t exponent = 0;
    bool exp_digit = false;
    for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i) {
      exponent = exponent * 10 + (text[i] - '0');
      exp_digit = true;
      if (exponent > 10000) throw std::invalid_argument("exponent too large: '" + std::string(text) + "'");
    }
    if (!exp_digit) throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    scale += exp_negative ? -exponent : exponent;
  }
  if (i != text.size()) throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  BigInt power = 1;
  for (std::int64_t s = 0; s < (scale < 0 ? -scale : scale); ++s) power *= 10;
  Rational value = scale < 0 ? Rational(mantissa, power) : Rational(mantissa * power);
  return negative ? Rational(-value) : value;
}

}  // namespace detail

// Parses "0.3", "3e-1" or "3/10". Rational parsing is exact: "0.3" is 3/10.
template <Scalar S>
S parse_scalar(std::string_view text) {
  const auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    const Rational num = detail::parse_decimal(text.substr(0, slash));
    const Rational den = detail::parse_decimal(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    const Rational value = num / den;
    if constexpr (is_exact_v<S>) {
      return value;
    } else {
      return to_double(value);
    }
  }
  if constexpr (is_exact_v<S>) {
    return detail::parse_decimal(text);
  } else {
    (void)detail::parse_decimal(text);  // validates the syntax
    return std::stod(std::string(text));
  }
}

// Exact comparison in rational mode, |a - b| <= tol otherwise.
template <Scalar S>
bool nearly_equal(const S& a, const S& b, double tol = kTolerance) {
  if constexpr (is_exact_v<S>) {
    return a == b;
  } else {
    return std::abs(a - b) <= tol;
  }
}

inline std::string to_string(const Rational& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

inline std::string to_string(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace algsearch
