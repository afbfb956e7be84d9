// Exact rational numbers and their textual forms.

#ifndef PMODAL_RATIONAL_HPP_
#define PMODAL_RATIONAL_HPP_

#include <cctype>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace pmodal {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Parses `7/20`, `0.35`, `.35`, `1` exactly. Returns nullopt on anything
/// else (signs are not accepted; every quantity here is a probability).
inline std::optional<Rational> parse_rational(std::string_view text) {
  auto all_digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
  };
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    Integer d{std::string(den)};
    if (d == 0) return std::nullopt;
    return Rational(Integer(std::string(num)), d);
  }
  auto dot = text.find('.');
  if (dot == std::string_view::npos) {
    if (!all_digits(text)) return std::nullopt;
    return Rational(Integer(std::string(text)));
  }
  auto whole = text.substr(0, dot);
  auto frac = text.substr(dot + 1);
  if (whole.empty() && frac.empty()) return std::nullopt;
  if (!whole.empty() && !all_digits(whole)) return std::nullopt;
  if (!frac.empty() && !all_digits(frac)) return std::nullopt;
  Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(frac.size()));
  Integer w = whole.empty() ? Integer(0) : Integer(std::string(whole));
  Integer f = frac.empty() ? Integer(0) : Integer(std::string(frac));
  return Rational(w * scale + f, scale);
}

/// `7/20`, `1`, `0`.
inline std::string to_string(const Rational& q) { return q.str(); }

/// Decimal rounded half-up to `places` digits, trailing zeros trimmed:
/// 7/20 -> "0.35", 1/3 -> "0.333333".
inline std::string to_decimal(const Rational& q, unsigned places = 6) {
  bool negative = q < 0;
  Rational a = negative ? Rational(-q) : q;
  Integer scale = boost::multiprecision::pow(Integer(10), places);
  Integer num = boost::multiprecision::numerator(a) * scale;
  Integer den = boost::multiprecision::denominator(a);
  Integer rounded = (2 * num + den) / (2 * den);
  Integer whole = rounded / scale;
  Integer frac = rounded % scale;
  std::string out = negative && rounded != 0 ? "-" : "";
  out += whole.str();
  if (frac != 0) {
    std::string digits = frac.str();
    digits.insert(0, places - digits.size(), '0');
    while (!digits.empty() && digits.back() == '0') digits.pop_back();
    out += "." + digits;
  }
  return out;
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace pmodal

#endif  // PMODAL_RATIONAL_HPP_
