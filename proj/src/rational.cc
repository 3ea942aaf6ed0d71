#include "beaver/rational.h"

#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace beaver {

namespace {

using u128 = unsigned __int128;

std::uint64_t narrow(u128 v) {
  if (v > UINT64_MAX) throw std::overflow_error("rational overflow");
  return static_cast<std::uint64_t>(v);
}

std::uint64_t parse_digits(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty number");
  u128 v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw std::invalid_argument("bad digit in number");
    v = v * 10 + static_cast<unsigned>(c - '0');
    if (v > UINT64_MAX) throw std::invalid_argument("number too large");
  }
  return static_cast<std::uint64_t>(v);
}

}  // namespace

Rational::Rational(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  std::uint64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return Rational(parse_digits(text.substr(0, slash)),
                    parse_digits(text.substr(slash + 1)));
  }
  auto dot = text.find('.');
  if (dot == std::string_view::npos) return Rational(parse_digits(text), 1);
  std::string_view whole = text.substr(0, dot);
  std::string_view frac = text.substr(dot + 1);
  if (frac.size() > 18) throw std::invalid_argument("too many decimals");
  std::uint64_t scale = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
  u128 num = static_cast<u128>(whole.empty() ? 0 : parse_digits(whole)) * scale +
             (frac.empty() ? 0 : parse_digits(frac));
  return Rational(narrow(num), scale);
}

std::string Rational::to_decimal(int digits) const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, to_double());
  return buf;
}

std::string Rational::to_string() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return static_cast<u128>(a.num_) * b.den_ <=> static_cast<u128>(b.num_) * a.den_;
}

Rational operator+(const Rational& a, const Rational& b) {
  std::uint64_t g = std::gcd(a.den_, b.den_);
  u128 den = static_cast<u128>(a.den_ / g) * b.den_;
  u128 num = static_cast<u128>(a.num_) * (b.den_ / g) +
             static_cast<u128>(b.num_) * (a.den_ / g);
  u128 r = num, d = den;
  while (d != 0) {
    u128 t = r % d;
    r = d;
    d = t;
  }
  return Rational(narrow(num / r), narrow(den / r));
}

}  // namespace beaver
