#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace beaver {

// Exact non-negative fraction. Always stored reduced, den > 0.
class Rational {
 public:
  Rational() = default;
  Rational(std::uint64_t num, std::uint64_t den);

  // Parses "0.95", "1", "3/4". Throws std::invalid_argument on junk or
  // negative input.
  static Rational parse(std::string_view text);

  std::uint64_t num() const { return num_; }
  std::uint64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / den_; }

  // Decimal rendering with `digits` significant digits (printf %g style).
  std::string to_decimal(int digits = 6) const;
  std::string to_string() const;

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);
  friend Rational operator+(const Rational& a, const Rational& b);

 private:
  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

}  // namespace beaver
