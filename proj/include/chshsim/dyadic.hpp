#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace chshsim {

using BigInt = boost::multiprecision::cpp_int;

/*
 * Exact rational with a power-of-two denominator: numerator / 2^exponent.
 *
 * Every probability of the fair-step model has this form, so sums and
 * products never leave the representation. Values are not kept reduced;
 * comparison and equality are by value, and reduced() yields the form with
 * an odd numerator (or exponent 0).
 */
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(BigInt numerator, std::uint32_t exponent);
  static Dyadic integer(std::int64_t value) { return Dyadic(BigInt(value), 0); }

  const BigInt& numerator() const { return numerator_; }
  std::uint32_t exponent() const { return exponent_; }

  Dyadic reduced() const;
  /// Same value expressed over 2^exponent; exponent must not drop below the reduced one.
  Dyadic with_exponent(std::uint32_t exponent) const;

  /// Nearest-ish double; correct to a few ulps for any exponent, including ones
  /// where numerator and denominator individually overflow a double.
  double to_double() const;

  /// Reduced fraction "p/q", or just "p" when the denominator is 1.
  std::string to_fraction_string() const;

  bool is_zero() const { return numerator_ == 0; }

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  Dyadic& operator+=(const Dyadic& other) { return *this = *this + other; }

  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);
  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

 private:
  BigInt numerator_{0};
  std::uint32_t exponent_ = 0;
};

std::string to_string(const BigInt& value);

}  // namespace chshsim
