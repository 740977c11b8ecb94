#include "chshsim/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chshsim {

namespace {

// Scale both operands to the larger exponent.
std::pair<BigInt, BigInt> align(const Dyadic& a, const Dyadic& b, std::uint32_t& exponent) {
  exponent = std::max(a.exponent(), b.exponent());
  return {a.numerator() << (exponent - a.exponent()), b.numerator() << (exponent - b.exponent())};
}

}  // namespace

Dyadic::Dyadic(BigInt numerator, std::uint32_t exponent)
    : numerator_(std::move(numerator)), exponent_(exponent) {}

Dyadic Dyadic::reduced() const {
  if (numerator_ == 0) return Dyadic();
  const auto trailing = static_cast<std::uint32_t>(boost::multiprecision::lsb(abs(numerator_)));
  const std::uint32_t shift = std::min(trailing, exponent_);
  return Dyadic(numerator_ >> shift, exponent_ - shift);
}

Dyadic Dyadic::with_exponent(std::uint32_t exponent) const {
  if (exponent >= exponent_) return Dyadic(numerator_ << (exponent - exponent_), exponent);
  const Dyadic r = reduced();
  if (exponent < r.exponent_) throw std::invalid_argument("Dyadic: exponent too small for value");
  return Dyadic(r.numerator_ << (exponent - r.exponent_), exponent);
}

double Dyadic::to_double() const {
  if (numerator_ == 0) return 0.0;
  const bool negative = numerator_ < 0;
  BigInt magnitude = abs(numerator_);
  // Keep the top 64 bits; the dropped tail only affects rounding beyond a double's mantissa.
  const auto bits = static_cast<long>(boost::multiprecision::msb(magnitude)) + 1;
  long shift = 0;
  if (bits > 64) {
    shift = bits - 64;
    magnitude >>= shift;
  }
  const double mantissa = static_cast<double>(static_cast<std::uint64_t>(magnitude));
  const double value = std::ldexp(mantissa, static_cast<int>(shift - static_cast<long>(exponent_)));
  return negative ? -value : value;
}

std::string to_string(const BigInt& value) { return value.str(); }

std::string Dyadic::to_fraction_string() const {
  const Dyadic r = reduced();
  if (r.exponent_ == 0) return r.numerator_.str();
  return r.numerator_.str() + "/" + (BigInt(1) << r.exponent_).str();
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  std::uint32_t e = 0;
  auto [x, y] = align(a, b, e);
  return Dyadic(x + y, e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) {
  std::uint32_t e = 0;
  auto [x, y] = align(a, b, e);
  return Dyadic(x - y, e);
}

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  return Dyadic(a.numerator_ * b.numerator_, a.exponent_ + b.exponent_);
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  std::uint32_t e = 0;
  auto [x, y] = align(a, b, e);
  if (x < y) return std::strong_ordering::less;
  if (x > y) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace chshsim
