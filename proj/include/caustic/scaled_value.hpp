#pragma once

#include <cstdint>
#include <optional>

namespace caustic {

/// A real number stored as mantissa * 10^exp10, for Legendre values that
/// leave the double range. Canonical zero is {0, 0}.
class ScaledValue {
public:
  static constexpr double kBandLow = 1e-140;
  static constexpr double kBandHigh = 1e140;
  static constexpr int kBandShift = 140;

  constexpr ScaledValue() = default;
  explicit ScaledValue(double mantissa, std::int64_t exp10 = 0);

  /// sign * 10^log10_abs, with the integer part of log10_abs moved exactly
  /// into the exponent.
  static ScaledValue from_log10(double log10_abs, int sign = 1);

  double mantissa() const noexcept { return mantissa_; }
  std::int64_t exp10() const noexcept { return exp10_; }

  bool is_zero() const noexcept { return mantissa_ == 0.0; }
  int sign() const noexcept { return (mantissa_ > 0) - (mantissa_ < 0); }

  /// log10 |value|; -inf for zero.
  double log10_abs() const;

  /// Collapsed double; nullopt when the value overflows or underflows to a
  /// subnormal/zero although nonzero.
  std::optional<double> to_double() const;

  /// Collapsed double, saturating to +-inf / 0 outside the range.
  double value() const;

  ScaledValue operator*(const ScaledValue& other) const;
  ScaledValue operator*(double factor) const;
  ScaledValue operator-() const { return ScaledValue{-mantissa_, exp10_, Raw{}}; }

  friend bool operator==(const ScaledValue&, const ScaledValue&) = default;

private:
  struct Raw {};
  constexpr ScaledValue(double mantissa, std::int64_t exp10, Raw)
      : mantissa_(mantissa), exp10_(exp10) {}
  void renormalize();

  double mantissa_ = 0.0;
  std::int64_t exp10_ = 0;
};

}  // namespace caustic
