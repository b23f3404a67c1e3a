#include "caustic/scaled_value.hpp"

#include <cmath>
#include <limits>

#include "caustic/errors.hpp"

namespace caustic {

namespace {

constexpr long double kShiftUp = 1e140L;
constexpr long double kShiftDown = 1e-140L;

}  // namespace

ScaledValue::ScaledValue(double mantissa, std::int64_t exp10) : mantissa_(mantissa), exp10_(exp10) {
  if (!std::isfinite(mantissa)) throw DomainError("ScaledValue: mantissa must be finite");
  renormalize();
}

void ScaledValue::renormalize() {
  if (mantissa_ == 0.0) {
    exp10_ = 0;
    return;
  }
  // Shift in extended precision and round once, so the represented number
  // moves by at most one unit in the last place.
  long double m = mantissa_;
  bool shifted = false;
  while (std::abs(m) > static_cast<long double>(kBandHigh)) {
    m *= kShiftDown;
    exp10_ += kBandShift;
    shifted = true;
  }
  while (std::abs(m) < static_cast<long double>(kBandLow)) {
    m *= kShiftUp;
    exp10_ -= kBandShift;
    shifted = true;
  }
  if (shifted) mantissa_ = static_cast<double>(m);
}

ScaledValue ScaledValue::from_log10(double log10_abs, int sign) {
  if (std::isinf(log10_abs) && log10_abs < 0) return ScaledValue{};
  if (!std::isfinite(log10_abs)) throw DomainError("ScaledValue: log10 must be finite");
  const double whole = std::floor(log10_abs);
  const double mantissa = std::pow(10.0, log10_abs - whole);
  return ScaledValue{sign < 0 ? -mantissa : mantissa, static_cast<std::int64_t>(whole)};
}

double ScaledValue::log10_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  return std::log10(std::abs(mantissa_)) + static_cast<double>(exp10_);
}

std::optional<double> ScaledValue::to_double() const {
  if (is_zero()) return 0.0;
  const double v = value();
  if (!std::isfinite(v) || std::abs(v) < std::numeric_limits<double>::min()) return std::nullopt;
  return v;
}

double ScaledValue::value() const {
  if (is_zero()) return 0.0;
  if (exp10_ > 700) return std::copysign(std::numeric_limits<double>::infinity(), mantissa_);
  if (exp10_ < -700) return std::copysign(0.0, mantissa_);
  // Split the power so that neither factor overflows on its own.
  const auto e = static_cast<int>(exp10_);
  const int e1 = e / 2;
  return mantissa_ * std::pow(10.0, e1) * std::pow(10.0, e - e1);
}

ScaledValue ScaledValue::operator*(const ScaledValue& other) const {
  if (is_zero() || other.is_zero()) return ScaledValue{};
  return ScaledValue{mantissa_ * other.mantissa_, exp10_ + other.exp10_};
}

ScaledValue ScaledValue::operator*(double factor) const {
  if (!std::isfinite(factor)) throw DomainError("ScaledValue: factor must be finite");
  if (is_zero() || factor == 0.0) return ScaledValue{};
  return ScaledValue{mantissa_ * factor, exp10_};
}

}  // namespace caustic
