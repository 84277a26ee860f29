#pragma once

#include <cmath>
#include <complex>
#include <optional>

#include "newton_atlas/error.hpp"

namespace newton_atlas {

using Cx = std::complex<double>;

inline bool is_finite(Cx z) noexcept { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// A point of the Riemann sphere: either a finite complex number or infinity.
class ExtendedPoint {
 public:
  ExtendedPoint(Cx z) : value_(z) {}  // NOLINT(google-explicit-constructor)
  ExtendedPoint(double x) : value_(Cx{x, 0.0}) {}  // NOLINT(google-explicit-constructor)

  static ExtendedPoint infinity() noexcept { return ExtendedPoint(); }

  [[nodiscard]] bool is_infinity() const noexcept { return !value_.has_value(); }
  [[nodiscard]] bool is_finite() const noexcept { return value_.has_value(); }

  [[nodiscard]] Cx value() const {
    if (!value_) throw Error(ErrorKind::InvalidArgument, "point at infinity has no finite value");
    return *value_;
  }

  friend bool operator==(const ExtendedPoint& a, const ExtendedPoint& b) noexcept {
    return a.value_ == b.value_;
  }

 private:
  ExtendedPoint() = default;
  std::optional<Cx> value_;
};

// Chordal distance on the Riemann sphere (diameter 2).
inline double chordal_distance(const ExtendedPoint& a, const ExtendedPoint& b) {
  if (a.is_infinity() && b.is_infinity()) return 0.0;
  if (a.is_infinity()) return 2.0 / std::sqrt(1.0 + std::norm(b.value()));
  if (b.is_infinity()) return 2.0 / std::sqrt(1.0 + std::norm(a.value()));
  const Cx za = a.value();
  const Cx zb = b.value();
  return 2.0 * std::abs(za - zb) / std::sqrt((1.0 + std::norm(za)) * (1.0 + std::norm(zb)));
}

}  // namespace newton_atlas
