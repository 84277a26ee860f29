#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "newton_atlas/complex.hpp"
#include "newton_atlas/error.hpp"
#include "newton_atlas/poly.hpp"

namespace newton_atlas {

// z -> num(z) / den(z). Degree is max(deg num, deg den).
class RationalMap {
 public:
  RationalMap(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error(ErrorKind::InvalidArgument, "rational map with zero denominator");
  }

  static RationalMap polynomial(Poly p) { return {std::move(p), Poly::constant(1.0)}; }

  [[nodiscard]] const Poly& num() const noexcept { return num_; }
  [[nodiscard]] const Poly& den() const noexcept { return den_; }
  [[nodiscard]] int degree() const noexcept { return std::max(num_.degree(), den_.degree()); }
  [[nodiscard]] bool fixes_infinity() const noexcept { return num_.degree() > den_.degree(); }
  [[nodiscard]] bool is_polynomial() const noexcept { return den_.degree() == 0; }

  // Scaled so the denominator is monic.
  [[nodiscard]] RationalMap normalized() const {
    const Cx s = 1.0 / den_.leading();
    return {num_.scaled(s), den_.scaled(s)};
  }

  [[nodiscard]] ExtendedPoint operator()(const ExtendedPoint& z) const {
    if (z.is_infinity()) {
      if (num_.degree() > den_.degree()) return ExtendedPoint::infinity();
      if (num_.degree() < den_.degree()) return Cx{};
      return num_.leading() / den_.leading();
    }
    const Cx w = z.value();
    const Cx d = eval(den_, w);
    const Cx n = eval(num_, w);
    if (d == Cx{}) return n == Cx{} ? ExtendedPoint(Cx{}) : ExtendedPoint::infinity();
    const Cx out = n / d;
    if (!is_finite(out)) return ExtendedPoint::infinity();
    return out;
  }

  // num - z * den; its roots are the finite fixed points.
  [[nodiscard]] Poly fixed_point_polynomial() const { return num_ - Poly::identity() * den_; }

  // num' * den - num * den'; its roots are the finite critical points.
  [[nodiscard]] Poly wronskian() const {
    const Poly a = derivative(num_) * den_;
    const Poly b = num_ * derivative(den_);
    return a - b;
  }

 private:
  Poly num_;
  Poly den_;
};

// Derivative of N at a finite point where the denominator does not vanish.
inline Cx derivative_at(const RationalMap& f, Cx z) {
  const Cx d = eval(f.den(), z);
  return (eval(derivative(f.num()), z) * d - eval(f.num(), z) * eval(derivative(f.den()), z)) /
         (d * d);
}

// Cancels numerator/denominator roots closer than rel * max(1, |root|).
inline RationalMap reduce(const RationalMap& f, double rel = 1e-8) {
  Poly num = f.num();
  Poly den = f.den();
  while (num.degree() >= 1 && den.degree() >= 1) {
    const auto num_roots = poly_roots(num);
    const auto den_roots = poly_roots(den);
    bool found = false;
    for (const Cx& r : den_roots) {
      for (const Cx& s : num_roots) {
        if (std::abs(r - s) <= rel * std::max(1.0, std::abs(r))) {
          const Cx shared = 0.5 * (r + s);
          num = deflate(num, shared);
          den = deflate(den, shared);
          found = true;
          break;
        }
      }
      if (found) break;
    }
    if (!found) break;
  }
  return {std::move(num), std::move(den)};
}

}  // namespace newton_atlas
