#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "newton_atlas/complex.hpp"
#include "newton_atlas/error.hpp"
#include "newton_atlas/poly.hpp"
#include "newton_atlas/rational_map.hpp"

namespace newton_atlas {

// z -> (a z + b) / (c z + d) with ad - bc != 0.
class MobiusMap {
 public:
  MobiusMap(Cx a, Cx b, Cx c, Cx d) : a_(a), b_(b), c_(c), d_(d) {
    const double s = scale();
    if (!(std::abs(a_ * d_ - b_ * c_) > 1e-12 * s * s))
      throw Error(ErrorKind::InvalidArgument, "singular Moebius map (ad - bc = 0)");
  }

  static MobiusMap identity() { return {1.0, 0.0, 0.0, 1.0}; }
  // z -> scale * z + shift
  static MobiusMap affine(Cx scale, Cx shift) { return {scale, shift, 0.0, 1.0}; }

  [[nodiscard]] Cx a() const noexcept { return a_; }
  [[nodiscard]] Cx b() const noexcept { return b_; }
  [[nodiscard]] Cx c() const noexcept { return c_; }
  [[nodiscard]] Cx d() const noexcept { return d_; }

  [[nodiscard]] double scale() const noexcept {
    return std::max({std::abs(a_), std::abs(b_), std::abs(c_), std::abs(d_)});
  }
  [[nodiscard]] bool is_affine() const noexcept { return std::abs(c_) <= 1e-12 * scale(); }

  [[nodiscard]] ExtendedPoint operator()(const ExtendedPoint& z) const {
    if (z.is_infinity()) {
      if (c_ == Cx{}) return ExtendedPoint::infinity();
      return a_ / c_;
    }
    const Cx w = z.value();
    const Cx den = c_ * w + d_;
    if (den == Cx{}) return ExtendedPoint::infinity();
    const Cx out = (a_ * w + b_) / den;
    if (!is_finite(out)) return ExtendedPoint::infinity();
    return out;
  }

  [[nodiscard]] MobiusMap inverse() const { return {d_, -b_, -c_, a_}; }

  // (this o other)(z) = this(other(z))
  [[nodiscard]] MobiusMap compose(const MobiusMap& o) const {
    return {a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_,
            c_ * o.b_ + d_ * o.d_};
  }

 private:
  Cx a_, b_, c_, d_;
};

inline ExtendedPoint mobius_apply(const MobiusMap& m, const ExtendedPoint& z) { return m(z); }

namespace detail {

// The map sending (z1, z2, z3) to (0, 1, infinity): cross ratio with the infinity conventions.
inline MobiusMap to_zero_one_infinity(const ExtendedPoint& z1, const ExtendedPoint& z2,
                                      const ExtendedPoint& z3) {
  if (z1.is_infinity()) {
    const Cx w2 = z2.value(), w3 = z3.value();
    return {0.0, w2 - w3, 1.0, -w3};
  }
  if (z2.is_infinity()) {
    const Cx w1 = z1.value(), w3 = z3.value();
    return {1.0, -w1, 1.0, -w3};
  }
  if (z3.is_infinity()) {
    const Cx w1 = z1.value(), w2 = z2.value();
    return {1.0, -w1, 0.0, w2 - w1};
  }
  const Cx w1 = z1.value(), w2 = z2.value(), w3 = z3.value();
  return {w2 - w3, -w1 * (w2 - w3), w2 - w1, -w3 * (w2 - w1)};
}

inline bool distinct_triple(const std::array<ExtendedPoint, 3>& p) {
  constexpr double kTol = 1e-12;
  return chordal_distance(p[0], p[1]) > kTol && chordal_distance(p[0], p[2]) > kTol &&
         chordal_distance(p[1], p[2]) > kTol;
}

}  // namespace detail

// The unique Moebius map with M(src[i]) = dst[i].
inline MobiusMap mobius_from_three_points(const std::array<ExtendedPoint, 3>& src,
                                          const std::array<ExtendedPoint, 3>& dst) {
  if (!detail::distinct_triple(src) || !detail::distinct_triple(dst))
    throw Error(ErrorKind::DegenerateTriple, "three-point data must be pairwise distinct");
  const MobiusMap s = detail::to_zero_one_infinity(src[0], src[1], src[2]);
  const MobiusMap t = detail::to_zero_one_infinity(dst[0], dst[1], dst[2]);
  return t.inverse().compose(s);
}

// Coefficient form of M o N o M^-1.
inline RationalMap conjugate_map(const RationalMap& f, const MobiusMap& m) {
  const int k = f.degree();
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "conjugate_map needs degree >= 1");
  const MobiusMap inv = m.inverse();
  const Poly top = Poly({inv.b(), inv.a()});
  const Poly bottom = Poly({inv.d(), inv.c()});

  // Homogenize: p(M^-1 z) * bottom^k = sum p_i top^i bottom^(k-i).
  std::vector<Poly> top_pow{Poly::constant(1.0)};
  std::vector<Poly> bottom_pow{Poly::constant(1.0)};
  for (int i = 1; i <= k; ++i) {
    top_pow.push_back(top_pow.back() * top);
    bottom_pow.push_back(bottom_pow.back() * bottom);
  }
  auto homogenize = [&](const Poly& p) {
    Poly acc;
    for (int i = 0; i <= p.degree(); ++i)
      acc = acc + p[static_cast<std::size_t>(i)] * (top_pow[i] * bottom_pow[k - i]);
    return acc;
  };
  const Poly hp = homogenize(f.num());
  const Poly hq = homogenize(f.den());

  const double sp = hp.max_abs();
  const double sq = hq.max_abs();
  auto combine = [&](Cx x, Cx y) {
    std::vector<Cx> c(std::max(hp.size(), hq.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = x * hp[i] + y * hq[i];
    return Poly(std::move(c)).trimmed(kTrimTolerance, std::abs(x) * sp + std::abs(y) * sq);
  };
  return reduce(RationalMap(combine(m.a(), m.b()), combine(m.c(), m.d()))).normalized();
}

}  // namespace newton_atlas
