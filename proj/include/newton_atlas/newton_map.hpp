#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "newton_atlas/complex.hpp"
#include "newton_atlas/error.hpp"
#include "newton_atlas/poly.hpp"
#include "newton_atlas/rational_map.hpp"

namespace newton_atlas {

struct Factor {
  Cx location;
  int multiplicity = 1;

  friend bool operator==(const Factor&, const Factor&) = default;
};

// R(z) = prod (z - root)^d / prod (z - pole)^e with distinct roots and poles.
class FactoredRational {
 public:
  static constexpr double kMinSeparation = 1e-9;

  FactoredRational(std::vector<Factor> roots, std::vector<Factor> poles)
      : roots_(std::move(roots)), poles_(std::move(poles)) {
    if (roots_.empty() && poles_.empty())
      throw Error(ErrorKind::InvalidArgument, "rational function needs at least one root or pole");
    std::vector<Cx> all;
    for (const auto* list : {&roots_, &poles_})
      for (const Factor& f : *list) {
        if (f.multiplicity < 1)
          throw Error(ErrorKind::InvalidArgument, "multiplicities must be positive integers");
        if (!is_finite(f.location))
          throw Error(ErrorKind::InvalidArgument, "roots and poles must be finite");
        all.push_back(f.location);
      }
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = i + 1; j < all.size(); ++j)
        if (std::abs(all[i] - all[j]) <= kMinSeparation)
          throw Error(ErrorKind::InvalidArgument,
                      "roots and poles must be pairwise distinct (P and Q coprime)");
  }

  [[nodiscard]] const std::vector<Factor>& roots() const noexcept { return roots_; }
  [[nodiscard]] const std::vector<Factor>& poles() const noexcept { return poles_; }
  [[nodiscard]] int m() const noexcept { return static_cast<int>(roots_.size()); }
  [[nodiscard]] int n() const noexcept { return static_cast<int>(poles_.size()); }
  [[nodiscard]] int d() const noexcept { return total(roots_); }
  [[nodiscard]] int e() const noexcept { return total(poles_); }

 private:
  static int total(const std::vector<Factor>& fs) noexcept {
    int s = 0;
    for (const Factor& f : fs) s += f.multiplicity;
    return s;
  }

  std::vector<Factor> roots_;
  std::vector<Factor> poles_;
};

inline int newton_degree(const FactoredRational& r) noexcept {
  return r.d() == r.e() + 1 ? r.m() + r.n() - 1 : r.m() + r.n();
}

namespace detail {

inline Poly product_of_linear(const std::vector<Factor>& fs, std::size_t skip = SIZE_MAX) {
  Poly p = Poly::constant(1.0);
  for (std::size_t k = 0; k < fs.size(); ++k)
    if (k != skip) p = p * Poly::linear_factor(fs[k].location);
  return p;
}

// sum_i mult_i * prod_{k != i} (z - x_k)
inline Poly weighted_partial_products(const std::vector<Factor>& fs) {
  Poly s;
  for (std::size_t i = 0; i < fs.size(); ++i)
    s = s + static_cast<double>(fs[i].multiplicity) * product_of_linear(fs, i);
  return s;
}

}  // namespace detail

// N_R(z) = z - R/R', expanded as (z (A~ - B~) - A B) / (A~ - B~) where A and B are the products
// of the distinct linear root and pole factors.
inline RationalMap build_newton_map(const FactoredRational& r) {
  const int predicted = newton_degree(r);
  if (predicted <= 0)
    throw Error(ErrorKind::DegenerateMap, "Newton map is constant (predicted degree 0)");

  const Poly a = detail::product_of_linear(r.roots());
  const Poly b = detail::product_of_linear(r.poles());
  const Poly a_tilde = b * detail::weighted_partial_products(r.roots());
  const Poly b_tilde = a * detail::weighted_partial_products(r.poles());
  const Poly den = a_tilde - b_tilde;
  const Poly num = Poly::identity() * den - a * b;

  RationalMap n = reduce(RationalMap(num, den)).normalized();
  if (n.degree() != predicted)
    throw Error(ErrorKind::DegreeMismatch, "reduced Newton map has degree " +
                                               std::to_string(n.degree()) + ", expected " +
                                               std::to_string(predicted));
  return n;
}

// Multiplier written as p/q with |p - q| = 1.
struct MultiplierFraction {
  int p = 0;
  int q = 1;

  friend bool operator==(const MultiplierFraction&, const MultiplierFraction&) = default;
};

inline constexpr int kMaxReconstructedMultiplicity = 64;

// Inverts lambda = p/q, |p - q| = 1, from a numeric multiplier. Absent when lambda is not of that
// form within 1e-6, has imaginary part above 1e-8, or would need q > 64.
inline std::optional<MultiplierFraction> reconstruct_pq(Cx lambda) {
  if (!is_finite(lambda) || std::abs(lambda.imag()) > 1e-8) return std::nullopt;
  const double x = lambda.real();
  MultiplierFraction f;
  if (std::abs(lambda) < 1.0) {
    const double q = std::round(1.0 / (1.0 - x));
    if (q < 1 || q > kMaxReconstructedMultiplicity) return std::nullopt;
    f = {static_cast<int>(q) - 1, static_cast<int>(q)};
  } else if (std::abs(lambda) > 1.0) {
    const double q = std::round(1.0 / (x - 1.0));
    if (q < 1 || q > kMaxReconstructedMultiplicity) return std::nullopt;
    f = {static_cast<int>(q) + 1, static_cast<int>(q)};
  } else {
    return std::nullopt;
  }
  if (std::abs(lambda - static_cast<double>(f.p) / f.q) > 1e-6) return std::nullopt;
  return f;
}

enum class FixedPointClass {
  Superattracting,
  Attracting,
  Repelling,
  RationallyIndifferent,
  IrrationallyIndifferent,
};

inline std::string_view to_string(FixedPointClass c) noexcept {
  switch (c) {
    case FixedPointClass::Superattracting: return "Superattracting";
    case FixedPointClass::Attracting: return "Attracting";
    case FixedPointClass::Repelling: return "Repelling";
    case FixedPointClass::RationallyIndifferent: return "RationallyIndifferent";
    case FixedPointClass::IrrationallyIndifferent: return "IrrationallyIndifferent";
  }
  return "Unknown";
}

inline constexpr double kSuperattractingTolerance = 1e-9;
inline constexpr double kIndifferentTolerance = 1e-9;

// |lambda| = 1 points count as rationally indifferent when lambda^k = 1 for some k <= 64; the
// remaining unit-modulus multipliers are reported as irrationally indifferent. That split is a
// numerical heuristic, not a proof.
inline FixedPointClass classify_multiplier(Cx lambda) {
  const double r = std::abs(lambda);
  if (r <= kSuperattractingTolerance) return FixedPointClass::Superattracting;
  if (std::abs(r - 1.0) <= kIndifferentTolerance) {
    const double turns = std::arg(lambda) / (2.0 * std::numbers::pi);
    for (int k = 1; k <= kMaxReconstructedMultiplicity; ++k)
      if (std::abs(turns * k - std::round(turns * k)) <= 1e-9 * k)
        return FixedPointClass::RationallyIndifferent;
    return FixedPointClass::IrrationallyIndifferent;
  }
  return r < 1.0 ? FixedPointClass::Attracting : FixedPointClass::Repelling;
}

inline constexpr double kParabolicTolerance = 1e-9;

struct FixedPointRecord {
  ExtendedPoint location;
  Cx multiplier;
  std::optional<MultiplierFraction> pq;
  Cx index;
  FixedPointClass klass;
};

// 1 / (1 - lambda); exactly +q or -q when the multiplier is p/q.
inline Cx residue_index(Cx lambda, const std::optional<MultiplierFraction>& pq = std::nullopt) {
  if (std::abs(lambda - 1.0) < kParabolicTolerance)
    throw Error(ErrorKind::ParabolicPoint, "residue index of a multiplier-1 fixed point");
  if (pq) return pq->p < pq->q ? Cx(pq->q) : Cx(-pq->q);
  return 1.0 / (1.0 - lambda);
}

inline Cx residue_index(const FixedPointRecord& rec) { return residue_index(rec.multiplier, rec.pq); }

inline FixedPointRecord make_fixed_point_record(ExtendedPoint where, Cx lambda) {
  auto pq = reconstruct_pq(lambda);
  const Cx index = std::abs(lambda - 1.0) < kParabolicTolerance
                       ? Cx(std::numeric_limits<double>::infinity())
                       : residue_index(lambda, pq);
  return {where, lambda, pq, index, classify_multiplier(lambda)};
}

namespace detail {

inline FixedPointRecord exact_record(ExtendedPoint where, int p, int q) {
  const Cx lambda = static_cast<double>(p) / q;
  const MultiplierFraction pq{p, q};
  return {where, lambda, pq, residue_index(lambda, pq), classify_multiplier(lambda)};
}

}  // namespace detail

// Fixed points of N_R with the closed-form multipliers: (d-1)/d at roots, (e+1)/e at poles,
// (d-e)/(d-e-1) at infinity when d != e + 1.
inline std::vector<FixedPointRecord> fixed_points(const FactoredRational& r) {
  if (newton_degree(r) < 2)
    throw Error(ErrorKind::InvalidArgument, "fixed_points needs a Newton map of degree >= 2");
  std::vector<FixedPointRecord> out;
  for (const Factor& f : r.roots())
    out.push_back(detail::exact_record(f.location, f.multiplicity - 1, f.multiplicity));
  for (const Factor& f : r.poles())
    out.push_back(detail::exact_record(f.location, f.multiplicity + 1, f.multiplicity));
  const int excess = r.d() - r.e();
  if (excess != 1) {
    // excess <= 0: attracting, lambda = (e-d)/(e-d+1); excess >= 2: repelling.
    if (excess <= 0)
      out.push_back(detail::exact_record(ExtendedPoint::infinity(), -excess, 1 - excess));
    else
      out.push_back(detail::exact_record(ExtendedPoint::infinity(), excess, excess - 1));
  }
  return out;
}

inline constexpr double kFixedTolerance = 1e-6;

inline Cx multiplier_at(const RationalMap& f, const ExtendedPoint& z0) {
  if (z0.is_infinity()) {
    const int k = f.num().degree();
    const int l = f.den().degree();
    if (k <= l) throw Error(ErrorKind::NotFixed, "infinity is not fixed (deg num <= deg den)");
    if (k == l + 1) return f.den().leading() / f.num().leading();
    return 0.0;
  }
  const Cx z = z0.value();
  const ExtendedPoint image = f(z);
  if (image.is_infinity() || std::abs(image.value() - z) > kFixedTolerance)
    throw Error(ErrorKind::NotFixed, "point is not fixed");
  return derivative_at(f, z);
}

// Fixed points of an arbitrary map, found numerically. Infinity is last when fixed.
inline std::vector<FixedPointRecord> map_fixed_points(const RationalMap& f) {
  std::vector<FixedPointRecord> out;
  const Poly fp = f.fixed_point_polynomial();
  if (fp.degree() >= 1)
    for (const Cx& z : poly_roots(fp)) out.push_back(make_fixed_point_record(z, derivative_at(f, z)));
  if (f.fixes_infinity())
    out.push_back(make_fixed_point_record(ExtendedPoint::infinity(),
                                          multiplier_at(f, ExtendedPoint::infinity())));
  return out;
}

// (1 / 2 pi i) of the integral of dz / (z - f(z)) around |z - z0| = radius by the trapezoidal
// rule. Independent of the multiplier formula; used to cross-check residue_index.
inline Cx residue_index_contour(const RationalMap& f, Cx z0, double radius, int samples = 256) {
  if (samples < 64) throw Error(ErrorKind::InvalidArgument, "contour needs at least 64 samples");
  if (!(radius > 0.0)) throw Error(ErrorKind::InvalidArgument, "contour radius must be positive");

  const auto fps = map_fixed_points(f);
  std::size_t own = fps.size();
  double own_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < fps.size(); ++i) {
    if (fps[i].location.is_infinity()) continue;
    const double dist = std::abs(fps[i].location.value() - z0);
    if (dist < own_dist) {
      own_dist = dist;
      own = i;
    }
  }
  for (std::size_t i = 0; i < fps.size(); ++i) {
    if (i == own || fps[i].location.is_infinity()) continue;
    if (std::abs(fps[i].location.value() - z0) <= 2.0 * radius)
      throw Error(ErrorKind::LoopTooLarge, "another fixed point lies within twice the radius");
  }

  Cx sum{};
  for (int k = 0; k < samples; ++k) {
    const Cx offset = std::polar(radius, 2.0 * std::numbers::pi * k / samples);
    const Cx z = z0 + offset;
    const ExtendedPoint fz = f(z);
    if (fz.is_infinity()) continue;  // integrand vanishes at a pole of f
    sum += offset / (z - fz.value());
  }
  return sum / static_cast<double>(samples);
}

struct RfptCheck {
  Cx sum;
  bool pass = false;
};

inline constexpr double kRfptTolerance = 1e-7;

inline RfptCheck verify_rfpt(std::span<const FixedPointRecord> records) {
  Cx sum{};
  for (const auto& r : records) sum += r.index;
  return {sum, std::abs(sum - 1.0) <= kRfptTolerance};
}

struct CriticalPoints {
  std::vector<RootMultiplicity> finite;
  // Local degree at infinity minus one; zero when infinity is not critical.
  int infinity_multiplicity = 0;

  [[nodiscard]] bool infinity_critical() const noexcept { return infinity_multiplicity > 0; }
  [[nodiscard]] int count() const noexcept {
    int c = infinity_multiplicity;
    for (const auto& r : finite) c += r.multiplicity;
    return c;
  }
};

// A degree-k map has 2k - 2 critical points; the ones missing from the finite set are at
// infinity.
inline CriticalPoints critical_points(const RationalMap& f) {
  const int k = f.degree();
  if (k < 2) throw Error(ErrorKind::InvalidArgument, "critical_points needs degree >= 2");
  const Poly w = f.wronskian();
  CriticalPoints out;
  if (w.degree() >= 1) {
    const auto roots = poly_roots(w);
    out.finite = cluster_roots(roots);
  }
  out.infinity_multiplicity = std::max(0, 2 * k - 2 - std::max(0, w.degree()));
  return out;
}

}  // namespace newton_atlas
