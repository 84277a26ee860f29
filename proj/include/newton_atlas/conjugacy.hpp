#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "newton_atlas/complex.hpp"
#include "newton_atlas/error.hpp"
#include "newton_atlas/mobius.hpp"
#include "newton_atlas/newton_map.hpp"
#include "newton_atlas/poly.hpp"
#include "newton_atlas/rational_map.hpp"

namespace newton_atlas {

inline constexpr double kFixedPointSeparation = 1e-7;
inline constexpr double kSpectrumPairing = 1e-6;
inline constexpr double kWitnessTolerance = 1e-7;
inline constexpr double kConditionTolerance = 1e-8;

// Fixed points of f, after checking that all of them are simple.
inline std::vector<FixedPointRecord> simple_fixed_points(const RationalMap& f) {
  auto fps = map_fixed_points(f);
  if (static_cast<int>(fps.size()) != f.degree() + 1)
    throw Error(ErrorKind::NonSimpleFixedPoint, "fixed point count differs from degree + 1");
  for (std::size_t i = 0; i < fps.size(); ++i) {
    if (std::abs(fps[i].multiplier - 1.0) < kParabolicTolerance)
      throw Error(ErrorKind::NonSimpleFixedPoint, "fixed point with multiplier 1");
    for (std::size_t j = i + 1; j < fps.size(); ++j) {
      if (fps[i].location.is_infinity() || fps[j].location.is_infinity()) continue;
      if (std::abs(fps[i].location.value() - fps[j].location.value()) < kFixedPointSeparation)
        throw Error(ErrorKind::NonSimpleFixedPoint, "two fixed points coincide");
    }
  }
  return fps;
}

inline std::vector<Cx> multiplier_spectrum(const RationalMap& f) {
  std::vector<Cx> out;
  for (const auto& fp : simple_fixed_points(f)) out.push_back(fp.multiplier);
  return out;
}

// Deterministic probe points spread over a few circles.
inline std::vector<Cx> probe_points(int count = 20) {
  std::vector<Cx> out;
  for (int k = 0; k < count; ++k) {
    const double r = 0.35 + 0.41 * (k % 5);
    const double theta = 2.0 * std::numbers::pi * (0.137 + 0.618033988749895 * k);
    out.push_back(Cx{0.173, -0.091} + std::polar(r, theta));
  }
  return out;
}

// Largest chordal distance between f1 and M o f2 o M^-1 over the probe points.
inline double conjugacy_error(const RationalMap& f1, const RationalMap& f2, const MobiusMap& m) {
  const MobiusMap inv = m.inverse();
  double worst = 0.0;
  for (const Cx& z : probe_points()) {
    const ExtendedPoint lhs = f1(z);
    const ExtendedPoint rhs = m(f2(inv(z)));
    worst = std::max(worst, chordal_distance(lhs, rhs));
  }
  return worst;
}

// A Moebius map M with M o f2 o M^-1 = f1, found by pairing fixed points with equal multipliers.
inline std::optional<MobiusMap> quadratic_conjugacy_witness(const RationalMap& f1,
                                                            const RationalMap& f2) {
  if (f1.degree() != 2 || f2.degree() != 2)
    throw Error(ErrorKind::InvalidArgument, "quadratic_conjugacy_witness needs two quadratic maps");
  const auto z = simple_fixed_points(f1);
  const auto w = simple_fixed_points(f2);
  std::array<int, 3> perm{0, 1, 2};
  do {
    bool consistent = true;
    for (int i = 0; i < 3; ++i)
      if (std::abs(z[i].multiplier - w[perm[i]].multiplier) > kSpectrumPairing) consistent = false;
    if (!consistent) continue;
    // phi sends z_i to w_perm(i); then phi^-1 o f2 o phi = f1.
    const MobiusMap phi = mobius_from_three_points(
        {z[0].location, z[1].location, z[2].location},
        {w[perm[0]].location, w[perm[1]].location, w[perm[2]].location});
    const MobiusMap m = phi.inverse();
    if (conjugacy_error(f1, f2, m) <= kWitnessTolerance) return m;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

// Newton map of z^d1 (z - 1)^d2.
inline RationalMap canonical_n1(int d1, int d2) {
  const double s = d1 + d2;
  return {Poly({0.0, 1.0 - d1, s - 1.0}), Poly({-static_cast<double>(d1), s})};
}

// Newton map of 1 / (z^e1 (z - 1)^e2).
inline RationalMap canonical_n2(int e1, int e2) {
  const double s = e1 + e2;
  return {Poly({0.0, -1.0 - e1, s + 1.0}), Poly({-static_cast<double>(e1), s})};
}

enum class QuadFamily { N1, N2 };

inline std::string_view to_string(QuadFamily f) noexcept { return f == QuadFamily::N1 ? "N1" : "N2"; }

struct QuadClass {
  QuadFamily family;
  int first;   // d1 or e1
  int second;  // d2 or e2, canonicalized so first <= second
  MobiusMap witness;  // witness o N_R o witness^-1 is the canonical form

  [[nodiscard]] RationalMap canonical() const {
    return family == QuadFamily::N1 ? canonical_n1(first, second) : canonical_n2(first, second);
  }
};

inline QuadClass classify_quadratic(const FactoredRational& r) {
  if (newton_degree(r) != 2) throw Error(ErrorKind::NotQuadratic, "Newton map is not quadratic");
  const auto& roots = r.roots();
  const auto& poles = r.poles();
  QuadFamily family;
  int p1 = 0, p2 = 0;
  if (r.d() != r.e() + 1) {
    if (r.m() == 2) {
      family = QuadFamily::N1;
      p1 = roots[0].multiplicity;
      p2 = roots[1].multiplicity;
    } else if (r.n() == 2) {
      family = QuadFamily::N2;
      p1 = poles[0].multiplicity;
      p2 = poles[1].multiplicity;
    } else if (r.d() <= r.e()) {
      family = QuadFamily::N1;
      p1 = r.d();
      p2 = r.e() - r.d() + 1;
    } else {
      family = QuadFamily::N2;
      p1 = r.e();
      p2 = r.d() - r.e() - 1;
    }
  } else if (r.m() == 1) {
    family = QuadFamily::N2;
    p1 = poles[0].multiplicity;
    p2 = poles[1].multiplicity;
  } else {
    family = QuadFamily::N1;
    p1 = roots[0].multiplicity;
    p2 = roots[1].multiplicity;
  }
  if (p1 > p2) std::swap(p1, p2);
  const RationalMap canonical =
      family == QuadFamily::N1 ? canonical_n1(p1, p2) : canonical_n2(p1, p2);
  auto witness = quadratic_conjugacy_witness(canonical, build_newton_map(r));
  if (!witness)
    throw Error(ErrorKind::NotNewtonLike, "no verified conjugacy to the canonical quadratic form");
  return {family, p1, p2, *witness};
}

// Conjugate to a polynomial iff there is a superattracting fixed point (numerical route).
inline bool quadratic_has_superattracting_fixed_point(const RationalMap& n) {
  if (n.degree() != 2) throw Error(ErrorKind::NotQuadratic, "map is not quadratic");
  for (const auto& fp : map_fixed_points(n))
    if (std::abs(fp.multiplier) <= kSuperattractingTolerance) return true;
  return false;
}

// Which of the four polynomial-conjugate families R belongs to (pattern route), if any:
// 1: (z-a1)(z-a2)^d2, 2: (z-a1)/(z-b1)^e1, 3: (z-a1)(z-a2)^d2/(z-b1)^d2, 4: (z-a1)^d/(z-b1)^d.
inline std::optional<int> quadratic_polynomial_family(const FactoredRational& r) {
  if (newton_degree(r) != 2) throw Error(ErrorKind::NotQuadratic, "Newton map is not quadratic");
  auto has_simple_root = [&] {
    return std::any_of(r.roots().begin(), r.roots().end(),
                       [](const Factor& f) { return f.multiplicity == 1; });
  };
  if (r.m() == 2 && r.n() == 0 && has_simple_root()) return 1;
  if (r.m() == 1 && r.n() == 1 && r.d() == 1) return 2;
  if (r.m() == 2 && r.n() == 1 && r.d() == r.e() + 1 && has_simple_root()) return 3;
  if (r.m() == 1 && r.n() == 1 && r.d() == r.e()) return 4;
  return std::nullopt;
}

struct Recognition {
  std::optional<FactoredRational> generator;
  std::string reason;
  double coefficient_residual = std::numeric_limits<double>::quiet_NaN();
};

namespace detail {

inline std::string format_multiplier(Cx lambda) {
  char buf[96];
  if (std::abs(lambda.imag()) <= 1e-12 * std::max(1.0, std::abs(lambda.real())))
    std::snprintf(buf, sizeof buf, "%.10g", lambda.real());
  else
    std::snprintf(buf, sizeof buf, "%.10g%+.10gi", lambda.real(), lambda.imag());
  return buf;
}

inline double coefficient_distance(const RationalMap& a, const RationalMap& b) {
  const RationalMap x = a.normalized();
  const RationalMap y = b.normalized();
  if (x.num().degree() != y.num().degree() || x.den().degree() != y.den().degree())
    return std::numeric_limits<double>::infinity();
  double scale = 1.0, diff = 0.0;
  for (const auto* pair : {&x.num(), &x.den()}) scale = std::max(scale, pair->max_abs());
  for (std::size_t i = 0; i < x.num().size(); ++i) diff = std::max(diff, std::abs(x.num()[i] - y.num()[i]));
  for (std::size_t i = 0; i < x.den().size(); ++i) diff = std::max(diff, std::abs(x.den()[i] - y.den()[i]));
  return diff / scale;
}

}  // namespace detail

inline constexpr double kRecognitionTolerance = 1e-7;

// Rebuilds R from the fixed points of n: a finite fixed point with multiplier p/q is a root
// (p < q) or a pole (p > q) of multiplicity q. Never throws for non-Newton input; the reason is
// recorded instead.
inline Recognition characterize_map(const RationalMap& n) {
  Recognition out;
  if (n.degree() < 2) {
    out.reason = "degree < 2";
    return out;
  }
  std::vector<FixedPointRecord> fps;
  try {
    fps = simple_fixed_points(n);
  } catch (const Error& err) {
    out.reason = err.what();
    return out;
  }
  std::vector<Factor> roots, poles;
  for (const auto& fp : fps) {
    if (fp.location.is_infinity()) continue;
    if (!fp.pq) {
      out.reason = "multiplier " + detail::format_multiplier(fp.multiplier) +
                   " not of form p/q with |p-q|=1";
      return out;
    }
    (fp.pq->p < fp.pq->q ? roots : poles).push_back({fp.location.value(), fp.pq->q});
  }
  try {
    FactoredRational r(std::move(roots), std::move(poles));
    const RationalMap rebuilt = build_newton_map(r);
    out.coefficient_residual = detail::coefficient_distance(rebuilt, n);
    if (out.coefficient_residual > kRecognitionTolerance) {
      out.reason = "rebuilt Newton map differs from the input";
      return out;
    }
    out.generator = std::move(r);
  } catch (const Error& err) {
    out.reason = err.what();
  }
  return out;
}

inline std::optional<FactoredRational> recognize_newton_map(const RationalMap& n) {
  if (n.degree() < 2) throw Error(ErrorKind::InvalidArgument, "recognition needs degree >= 2");
  simple_fixed_points(n);  // throws NonSimpleFixedPoint
  return characterize_map(n).generator;
}

// R o T for the affine T(z) = (to_one - to_zero) z + to_zero, which sends 0 and 1 to the two
// chosen points. N_R = T o N_{R o T} o T^-1.
struct AffineNormalization {
  FactoredRational normalized;
  MobiusMap transform;
};

inline AffineNormalization normalize_affine(const FactoredRational& r, Cx to_zero, Cx to_one) {
  const MobiusMap t = MobiusMap::affine(to_one - to_zero, to_zero);
  const MobiusMap inv = t.inverse();
  auto pull_back = [&](const std::vector<Factor>& fs) {
    std::vector<Factor> out;
    for (const Factor& f : fs) out.push_back({inv(f.location).value(), f.multiplicity});
    return out;
  };
  return {FactoredRational(pull_back(r.roots()), pull_back(r.poles())), t};
}

// Default choice: a simple root (else the first root, else the first pole) goes to 0; the next
// root, or failing that the first pole, goes to 1.
inline AffineNormalization normalize_affine(const FactoredRational& r) {
  if (r.m() + r.n() < 2) throw Error(ErrorKind::TooFewPoints, "need two finite roots or poles");
  std::vector<Cx> order;
  for (const Factor& f : r.roots())
    if (f.multiplicity == 1) order.push_back(f.location);
  for (const Factor& f : r.roots())
    if (f.multiplicity != 1) order.push_back(f.location);
  for (const Factor& f : r.poles()) order.push_back(f.location);
  return normalize_affine(r, order[0], order[1]);
}

// ---------------------------------------------------------------------------------------------
// Cubic Newton maps conjugate to polynomials.

enum class TableRow { IA, IB, IC, IIA, IIBi, IIBii, IICi, IICii, IID };

inline std::string_view to_string(TableRow row) noexcept {
  switch (row) {
    case TableRow::IA: return "IA";
    case TableRow::IB: return "IB";
    case TableRow::IC: return "IC";
    case TableRow::IIA: return "IIA";
    case TableRow::IIBi: return "IIBi";
    case TableRow::IIBii: return "IIBii";
    case TableRow::IICi: return "IICi";
    case TableRow::IICii: return "IICii";
    case TableRow::IID: return "IID";
  }
  return "?";
}

namespace detail {

// True iff every preimage of z0 under f is z0 itself.
inline bool sole_preimage(const RationalMap& f, const ExtendedPoint& z0) {
  const int k = f.degree();
  if (z0.is_infinity()) return f.den().degree() == 0 && f.num().degree() == k;
  const Cx w = z0.value();
  const Poly pre = f.num() - w * f.den();
  if (pre.degree() != k) return false;  // some preimage sits at infinity
  for (const Cx& r : poly_roots(pre))
    if (std::abs(r - w) > 1e-7 * std::max(1.0, std::abs(w))) return false;
  return true;
}

inline void require_superattracting(const RationalMap& f, const ExtendedPoint& z0) {
  if (std::abs(multiplier_at(f, z0)) > 1e-8)
    throw Error(ErrorKind::NotSuperattracting, "point is not a superattracting fixed point");
}

// Moebius map sending z0 to infinity while fixing two other finite fixed points of f.
inline MobiusMap send_to_infinity(const RationalMap& f, const ExtendedPoint& z0) {
  std::vector<Cx> others;
  for (const auto& fp : map_fixed_points(f)) {
    if (fp.location.is_infinity()) continue;
    if (z0.is_finite() &&
        std::abs(fp.location.value() - z0.value()) <= 1e-7 * std::max(1.0, std::abs(z0.value())))
      continue;
    others.push_back(fp.location.value());
  }
  if (others.size() < 2)
    throw Error(ErrorKind::InvalidArgument, "need two further finite fixed points");
  return mobius_from_three_points({z0, others[0], others[1]},
                                  {ExtendedPoint::infinity(), others[0], others[1]});
}

}  // namespace detail

// z0 must be a superattracting fixed point of a cubic map; true iff its full preimage is {z0}.
inline bool exceptional_point_check(const RationalMap& f, const ExtendedPoint& z0) {
  if (f.degree() != 3) throw Error(ErrorKind::InvalidArgument, "exceptional_point_check needs a cubic map");
  detail::require_superattracting(f, z0);
  return detail::sole_preimage(f, z0);
}

struct CubicNormalForm {
  Cx a;  // z^3 + a z + b
  Cx b;
  MobiusMap conjugator;              // conjugator o N o conjugator^-1 = z^3 + a z + b
  std::array<int, 3> indices{};      // residue indices of the finite fixed points, descending
};

// Conjugates the exceptional point to infinity, then applies z -> z / sqrt(a3) - a2 / (3 a3).
// sqrt branch: nonnegative real part, nonnegative imaginary part on the cut.
inline std::optional<CubicNormalForm> cubic_normal_form(const RationalMap& f,
                                                        const ExtendedPoint& exceptional) {
  if (f.degree() != 3) throw Error(ErrorKind::InvalidArgument, "cubic_normal_form needs a cubic map");
  const MobiusMap phi = detail::send_to_infinity(f, exceptional);
  const RationalMap poly = conjugate_map(f, phi);
  if (!poly.is_polynomial() || poly.num().degree() != 3) return std::nullopt;
  const Poly p = poly.num().scaled(1.0 / poly.den()[0]);
  const Cx a3 = p[3];
  const Cx a2 = p[2];
  Cx s = std::sqrt(a3);
  if (s.real() == 0.0 && s.imag() < 0.0) s = -s;
  const MobiusMap psi = MobiusMap::affine(1.0 / s, -a2 / (3.0 * a3));
  const MobiusMap total = psi.inverse().compose(phi);
  const RationalMap normal = conjugate_map(f, total);
  if (!normal.is_polynomial()) return std::nullopt;
  const Poly q = normal.num().scaled(1.0 / normal.den()[0]);
  if (q.degree() != 3 || std::abs(q[3] - 1.0) > 1e-8 || std::abs(q[2]) > 1e-8) return std::nullopt;

  CubicNormalForm out{q[1], q[0], total, {}};
  const Poly fixed({out.b, out.a - 1.0, 0.0, 1.0});
  const auto zs = poly_roots(fixed);
  for (std::size_t i = 0; i < 3; ++i) {
    const Cx lambda = 3.0 * zs[i] * zs[i] + out.a;
    if (std::abs(lambda - 1.0) < kParabolicTolerance) return std::nullopt;
    const Cx idx = 1.0 / (1.0 - lambda);
    const double rounded = std::round(idx.real());
    if (std::abs(idx - rounded) > 1e-6 || rounded == 0.0) return std::nullopt;
    out.indices[i] = static_cast<int>(rounded);
  }
  std::sort(out.indices.begin(), out.indices.end(), std::greater<>());
  return out;
}

struct CubicPolyReport {
  TableRow case_id = TableRow::IA;
  // False when the multiplicity pattern admits no superattracting fixed point, so no row
  // condition applies (conjugacy to a polynomial is then impossible).
  bool row_matched = true;
  // Left side minus right side of the row condition, in normalized coordinates. NaN for the
  // "Never" rows and for unmatched patterns.
  Cx condition_value{std::numeric_limits<double>::quiet_NaN(), 0.0};
  bool conjugate_to_poly = false;
  bool exceptional_confirmed = false;
  std::optional<ExtendedPoint> exceptional_point;
  std::optional<CubicNormalForm> normal_form;
  std::optional<MobiusMap> normalization;  // T with R_norm = R o T
};

namespace detail {

struct RowCandidate {
  TableRow row;
  ExtendedPoint point;
  AffineNormalization norm;
  Cx condition;
};

inline const Factor& other_than(const std::vector<Factor>& fs, Cx z, std::size_t which = 0) {
  std::size_t seen = 0;
  for (const Factor& f : fs)
    if (f.location != z && seen++ == which) return f;
  throw Error(ErrorKind::InvalidArgument, "missing factor");
}

inline Cx at(const AffineNormalization& n, Cx original) { return n.transform.inverse()(original).value(); }

inline std::vector<RowCandidate> cubic_candidates(const FactoredRational& r) {
  std::vector<RowCandidate> out;
  const bool case_one = r.d() == r.e() + 1;
  for (const Factor& s : r.roots()) {
    if (s.multiplicity != 1) continue;
    const Cx c = s.location;
    if (case_one && r.m() == 2) {
      const Factor& one = other_than(r.roots(), c);
      const auto norm = normalize_affine(r, c, one.location);
      const Factor& b1 = r.poles()[0];
      const Factor& b2 = r.poles()[1];
      const Cx g1 = at(norm, b1.location), g2 = at(norm, b2.location);
      const double e1 = b1.multiplicity, e2 = b2.multiplicity;
      out.push_back({TableRow::IB, c, norm, (e1 + e2) * g1 * g2 - e1 * g2 - e2 * g1});
    } else if (case_one && r.m() == 3) {
      const Factor& one = other_than(r.roots(), c, 0);
      const Factor& third = other_than(r.roots(), c, 1);
      const auto norm = normalize_affine(r, c, one.location);
      const Cx alpha = at(norm, third.location), gamma = at(norm, r.poles()[0].location);
      const double d2 = one.multiplicity, d3 = third.multiplicity;
      out.push_back({TableRow::IC, c, norm, d2 * alpha * gamma + d3 * gamma - (d2 + d3) * alpha});
    } else if (!case_one && r.m() == 1) {
      const auto norm = normalize_affine(r, c, r.poles()[0].location);
      const Cx gamma = at(norm, r.poles()[1].location);
      const double e1 = r.poles()[0].multiplicity, e2 = r.poles()[1].multiplicity;
      out.push_back({TableRow::IIBii, c, norm, gamma + e2 / e1});
    } else if (!case_one && r.m() == 2) {
      const Factor& one = other_than(r.roots(), c);
      const auto norm = normalize_affine(r, c, one.location);
      const Cx gamma = at(norm, r.poles()[0].location);
      const double d2 = one.multiplicity, e = r.poles()[0].multiplicity;
      out.push_back({TableRow::IICii, c, norm, gamma - e / d2});
    } else if (!case_one && r.m() == 3) {
      const Factor& one = other_than(r.roots(), c, 0);
      const Factor& third = other_than(r.roots(), c, 1);
      const auto norm = normalize_affine(r, c, one.location);
      const Cx alpha = at(norm, third.location);
      const double d2 = one.multiplicity, d3 = third.multiplicity;
      out.push_back({TableRow::IID, c, norm, alpha + d3 / d2});
    }
  }
  if (!case_one && r.d() == r.e()) {
    if (r.m() == 1) {
      const auto norm = normalize_affine(r, r.roots()[0].location, r.poles()[0].location);
      const Cx gamma = at(norm, r.poles()[1].location);
      const double e1 = r.poles()[0].multiplicity, e2 = r.poles()[1].multiplicity;
      out.push_back({TableRow::IIBi, ExtendedPoint::infinity(), norm, gamma + e1 / e2});
    } else if (r.m() == 2) {
      const auto norm = normalize_affine(r, r.roots()[0].location, r.roots()[1].location);
      const Cx gamma = at(norm, r.poles()[0].location);
      const double d1 = r.roots()[0].multiplicity, d2 = r.roots()[1].multiplicity;
      out.push_back({TableRow::IICi, ExtendedPoint::infinity(), norm, gamma - d2 / (d1 + d2)});
    }
  }
  return out;
}

// Row reported when no candidate exists.
inline TableRow structural_row(const FactoredRational& r) {
  if (r.d() == r.e() + 1) {
    if (r.m() == 1) return TableRow::IA;
    return r.m() == 2 ? TableRow::IB : TableRow::IC;
  }
  switch (r.m()) {
    case 0: return TableRow::IIA;
    case 1: return TableRow::IIBi;
    case 2: return TableRow::IICi;
    default: return TableRow::IID;
  }
}

}  // namespace detail

// Locates R in the cubic table, evaluates the row condition and, when it holds, confirms the
// exceptional point and extracts z^3 + a z + b. Every superattracting candidate is tried; the
// first satisfied row wins, otherwise the first candidate's row is reported.
inline CubicPolyReport cubic_polynomial_condition(const FactoredRational& r) {
  if (newton_degree(r) != 3) throw Error(ErrorKind::NotCubic, "Newton map is not cubic");
  CubicPolyReport report;
  report.case_id = detail::structural_row(r);
  const auto candidates = detail::cubic_candidates(r);
  if (candidates.empty()) {
    report.row_matched = report.case_id == TableRow::IA || report.case_id == TableRow::IIA;
    report.normalization = normalize_affine(r).transform;
    return report;
  }
  const detail::RowCandidate* chosen = &candidates.front();
  for (const auto& c : candidates)
    if (std::abs(c.condition) <= kConditionTolerance) {
      chosen = &c;
      break;
    }
  report.case_id = chosen->row;
  report.condition_value = chosen->condition;
  report.normalization = chosen->norm.transform;
  report.conjugate_to_poly = std::abs(chosen->condition) <= kConditionTolerance;
  if (report.conjugate_to_poly) {
    const RationalMap n = build_newton_map(r);
    report.exceptional_point = chosen->point;
    report.exceptional_confirmed = exceptional_point_check(n, chosen->point);
    report.normal_form = cubic_normal_form(n, chosen->point);
  }
  return report;
}

// Conjugates f to a polynomial through an exceptional superattracting fixed point, if any.
inline std::optional<RationalMap> polynomial_conjugate(const RationalMap& f) {
  if (f.is_polynomial()) return f;
  for (const auto& fp : map_fixed_points(f)) {
    if (std::abs(fp.multiplier) > 1e-8) continue;
    if (!detail::sole_preimage(f, fp.location)) continue;
    return conjugate_map(f, detail::send_to_infinity(f, fp.location));
  }
  return std::nullopt;
}

// True iff the polynomial conjugate of f has at least two distinct finite critical points.
// For Newton maps of degree >= 3 this always holds.
inline bool unicritical_check(const RationalMap& f) {
  if (f.degree() < 3) throw Error(ErrorKind::InvalidArgument, "unicritical_check needs degree >= 3");
  const auto poly = polynomial_conjugate(f);
  if (!poly || !poly->is_polynomial())
    throw Error(ErrorKind::InvalidArgument, "map is not conjugate to a polynomial");
  const auto crit = cluster_roots(poly_roots(derivative(poly->num())));
  for (std::size_t i = 0; i < crit.size(); ++i)
    for (std::size_t j = i + 1; j < crit.size(); ++j)
      if (std::abs(crit[i].value - crit[j].value) > 1e-6) return true;
  return false;
}

}  // namespace newton_atlas
