#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "newton_atlas/complex.hpp"
#include "newton_atlas/conjugacy.hpp"
#include "newton_atlas/error.hpp"
#include "newton_atlas/newton_map.hpp"
#include "newton_atlas/rational_map.hpp"

namespace newton_atlas {

inline constexpr double kDefaultCaptureRadius = 1e-8;
inline constexpr int kAnalysisMaxIter = 200;
inline constexpr int kRenderMaxIter = 1000;
inline constexpr int kConfirmationSteps = 3;

struct OrbitResult {
  std::optional<std::size_t> attractor_index;
  int iterations = 0;
  ExtendedPoint final_point;
};

namespace detail {

inline bool within(const ExtendedPoint& z, const ExtendedPoint& target, double eps) {
  if (target.is_infinity()) return z.is_infinity() || std::abs(z.value()) > 1.0 / eps;
  return z.is_finite() && std::abs(z.value() - target.value()) < eps;
}

}  // namespace detail

// Iterates f from z0 until the orbit settles within eps of one of the attractors. A finite
// capture must survive a few more steps, so transient close passes are not counted.
inline OrbitResult iterate_orbit(const RationalMap& f, const ExtendedPoint& z0,
                                 const std::vector<ExtendedPoint>& attractors,
                                 int max_iter = kAnalysisMaxIter,
                                 double eps = kDefaultCaptureRadius) {
  if (max_iter < 1) throw Error(ErrorKind::InvalidArgument, "max_iter must be >= 1");
  if (!(eps > 0.0)) throw Error(ErrorKind::InvalidArgument, "eps must be positive");
  ExtendedPoint z = z0;
  for (int it = 0;; ++it) {
    for (std::size_t k = 0; k < attractors.size(); ++k) {
      if (!detail::within(z, attractors[k], eps)) continue;
      bool stays = true;
      if (attractors[k].is_finite()) {
        ExtendedPoint w = z;
        for (int s = 0; s < kConfirmationSteps && stays; ++s) {
          w = f(w);
          stays = detail::within(w, attractors[k], eps);
        }
      }
      if (stays) return {k, it, z};
    }
    if (it == max_iter) return {std::nullopt, it, z};
    z = f(z);
  }
}

struct CriticalOrbit {
  ExtendedPoint critical_point;
  int multiplicity = 1;
  std::optional<std::size_t> attractor_index;  // into CriticalOrbitReport::attractors
};

struct CriticalOrbitReport {
  std::vector<FixedPointRecord> attractors;
  std::vector<CriticalOrbit> orbits;
};

inline std::vector<FixedPointRecord> attracting_fixed_points(std::span<const FixedPointRecord> fps) {
  std::vector<FixedPointRecord> out;
  for (const auto& fp : fps)
    if (fp.klass == FixedPointClass::Superattracting || fp.klass == FixedPointClass::Attracting)
      out.push_back(fp);
  return out;
}

inline std::vector<ExtendedPoint> locations(std::span<const FixedPointRecord> fps) {
  std::vector<ExtendedPoint> out;
  for (const auto& fp : fps) out.push_back(fp.location);
  return out;
}

inline CriticalOrbitReport classify_critical_orbits(const FactoredRational& r,
                                                    int max_iter = kAnalysisMaxIter,
                                                    double eps = kDefaultCaptureRadius) {
  if (newton_degree(r) < 2) throw Error(ErrorKind::InvalidArgument, "Newton degree must be >= 2");
  const RationalMap n = build_newton_map(r);
  CriticalOrbitReport out;
  out.attractors = attracting_fixed_points(fixed_points(r));
  const auto targets = locations(out.attractors);
  const auto crit = critical_points(n);
  for (const auto& c : crit.finite)
    out.orbits.push_back({c.value, c.multiplicity,
                          iterate_orbit(n, c.value, targets, max_iter, eps).attractor_index});
  if (crit.infinity_critical())
    out.orbits.push_back(
        {ExtendedPoint::infinity(), crit.infinity_multiplicity,
         iterate_orbit(n, ExtendedPoint::infinity(), targets, max_iter, eps).attractor_index});
  return out;
}

enum class JuliaTopology { JordanCurve, TotallyDisconnected, SelfIntersectingClosedCurve, Undetermined };

inline std::string_view to_string(JuliaTopology t) noexcept {
  switch (t) {
    case JuliaTopology::JordanCurve: return "JordanCurve";
    case JuliaTopology::TotallyDisconnected: return "TotallyDisconnected";
    case JuliaTopology::SelfIntersectingClosedCurve: return "SelfIntersectingClosedCurve";
    case JuliaTopology::Undetermined: return "Undetermined";
  }
  return "?";
}

struct JuliaClass {
  JuliaTopology variant = JuliaTopology::Undetermined;
  std::string provenance;
};

inline JuliaClass julia_topology_predict(const FactoredRational& r) {
  const int k = newton_degree(r);
  if (k == 2) {
    const QuadClass q = classify_quadratic(r);
    if (q.family == QuadFamily::N1)
      return {JuliaTopology::JordanCurve,
              "quadratic Newton map of type N1: two completely invariant attracting domains"};
    return {JuliaTopology::TotallyDisconnected,
            "quadratic Newton map of type N2: both critical points lie in the basin of infinity"};
  }
  if (k == 3) {
    const CubicPolyReport rep = cubic_polynomial_condition(r);
    if (!rep.conjugate_to_poly || !rep.normal_form)
      return {JuliaTopology::Undetermined,
              "cubic Newton map not conjugate to a polynomial: no topology theorem applies"};
    const auto& idx = rep.normal_form->indices;
    const auto attracting = std::count_if(idx.begin(), idx.end(), [](int n) { return n > 0; });
    if (attracting == 2)
      return {JuliaTopology::SelfIntersectingClosedCurve,
              "cubic Newton map conjugate to a polynomial with two finite attracting fixed points"};
    if (attracting == 1)
      return {JuliaTopology::JordanCurve,
              "cubic Newton map conjugate to a polynomial with one finite attracting fixed point"};
    return {JuliaTopology::Undetermined, "unexpected index pattern for a cubic normal form"};
  }
  throw Error(ErrorKind::UnsupportedDegree,
              "topology prediction covers Newton degrees 2 and 3, got " + std::to_string(k));
}

struct Viewport {
  Cx center;
  double width = 4.0;
  double height = 4.0;
  int px_w = 256;
  int px_h = 256;

  void validate() const {
    if (px_w < 1 || px_h < 1) throw Error(ErrorKind::InvalidArgument, "image size must be positive");
    if (!(width > 0.0) || !(height > 0.0))
      throw Error(ErrorKind::InvalidArgument, "viewport extent must be positive");
  }

  // Center of pixel (i, j); row j = 0 is the top edge.
  [[nodiscard]] Cx pixel_center(int i, int j) const noexcept {
    const double x = center.real() + (i + 0.5 - px_w / 2.0) * (width / px_w);
    const double y = center.imag() - (j + 0.5 - px_h / 2.0) * (height / px_h);
    return {x, y};
  }
};

struct BasinPixel {
  std::optional<std::size_t> attractor_index;
  int iterations = 0;

  friend bool operator==(const BasinPixel&, const BasinPixel&) = default;
};

struct BasinImage {
  Viewport viewport;
  std::vector<BasinPixel> pixels;  // row-major, top row first

  [[nodiscard]] const BasinPixel& at(int i, int j) const {
    return pixels[static_cast<std::size_t>(j) * viewport.px_w + i];
  }
};

// Each pixel is a pure function of its center, so rows may be computed in any order and the
// result is the same for every thread count.
inline BasinImage render_basins(const RationalMap& f, const std::vector<ExtendedPoint>& attractors,
                                const Viewport& vp, int max_iter = kRenderMaxIter,
                                double eps = kDefaultCaptureRadius, unsigned threads = 1) {
  if (attractors.empty()) throw Error(ErrorKind::InvalidArgument, "need at least one attractor");
  vp.validate();
  BasinImage img{vp, std::vector<BasinPixel>(static_cast<std::size_t>(vp.px_w) * vp.px_h)};
  auto work = [&](unsigned first, unsigned stride) {
    for (int j = static_cast<int>(first); j < vp.px_h; j += static_cast<int>(stride))
      for (int i = 0; i < vp.px_w; ++i) {
        const OrbitResult o = iterate_orbit(f, vp.pixel_center(i, j), attractors, max_iter, eps);
        img.pixels[static_cast<std::size_t>(j) * vp.px_w + i] = {o.attractor_index, o.iterations};
      }
  };
  threads = std::clamp(threads, 1u, static_cast<unsigned>(vp.px_h));
  if (threads == 1) {
    work(0, 1);
    return img;
  }
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
  pool.clear();
  return img;
}

inline double captured_fraction(const BasinImage& img) {
  if (img.pixels.empty()) return 0.0;
  const auto n = std::count_if(img.pixels.begin(), img.pixels.end(),
                               [](const BasinPixel& p) { return p.attractor_index.has_value(); });
  return static_cast<double>(n) / static_cast<double>(img.pixels.size());
}

}  // namespace newton_atlas
