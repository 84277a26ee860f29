#pragma once

#include <cstdlib>
#include <string>
#include <thread>

#include "newton_atlas/conjugacy.hpp"
#include "newton_atlas/dynamics.hpp"
#include "newton_atlas/function_spec.hpp"
#include "newton_atlas/newton_map.hpp"
#include "newton_atlas/ppm.hpp"
#include "newton_atlas/report.hpp"

namespace newton_atlas::cli {

using report::Json;

enum ExitCode : int { kOk = 0, kInternal = 1, kValidation = 2, kDegenerate = 3, kUnsupported = 4, kIo = 5 };

inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateMap: return kDegenerate;
    case ErrorKind::NotQuadratic:
    case ErrorKind::NotCubic:
    case ErrorKind::UnsupportedDegree: return kUnsupported;
    case ErrorKind::Io: return kIo;
    case ErrorKind::NonConvergence:
    case ErrorKind::DegreeMismatch: return kInternal;
    default: return kValidation;
  }
}

struct RenderOptions {
  Viewport viewport;
  std::string out;
  int max_iter = kRenderMaxIter;
  double eps = kDefaultCaptureRadius;
  unsigned threads = 1;
};

// "cx,cy,w,h"
inline Viewport parse_viewport(std::string_view text, Viewport vp) {
  detail::SpecScanner s(text, "--viewport");
  const double cx = s.number();
  s.expect(',');
  const double cy = s.number();
  s.expect(',');
  vp.width = s.number();
  s.expect(',');
  vp.height = s.number();
  if (!s.at_end()) s.fail("expected end of input");
  vp.center = {cx, cy};
  return vp;
}

// "WxH"
inline Viewport parse_size(std::string_view text, Viewport vp) {
  detail::SpecScanner s(text, "--size");
  vp.px_w = s.positive_integer();
  if (!s.accept('x')) s.expect('X');
  vp.px_h = s.positive_integer();
  if (!s.at_end()) s.fail("expected end of input");
  return vp;
}

// NEWTON_ATLAS_THREADS caps the render thread count.
inline unsigned render_threads() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("NEWTON_ATLAS_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1)
      throw Error(ErrorKind::InvalidArgument, "NEWTON_ATLAS_THREADS must be an integer >= 1");
    n = std::min(n, static_cast<unsigned>(std::min(v, 1024L)));
  }
  return n;
}

namespace detail {

inline int checked_newton_degree(const FactoredRational& r) {
  const int k = newton_degree(r);
  if (k <= 0) throw Error(ErrorKind::DegenerateMap, "Newton map is constant (degree 0)");
  if (k < 2) throw Error(ErrorKind::InvalidArgument, "degree < 2: Newton map is a Moebius map");
  return k;
}

inline void require_degree(const RationalMap& f, int minimum = 2) {
  if (f.degree() < minimum)
    throw Error(ErrorKind::InvalidArgument, "degree < " + std::to_string(minimum) + " (got " +
                                                std::to_string(f.degree()) + ")");
}

// Classification fields for a generator of Newton degree 2 or 3.
inline void add_classification(Json& out, const FactoredRational& r, int k) {
  out["quad_class"] = nullptr;
  out["cubic_report"] = nullptr;
  if (k == 2) out["quad_class"] = report::quad_class(classify_quadratic(r), r);
  if (k == 3) out["cubic_report"] = report::cubic_report(cubic_polynomial_condition(r));
  out["julia_class"] = (k == 2 || k == 3) ? report::julia(julia_topology_predict(r)) : Json(nullptr);
}

}  // namespace detail

inline Json run_analyze(const FunctionSpec& spec) {
  Json out{{"command", "analyze"}, {"input", report::input(spec)}};
  if (const auto* fs = std::get_if<FactoredSpec>(&spec)) {
    const FactoredRational r = to_factored(*fs);
    const int k = detail::checked_newton_degree(r);
    const RationalMap n = build_newton_map(r);
    const auto fps = fixed_points(r);
    const auto rfpt = verify_rfpt(fps);
    out["degree"] = k;
    out["newton_map"] = report::rational_map(n);
    out["fixed_points"] = report::fixed_points(fps);
    out["rfpt_sum"] = report::complex(rfpt.sum);
    out["rfpt_pass"] = rfpt.pass;
    out["critical_points"] = report::critical(critical_points(n));
    out["critical_orbits"] = report::critical_orbits(classify_critical_orbits(r));
    out["generator"] = report::factored(r);
    detail::add_classification(out, r, k);
    return out;
  }
  const RationalMap f = to_map(std::get<RawSpec>(spec));
  detail::require_degree(f);
  const auto fps = map_fixed_points(f);
  const auto rfpt = verify_rfpt(fps);
  out["degree"] = f.degree();
  out["newton_map"] = report::rational_map(f.normalized());
  out["fixed_points"] = report::fixed_points(fps);
  out["rfpt_sum"] = report::complex(rfpt.sum);
  out["rfpt_pass"] = rfpt.pass;
  out["critical_points"] = report::critical(critical_points(f));
  out["critical_orbits"] = nullptr;
  const Recognition rec = characterize_map(f);
  out["generator"] = rec.generator ? report::factored(*rec.generator) : Json(nullptr);
  if (rec.generator) {
    detail::add_classification(out, *rec.generator, f.degree());
  } else {
    out["quad_class"] = nullptr;
    out["cubic_report"] = nullptr;
    out["julia_class"] = nullptr;
  }
  return out;
}

inline Json run_classify(const FunctionSpec& spec) {
  Json out{{"command", "classify"}, {"input", report::input(spec)}};
  std::optional<FactoredRational> r;
  if (const auto* fs = std::get_if<FactoredSpec>(&spec)) {
    r = to_factored(*fs);
  } else {
    const RationalMap f = to_map(std::get<RawSpec>(spec));
    detail::require_degree(f);
    const Recognition rec = characterize_map(f);
    if (!rec.generator)
      throw Error(ErrorKind::InvalidArgument, "input is not a Newton map: " + rec.reason);
    r = rec.generator;
  }
  const int k = detail::checked_newton_degree(*r);
  if (k != 2 && k != 3)
    throw Error(ErrorKind::UnsupportedDegree,
                "classification covers Newton degrees 2 and 3, got " + std::to_string(k));
  out["degree"] = k;
  out["generator"] = report::factored(*r);
  if (k == 2) out.update(report::quad_class(classify_quadratic(*r), *r));
  else out.update(report::cubic_report(cubic_polynomial_condition(*r)));
  const JuliaClass j = julia_topology_predict(*r);
  out["julia"] = to_string(j.variant);
  out["provenance"] = j.provenance;
  return out;
}

inline Json run_characterize(const FunctionSpec& spec) {
  const auto* raw = std::get_if<RawSpec>(&spec);
  if (!raw) throw Error(ErrorKind::InvalidArgument, "characterize takes a raw map (--num/--den)");
  const RationalMap f = to_map(*raw);
  detail::require_degree(f);
  const Recognition rec = characterize_map(f);
  return {{"command", "characterize"},
          {"input", report::input(spec)},
          {"degree", f.degree()},
          {"is_newton_map", rec.generator.has_value()},
          {"generator", rec.generator ? report::factored(*rec.generator) : Json(nullptr)},
          {"reason", rec.generator ? Json(nullptr) : Json(rec.reason)},
          {"residuals", {{"coefficient", report::real(rec.coefficient_residual)}}}};
}

// Writes the PPM and its JSON sidecar (same path plus ".json"); returns the sidecar.
inline Json run_render(const FunctionSpec& spec, const RenderOptions& opt) {
  std::optional<RationalMap> f;
  std::vector<FixedPointRecord> attractors;
  if (const auto* fs = std::get_if<FactoredSpec>(&spec)) {
    const FactoredRational r = to_factored(*fs);
    detail::checked_newton_degree(r);
    f = build_newton_map(r);
    attractors = attracting_fixed_points(fixed_points(r));
  } else {
    // Any nonconstant raw map can be rendered; a contraction like z/2 gives a single basin.
    f = to_map(std::get<RawSpec>(spec));
    detail::require_degree(*f, 1);
    attractors = attracting_fixed_points(map_fixed_points(*f));
  }
  if (attractors.empty()) throw Error(ErrorKind::InvalidArgument, "map has no attracting fixed point");
  if (opt.out.empty()) throw Error(ErrorKind::InvalidArgument, "--out is required");

  const auto targets = locations(attractors);
  const auto palette = basin_palette(targets);
  const BasinImage img = render_basins(*f, targets, opt.viewport, opt.max_iter, opt.eps, opt.threads);
  write_file(opt.out, encode_ppm(img, palette));

  Json attr = Json::array();
  for (std::size_t k = 0; k < attractors.size(); ++k)
    attr.push_back({{"location", report::point(attractors[k].location)},
                    {"multiplier", report::complex(attractors[k].multiplier)},
                    {"color", report::color(palette[k])}});
  const Viewport& vp = opt.viewport;
  Json sidecar{{"command", "render"},
               {"input", report::input(spec)},
               {"image", opt.out},
               {"format", "P6"},
               {"viewport",
                {{"center", report::complex(vp.center)}, {"width", vp.width}, {"height", vp.height}}},
               {"size", {{"width", vp.px_w}, {"height", vp.px_h}}},
               {"max_iter", opt.max_iter},
               {"eps", opt.eps},
               {"attractors", attr},
               {"unresolved_color", report::color(kUnresolvedColor)},
               {"captured_fraction", captured_fraction(img)}};
  write_file(opt.out + ".json", sidecar.dump(2) + "\n");
  return sidecar;
}

}  // namespace newton_atlas::cli
