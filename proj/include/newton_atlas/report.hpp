#pragma once

// JSON views of library results. Requires nlohmann/json.

#include <cmath>
#include <optional>

#include <json.hpp>

#include "newton_atlas/conjugacy.hpp"
#include "newton_atlas/dynamics.hpp"
#include "newton_atlas/function_spec.hpp"
#include "newton_atlas/newton_map.hpp"
#include "newton_atlas/ppm.hpp"

namespace newton_atlas::report {

using Json = nlohmann::ordered_json;

// Non-finite reals become null.
inline Json real(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

inline Json complex(Cx z) {
  if (!is_finite(z)) return nullptr;
  return Json{{"re", z.real() == 0.0 ? 0.0 : z.real()}, {"im", z.imag() == 0.0 ? 0.0 : z.imag()}};
}

inline Json point(const ExtendedPoint& z) {
  return z.is_infinity() ? Json("infinity") : complex(z.value());
}

inline Json coefficients(const Poly& p) {
  Json out = Json::array();
  for (const Cx& c : p.coeffs()) out.push_back(complex(c));
  return out;
}

inline Json rational_map(const RationalMap& f) {
  return {{"num", coefficients(f.num())}, {"den", coefficients(f.den())}};
}

inline Json factors(const std::vector<Factor>& fs) {
  Json out = Json::array();
  for (const Factor& f : fs) out.push_back({{"location", complex(f.location)}, {"multiplicity", f.multiplicity}});
  return out;
}

inline Json factored(const FactoredSpec& s) {
  return {{"kind", "factored"},
          {"roots", format_factor_list(s.roots)},
          {"poles", format_factor_list(s.poles)},
          {"root_list", factors(s.roots)},
          {"pole_list", factors(s.poles)}};
}

inline Json factored(const FactoredRational& r) { return factored(FactoredSpec{r.roots(), r.poles()}); }

inline Json input(const FunctionSpec& spec) {
  if (const auto* f = std::get_if<FactoredSpec>(&spec)) return factored(*f);
  const auto& raw = std::get<RawSpec>(spec);
  Json num = Json::array(), den = Json::array();
  for (const Cx& c : raw.num) num.push_back(complex(c));
  for (const Cx& c : raw.den) den.push_back(complex(c));
  return {{"kind", "raw"},
          {"num", format_coefficients(raw.num)},
          {"den", format_coefficients(raw.den)},
          {"num_coefficients", num},
          {"den_coefficients", den}};
}

inline Json fixed_point(const FixedPointRecord& r) {
  return {{"location", point(r.location)},
          {"multiplier", complex(r.multiplier)},
          {"p", r.pq ? Json(r.pq->p) : Json(nullptr)},
          {"q", r.pq ? Json(r.pq->q) : Json(nullptr)},
          {"index", complex(r.index)},
          {"class", to_string(r.klass)}};
}

inline Json fixed_points(std::span<const FixedPointRecord> fps) {
  Json out = Json::array();
  for (const auto& r : fps) out.push_back(fixed_point(r));
  return out;
}

inline Json critical(const CriticalPoints& c) {
  Json finite = Json::array();
  for (const auto& r : c.finite) finite.push_back({{"location", complex(r.value)}, {"multiplicity", r.multiplicity}});
  return {{"finite", finite}, {"infinity_multiplicity", c.infinity_multiplicity}};
}

inline Json mobius(const MobiusMap& m) {
  return {{"a", complex(m.a())}, {"b", complex(m.b())}, {"c", complex(m.c())}, {"d", complex(m.d())}};
}

inline Json quad_class(const QuadClass& q, const FactoredRational& r) {
  const bool n1 = q.family == QuadFamily::N1;
  const auto family = quadratic_polynomial_family(r);
  return {{"class", to_string(q.family)},
          {n1 ? "d1" : "e1", q.first},
          {n1 ? "d2" : "e2", q.second},
          {"witness", mobius(q.witness)},
          {"witness_error", real(conjugacy_error(q.canonical(), build_newton_map(r), q.witness))},
          {"polynomial_family", family ? Json(*family) : Json(nullptr)},
          {"conjugate_to_poly", family.has_value()}};
}

inline Json cubic_report(const CubicPolyReport& c) {
  Json nf = nullptr, idx = nullptr;
  if (c.normal_form) {
    nf = {{"a", complex(c.normal_form->a)}, {"b", complex(c.normal_form->b)},
          {"conjugator", mobius(c.normal_form->conjugator)}};
    idx = c.normal_form->indices;
  }
  const bool has_condition = is_finite(c.condition_value);
  return {{"case", to_string(c.case_id)},
          {"row_matched", c.row_matched},
          {"condition_value", has_condition ? complex(c.condition_value) : Json(nullptr)},
          {"condition_residual", has_condition ? real(std::abs(c.condition_value)) : Json(nullptr)},
          {"conjugate_to_poly", c.conjugate_to_poly},
          {"exceptional_point", c.exceptional_point ? point(*c.exceptional_point) : Json(nullptr)},
          {"exceptional_confirmed", c.exceptional_confirmed},
          {"normal_form", nf},
          {"indices", idx},
          {"normalization", c.normalization ? mobius(*c.normalization) : Json(nullptr)}};
}

inline Json julia(const JuliaClass& j) {
  return {{"variant", to_string(j.variant)}, {"provenance", j.provenance}};
}

inline Json critical_orbits(const CriticalOrbitReport& rep) {
  Json attractors = Json::array();
  for (const auto& a : rep.attractors) attractors.push_back(point(a.location));
  Json orbits = Json::array();
  for (const auto& o : rep.orbits)
    orbits.push_back({{"critical_point", point(o.critical_point)},
                      {"multiplicity", o.multiplicity},
                      {"attractor", o.attractor_index ? point(rep.attractors[*o.attractor_index].location)
                                                      : Json(nullptr)}});
  return {{"attractors", attractors}, {"orbits", orbits}};
}

inline Json color(const Rgb& c) { return Json::array({c.r, c.g, c.b}); }

}  // namespace newton_atlas::report
