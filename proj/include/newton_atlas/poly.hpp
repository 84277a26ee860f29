#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "newton_atlas/complex.hpp"
#include "newton_atlas/error.hpp"

namespace newton_atlas {

// Relative size below which a leading coefficient produced by cancellation is dropped.
inline constexpr double kTrimTolerance = 1e-12;

// Dense complex polynomial, coefficients in ascending degree.
// The zero polynomial has no coefficients and degree -1.
class Poly {
 public:
  Poly() = default;

  explicit Poly(std::vector<Cx> coeffs) : coeffs_(std::move(coeffs)) { strip_exact_zeros(); }

  Poly(std::initializer_list<Cx> coeffs) : coeffs_(coeffs) { strip_exact_zeros(); }

  static Poly constant(Cx c) { return Poly(std::vector<Cx>{c}); }
  static Poly identity() { return Poly(std::vector<Cx>{0.0, 1.0}); }
  // z - root
  static Poly linear_factor(Cx root) { return Poly(std::vector<Cx>{-root, 1.0}); }

  [[nodiscard]] int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] bool is_zero() const noexcept { return coeffs_.empty(); }
  [[nodiscard]] std::span<const Cx> coeffs() const noexcept { return coeffs_; }
  [[nodiscard]] std::size_t size() const noexcept { return coeffs_.size(); }

  // Coefficient of z^k; zero beyond the degree.
  [[nodiscard]] Cx operator[](std::size_t k) const noexcept {
    return k < coeffs_.size() ? coeffs_[k] : Cx{};
  }

  [[nodiscard]] Cx leading() const noexcept { return coeffs_.empty() ? Cx{} : coeffs_.back(); }

  [[nodiscard]] double max_abs() const noexcept {
    double m = 0.0;
    for (const Cx& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }

  // Drops leading coefficients with |c| < rel * scale. A non-positive scale means max|coeffs|.
  [[nodiscard]] Poly trimmed(double rel = kTrimTolerance, double scale = -1.0) const {
    if (scale <= 0.0) scale = max_abs();
    std::vector<Cx> c = coeffs_;
    while (!c.empty() && std::abs(c.back()) < rel * scale) c.pop_back();
    return Poly(std::move(c));
  }

  [[nodiscard]] Poly scaled(Cx s) const {
    std::vector<Cx> c = coeffs_;
    for (Cx& x : c) x *= s;
    return Poly(std::move(c));
  }

  // Divide by the leading coefficient.
  [[nodiscard]] Poly monic() const {
    if (is_zero()) throw Error(ErrorKind::InvalidArgument, "zero polynomial has no monic form");
    return scaled(1.0 / leading());
  }

  friend bool operator==(const Poly& a, const Poly& b) noexcept { return a.coeffs_ == b.coeffs_; }

 private:
  void strip_exact_zeros() {
    while (!coeffs_.empty() && coeffs_.back() == Cx{}) coeffs_.pop_back();
  }

  std::vector<Cx> coeffs_;
};

namespace detail {

inline Poly add_scaled(const Poly& a, const Poly& b, double sign) {
  const std::size_t n = std::max(a.size(), b.size());
  std::vector<Cx> c(n);
  for (std::size_t k = 0; k < n; ++k) c[k] = a[k] + sign * b[k];
  return Poly(std::move(c)).trimmed(kTrimTolerance, std::max(a.max_abs(), b.max_abs()));
}

}  // namespace detail

inline Poly operator+(const Poly& a, const Poly& b) { return detail::add_scaled(a, b, 1.0); }
inline Poly operator-(const Poly& a, const Poly& b) { return detail::add_scaled(a, b, -1.0); }

inline Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Cx> c(a.size() + b.size() - 1);
  const auto ac = a.coeffs();
  const auto bc = b.coeffs();
  for (std::size_t i = 0; i < ac.size(); ++i)
    for (std::size_t j = 0; j < bc.size(); ++j) c[i + j] += ac[i] * bc[j];
  return Poly(std::move(c));
}

inline Poly operator*(Cx s, const Poly& p) { return p.scaled(s); }

enum class PolyOp { Add, Sub, Mul };

inline Poly poly_arith(const Poly& a, const Poly& b, PolyOp op) {
  switch (op) {
    case PolyOp::Add: return a + b;
    case PolyOp::Sub: return a - b;
    case PolyOp::Mul: return a * b;
  }
  return {};
}

// Horner evaluation.
inline Cx eval(const Poly& p, Cx z) noexcept {
  Cx acc{};
  const auto c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

// sum |c_k| |z|^k, the natural scale of rounding error in eval(p, z).
inline double eval_magnitude(const Poly& p, Cx z) noexcept {
  double acc = 0.0;
  const double r = std::abs(z);
  const auto c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

inline Cx poly_eval(const Poly& p, Cx z) noexcept { return eval(p, z); }

inline Poly derivative(const Poly& p) {
  if (p.degree() < 1) return {};
  std::vector<Cx> c(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) c[k - 1] = static_cast<double>(k) * p[k];
  return Poly(std::move(c));
}

inline Poly poly_derivative(const Poly& p) { return derivative(p); }

inline Poly pow(const Poly& p, int exponent) {
  Poly result = Poly::constant(1.0);
  for (int k = 0; k < exponent; ++k) result = result * p;
  return result;
}

// Quotient of p by (z - root); the remainder is discarded.
inline Poly deflate(const Poly& p, Cx root) {
  if (p.degree() < 1) return {};
  const auto c = p.coeffs();
  std::vector<Cx> q(c.size() - 1);
  Cx carry = c.back();
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    q[k] = carry;
    carry = c[k] + carry * root;
  }
  return Poly(std::move(q));
}

struct RootMultiplicity {
  Cx value;
  int multiplicity = 1;
};

// Monic product of (z - root)^multiplicity.
inline Poly poly_from_factors(std::span<const RootMultiplicity> factors) {
  Poly p = Poly::constant(1.0);
  for (const auto& f : factors) {
    if (f.multiplicity < 1) throw Error(ErrorKind::InvalidArgument, "multiplicity must be positive");
    p = p * pow(Poly::linear_factor(f.value), f.multiplicity);
  }
  return p;
}

namespace detail {

// Single-linkage grouping: i and j share a group when |z_i - z_j| <= rel * max(1, |z_i|, |z_j|).
inline std::vector<std::vector<std::size_t>> link_groups(std::span<const Cx> pts, double rel) {
  const std::size_t n = pts.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double scale = std::max({1.0, std::abs(pts[i]), std::abs(pts[j])});
      if (std::abs(pts[i] - pts[j]) <= rel * scale) parent[find(i)] = find(j);
    }
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (slot[r] == n) {
      slot[r] = groups.size();
      groups.emplace_back();
    }
    groups[slot[r]].push_back(i);
  }
  return groups;
}

// Replaces a tight cluster of k approximations to one multiple root by a single value: the
// centroid, polished by Newton steps on the (k-1)-th derivative, where the root is simple.
// A cluster is only collapsed when the result is at least as good a root as its members, so
// nearby distinct roots survive.
inline void collapse_multiple_roots(const Poly& p, std::vector<Cx>& z) {
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  for (const auto& group : link_groups(z, 1e-3)) {
    if (group.size() < 2) continue;
    Cx centroid{};
    double member_residual = 0.0;
    double spread = 0.0;
    for (std::size_t i : group) {
      centroid += z[i];
      member_residual = std::max(
          {member_residual, std::abs(eval(p, z[i])), 8 * kEps * eval_magnitude(p, z[i])});
    }
    centroid /= static_cast<double>(group.size());
    for (std::size_t i : group) spread = std::max(spread, std::abs(z[i] - centroid));

    Poly q = p;
    for (std::size_t k = 1; k < group.size(); ++k) q = derivative(q);
    const Poly dq = derivative(q);
    Cx polished = centroid;
    for (int it = 0; it < 8; ++it) {
      const Cx slope = eval(dq, polished);
      if (slope == Cx{}) break;
      const Cx step = eval(q, polished) / slope;
      polished -= step;
      if (std::abs(step) <= 4 * kEps * (1.0 + std::abs(polished))) break;
    }
    if (std::abs(polished - centroid) > spread) polished = centroid;
    if (std::abs(eval(p, polished)) <= 10.0 * member_residual)
      for (std::size_t i : group) z[i] = polished;
  }
}

}  // namespace detail

// All roots of p, repeated according to multiplicity, by Aberth-Ehrlich simultaneous iteration.
// Each returned root satisfies |p(r)| <= tol * max(max|c|, sum |c_k||r|^k).
inline std::vector<Cx> poly_roots(const Poly& p, double tol = 1e-9, int max_iter = 500) {
  const int n = p.degree();
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "poly_roots needs degree >= 1");
  if (n == 1) return {-p[0] / p[1]};

  const Cx lead = p.leading();
  double radius = 0.0;
  for (int k = 0; k < n; ++k) radius = std::max(radius, std::abs(p[k] / lead));
  radius += 1.0;

  // Fixed seed: results must be reproducible run to run.
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> jitter(-0.25, 0.25);
  std::vector<Cx> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double phase = 2.0 * std::numbers::pi * (k + 0.5 + jitter(rng)) / n + 0.4;
    z[k] = std::polar(radius, phase);
  }

  const Poly dp = derivative(p);
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  std::vector<bool> done(z.size(), false);
  for (int iter = 0; iter < max_iter; ++iter) {
    double max_step = 0.0;
    bool all_done = true;
    for (std::size_t k = 0; k < z.size(); ++k) {
      const Cx pk = eval(p, z[k]);
      if (std::abs(pk) <= 4 * kEps * eval_magnitude(p, z[k])) {
        done[k] = true;
        continue;
      }
      done[k] = false;
      all_done = false;
      const Cx dpk = eval(dp, z[k]);
      Cx repulsion{};
      for (std::size_t j = 0; j < z.size(); ++j)
        if (j != k && z[j] != z[k]) repulsion += 1.0 / (z[k] - z[j]);
      Cx step;
      if (dpk == Cx{}) {
        step = Cx{1e-8, 1e-8} * (1.0 + std::abs(z[k]));
      } else {
        const Cx ratio = pk / dpk;
        const Cx denom = 1.0 - ratio * repulsion;
        step = denom == Cx{} ? ratio : ratio / denom;
      }
      z[k] -= step;
      max_step = std::max(max_step, std::abs(step) / (1.0 + std::abs(z[k])));
    }
    if (all_done || max_step < 1e-16) break;
  }

  detail::collapse_multiple_roots(p, z);

  const double coeff_scale = p.max_abs();
  for (const Cx& r : z) {
    const double bound = tol * std::max(coeff_scale, eval_magnitude(p, r));
    if (!is_finite(r) || std::abs(eval(p, r)) > bound)
      throw Error(ErrorKind::NonConvergence, "root finder missed residual tolerance");
  }
  return z;
}

// Groups numerically repeated roots into (value, multiplicity) pairs.
inline std::vector<RootMultiplicity> cluster_roots(std::span<const Cx> roots, double rel = 1e-6) {
  std::vector<RootMultiplicity> out;
  for (const auto& group : detail::link_groups(roots, rel)) {
    Cx centroid{};
    for (std::size_t i : group) centroid += roots[i];
    out.push_back({centroid / static_cast<double>(group.size()), static_cast<int>(group.size())});
  }
  return out;
}

}  // namespace newton_atlas
