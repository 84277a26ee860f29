#include <gtest/gtest.h>

#include <algorithm>

#include "newton_atlas/conjugacy.hpp"
#include "support/oracles.hpp"
#include "support/random_functions.hpp"

namespace na = newton_atlas;
using na::Cx;
using na::ExtendedPoint;
using na::FactoredRational;
using na::Poly;
using na::RationalMap;
using na::TableRow;

namespace {

const ExtendedPoint kInf = ExtendedPoint::infinity();
const FactoredRational kOneBasinCubic({{0.0, 4}}, {{0.5, 2}, {-0.5, 2}});
const FactoredRational kTwoBasinCubic({{Cx{0, 0.5}, 2}, {Cx{0, -0.5}, 2}}, {{0.0, 4}});

void expect_same_spectrum(std::vector<Cx> got, const std::vector<Cx>& want, double tol) {
  ASSERT_EQ(got.size(), want.size());
  for (const Cx& w : want) {
    auto it = std::min_element(got.begin(), got.end(),
                               [&](Cx a, Cx b) { return std::abs(a - w) < std::abs(b - w); });
    EXPECT_LT(std::abs(*it - w), tol) << w;
    got.erase(it);
  }
}

double coefficient_gap(const RationalMap& a, const RationalMap& b) {
  const RationalMap x = a.normalized(), y = b.normalized();
  if (x.num().degree() != y.num().degree() || x.den().degree() != y.den().degree()) return 1e300;
  double gap = 0.0;
  for (std::size_t k = 0; k < x.num().size(); ++k) gap = std::max(gap, std::abs(x.num()[k] - y.num()[k]));
  for (std::size_t k = 0; k < x.den().size(); ++k) gap = std::max(gap, std::abs(x.den()[k] - y.den()[k]));
  return gap;
}

}  // namespace

TEST(MultiplierSpectrum, Examples) {
  expect_same_spectrum(na::multiplier_spectrum(RationalMap::polynomial(Poly({0.0, 0.0, 1.0}))), {0.0, 0.0, 2.0},
                       1e-12);
  expect_same_spectrum(na::multiplier_spectrum(RationalMap(Poly({0.0, -1.0, 2.0}), Poly({-2.0, 3.0}))),
                       {0.5, 0.0, 1.5}, 1e-12);
  expect_same_spectrum(na::multiplier_spectrum(RationalMap::polynomial(Poly({0.0, 0.75, 0.0, 1.0}))),
                       {0.0, 0.75, 1.5, 1.5}, 1e-12);
}

TEST(MultiplierSpectrum, RejectsNonSimple) {
  // z + z^2 has a parabolic fixed point at 0.
  try {
    na::multiplier_spectrum(RationalMap::polynomial(Poly({0.0, 1.0, 1.0})));
    FAIL();
  } catch (const na::Error& e) {
    EXPECT_EQ(e.kind(), na::ErrorKind::NonSimpleFixedPoint);
  }
}

TEST(QuadraticWitness, Examples) {
  const RationalMap n12(Poly({0.0, -1.0, 2.0}), Poly({-2.0, 3.0}));
  const auto self = na::quadratic_conjugacy_witness(n12, n12);
  ASSERT_TRUE(self);
  EXPECT_LE(na::conjugacy_error(n12, n12, *self), 1e-7);

  const RationalMap generic = na::build_newton_map(FactoredRational({{Cx{0.3, 0.2}, 1}}, {{Cx{-1, 0.5}, 2}}));
  const auto w = na::quadratic_conjugacy_witness(na::canonical_n1(1, 2), generic);
  ASSERT_TRUE(w);
  EXPECT_LE(na::conjugacy_error(na::canonical_n1(1, 2), generic, *w), 1e-7);

  EXPECT_FALSE(na::quadratic_conjugacy_witness(na::canonical_n2(1, 1), n12));
  EXPECT_THROW(na::quadratic_conjugacy_witness(na::canonical_n2(1, 1), RationalMap::polynomial(Poly({0.0, 0.5}))),
               na::Error);
}

TEST(CanonicalForms, AreNewtonMapsOfTheirGenerators) {
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b) {
      EXPECT_LT(coefficient_gap(na::canonical_n1(a, b), na::build_newton_map(FactoredRational({{0.0, a}, {1.0, b}}, {}))),
                1e-12);
      EXPECT_LT(coefficient_gap(na::canonical_n2(a, b), na::build_newton_map(FactoredRational({}, {{0.0, a}, {1.0, b}}))),
                1e-12);
    }
}

TEST(ClassifyQuadratic, Examples) {
  const auto a = na::classify_quadratic(FactoredRational({{2.0, 1}, {3.0, 4}}, {}));
  EXPECT_EQ(a.family, na::QuadFamily::N1);
  EXPECT_EQ(a.first, 1);
  EXPECT_EQ(a.second, 4);
  const auto b = na::classify_quadratic(FactoredRational({{Cx{0, 1}, 3}}, {{1.0, 1}}));
  EXPECT_EQ(b.family, na::QuadFamily::N2);
  EXPECT_EQ(b.first, 1);
  EXPECT_EQ(b.second, 1);
  const auto c = na::classify_quadratic(FactoredRational({}, {{0.0, 2}, {1.0, 1}}));
  EXPECT_EQ(c.family, na::QuadFamily::N2);
  EXPECT_EQ(c.first, 1);
  EXPECT_EQ(c.second, 2);
  const auto d = na::classify_quadratic(FactoredRational({{0.0, 1}}, {{1.0, 2}}));
  EXPECT_EQ(d.family, na::QuadFamily::N1);
  EXPECT_EQ(d.first, 1);
  EXPECT_EQ(d.second, 2);
  EXPECT_THROW(na::classify_quadratic(kOneBasinCubic), na::Error);
}

TEST(ClassifyQuadratic, WitnessReproducesCanonicalCoefficients) {
  na::testing::FunctionSampler s(41);
  int done = 0;
  while (done < 40) {
    const FactoredRational r = s.general(3, 4);
    if (na::newton_degree(r) != 2) continue;
    const auto q = na::classify_quadratic(r);
    EXPECT_LE(q.first, q.second);
    const RationalMap conj = na::conjugate_map(na::build_newton_map(r), q.witness);
    EXPECT_LT(coefficient_gap(conj, q.canonical()), 1e-7);
    ++done;
  }
}

TEST(Recognize, Examples) {
  const auto back = na::recognize_newton_map(RationalMap::polynomial(Poly({0.0, 0.75, 0.0, 1.0})));
  ASSERT_TRUE(back);
  EXPECT_EQ(back->m(), 1);
  EXPECT_EQ(back->n(), 2);
  EXPECT_EQ(back->roots()[0].multiplicity, 4);
  EXPECT_LT(std::abs(back->roots()[0].location), 1e-9);

  const auto sq = na::recognize_newton_map(RationalMap::polynomial(Poly({0.0, 0.0, 1.0})));
  ASSERT_TRUE(sq);
  EXPECT_EQ(sq->m(), 1);
  EXPECT_EQ(sq->n(), 1);
  EXPECT_LT(std::abs(sq->roots()[0].location), 1e-12);
  EXPECT_LT(std::abs(sq->poles()[0].location - 1.0), 1e-12);

  EXPECT_FALSE(na::recognize_newton_map(RationalMap::polynomial(Poly({0.0, 0.0, 0.0, 1.0}))));
  EXPECT_EQ(na::characterize_map(RationalMap::polynomial(Poly({0.0, 0.0, 0.0, 1.0}))).reason,
            "multiplier 3 not of form p/q with |p-q|=1");
  const auto minus_one = na::characterize_map(RationalMap::polynomial(Poly({-1.0, 0.0, 1.0})));
  EXPECT_FALSE(minus_one.generator);
  EXPECT_NE(minus_one.reason.find("not of form p/q"), std::string::npos);
}

TEST(Recognize, RoundTrip) {
  na::testing::FunctionSampler s(43);
  for (int trial = 0; trial < 50; ++trial) {
    const FactoredRational r = s.general();
    const auto back = na::recognize_newton_map(na::build_newton_map(r));
    ASSERT_TRUE(back) << "trial " << trial;
    EXPECT_EQ(back->m(), r.m());
    EXPECT_EQ(back->n(), r.n());
  }
}

TEST(NormalizeAffine, Examples) {
  const auto a = na::normalize_affine(kOneBasinCubic);
  EXPECT_LT(std::abs(a.transform.a() / a.transform.d() - 0.5), 1e-15);
  EXPECT_LT(std::abs(a.normalized.poles()[0].location - 1.0), 1e-15);
  EXPECT_LT(std::abs(a.normalized.poles()[1].location + 1.0), 1e-15);

  const auto b = na::normalize_affine(kTwoBasinCubic);
  EXPECT_LT(std::abs(b.transform(1.0).value() - Cx(0, -0.5)), 1e-15);
  EXPECT_LT(std::abs(b.transform(0.0).value() - Cx(0, 0.5)), 1e-15);
  EXPECT_LT(std::abs(b.normalized.poles()[0].location - 0.5), 1e-15);

  const auto c = na::normalize_affine(FactoredRational({{0.0, 1}, {1.0, 2}}, {{3.0, 1}}));
  EXPECT_LT(std::abs(c.transform(Cx{0.4, 2}).value() - Cx(0.4, 2)), 1e-15);

  try {
    na::normalize_affine(FactoredRational({{0.0, 3}}, {}));
    FAIL();
  } catch (const na::Error& e) {
    EXPECT_EQ(e.kind(), na::ErrorKind::TooFewPoints);
  }
}

TEST(CubicCondition, SymmetricCubics) {
  const auto a = na::cubic_polynomial_condition(kOneBasinCubic);
  EXPECT_EQ(a.case_id, TableRow::IIBi);
  EXPECT_TRUE(a.conjugate_to_poly);
  EXPECT_TRUE(a.exceptional_confirmed);
  ASSERT_TRUE(a.normal_form);
  EXPECT_LT(std::abs(a.normal_form->a - 0.75), 1e-10);
  EXPECT_LT(std::abs(a.normal_form->b), 1e-10);
  EXPECT_EQ(a.normal_form->indices, (std::array<int, 3>{4, -2, -2}));

  const auto b = na::cubic_polynomial_condition(kTwoBasinCubic);
  EXPECT_EQ(b.case_id, TableRow::IICi);
  EXPECT_TRUE(b.conjugate_to_poly);
  ASSERT_TRUE(b.normal_form);
  EXPECT_LT(std::abs(b.normal_form->a - 1.25), 1e-10);
  EXPECT_LT(std::abs(b.normal_form->b), 1e-10);
  EXPECT_EQ(b.normal_form->indices, (std::array<int, 3>{2, 2, -4}));
}

TEST(CubicCondition, NeverRows) {
  const auto a = na::cubic_polynomial_condition(FactoredRational({}, {{0.0, 1}, {1.0, 1}, {Cx{0.3, 2}, 1}}));
  EXPECT_EQ(a.case_id, TableRow::IIA);
  EXPECT_FALSE(a.conjugate_to_poly);
  const auto b = na::cubic_polynomial_condition(
      FactoredRational({{0.0, 4}}, {{1.0, 1}, {2.0, 1}, {Cx{0, 1}, 1}}));
  EXPECT_EQ(b.case_id, TableRow::IA);
  EXPECT_FALSE(b.conjugate_to_poly);
  EXPECT_THROW(na::cubic_polynomial_condition(FactoredRational({{0.0, 1}, {1.0, 1}}, {})), na::Error);
}

TEST(CubicCondition, NormalFormConjugatorIsConsistent) {
  const auto rep = na::cubic_polynomial_condition(kTwoBasinCubic);
  ASSERT_TRUE(rep.normal_form);
  const RationalMap poly = na::conjugate_map(na::build_newton_map(kTwoBasinCubic), rep.normal_form->conjugator);
  EXPECT_TRUE(poly.is_polynomial());
  EXPECT_LT(std::abs(poly.num()[1] / poly.den()[0] - rep.normal_form->a), 1e-10);
}

TEST(ExceptionalPoint, Examples) {
  const RationalMap cubic = RationalMap::polynomial(Poly({0.0, 0.75, 0.0, 1.0}));
  EXPECT_TRUE(na::exceptional_point_check(cubic, kInf));
  // Normalized numerator A z^3 with B = C = 0: 0 is exceptional.
  const RationalMap at_zero(Poly({0.0, 0.0, 0.0, 2.0}), Poly({1.0, 0.5, 3.0}));
  EXPECT_TRUE(na::exceptional_point_check(at_zero, 0.0));
  EXPECT_TRUE(na::testing::oracle_totally_invariant(at_zero, 0.0));
  const RationalMap not_exceptional(Poly({0.0, 0.0, 1.0, 2.0}), Poly({1.0, 0.5, 3.0}));
  EXPECT_FALSE(na::exceptional_point_check(not_exceptional, 0.0));
  EXPECT_THROW(na::exceptional_point_check(RationalMap(Poly({0.0, 0.0, 1.0}), Poly({-1.0, 2.0})), 0.0), na::Error);
  try {
    na::exceptional_point_check(cubic, 0.0);
    FAIL();
  } catch (const na::Error& e) {
    EXPECT_EQ(e.kind(), na::ErrorKind::NotSuperattracting);
  }
}

TEST(Unicritical, Examples) {
  EXPECT_TRUE(na::unicritical_check(RationalMap::polynomial(Poly({0.0, 0.75, 0.0, 1.0}))));
  EXPECT_TRUE(na::unicritical_check(RationalMap::polynomial(Poly({0.0, 1.25, 0.0, 1.0}))));
  EXPECT_FALSE(na::unicritical_check(RationalMap::polynomial(Poly({0.0, 0.0, 0.0, 1.0}))));
  EXPECT_FALSE(na::recognize_newton_map(RationalMap::polynomial(Poly({0.0, 0.0, 0.0, 1.0}))));
  // Conjugated away from polynomial form: still decided through the exceptional point.
  const RationalMap moved = na::conjugate_map(RationalMap::polynomial(Poly({0.0, 0.75, 0.0, 1.0})),
                                              na::MobiusMap(1.0, 0.0, 1.0, 2.0));
  EXPECT_FALSE(moved.is_polynomial());
  EXPECT_TRUE(na::unicritical_check(moved));
}

TEST(QuadraticPolynomialRoutes, Agree) {
  na::testing::FunctionSampler s(47);
  int done = 0;
  while (done < 60) {
    const FactoredRational r = s.general(3, 4);
    if (na::newton_degree(r) != 2) continue;
    const bool numeric = na::quadratic_has_superattracting_fixed_point(na::build_newton_map(r));
    EXPECT_EQ(numeric, na::quadratic_polynomial_family(r).has_value());
    ++done;
  }
}
