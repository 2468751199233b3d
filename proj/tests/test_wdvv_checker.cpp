#include <cmath>

#include <gtest/gtest.h>

#include "jwdvv/wdvv_checker.hpp"

using namespace jwdvv;

namespace {

Tensor3 permuted(const Tensor3& t, const std::vector<int>& perm) {
  const int n = t.dimension();
  Tensor3 out(n);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      for (int c = b; c < n; ++c) out.set(a, b, c, t(perm[a], perm[b], perm[c]));
  return out;
}

MetricMatrix permuted(const MetricMatrix& g, const std::vector<int>& perm) {
  const int n = g.dimension();
  ComplexMatrix m(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) m(a, b) = g(perm[a], perm[b]);
  return MetricMatrix(m);
}

}  // namespace

TEST(IntersectionMetric, Rational) {
  const MetricMatrix g = intersection_metric(ModelCase::rational, 2);
  EXPECT_EQ(g(0, 0), Complex(2.0, 0.0));
  EXPECT_EQ(g(0, 1), Complex(1.0, 0.0));
  EXPECT_EQ(g(1, 1), Complex(2.0, 0.0));
  const ComplexMatrix id = g.entries() * g.inverse();
  EXPECT_LT((id - ComplexMatrix::Identity(2, 2)).norm(), 1e-15);
}

TEST(IntersectionMetric, Elliptic) {
  const MetricMatrix g = intersection_metric(ModelCase::elliptic, 2);
  ASSERT_EQ(g.dimension(), 4);
  EXPECT_EQ(g(0, 3), Complex(kPi * kPi, 0.0));
  EXPECT_EQ(g(3, 0), Complex(kPi * kPi, 0.0));
  EXPECT_EQ(g(1, 1), Complex(-2.0, 0.0));
  EXPECT_EQ(g(1, 2), Complex(-1.0, 0.0));
  EXPECT_EQ(g(0, 0), Complex(0.0, 0.0));
  EXPECT_EQ(g(0, 1), Complex(0.0, 0.0));
  const MetricMatrix flipped = intersection_metric(ModelCase::elliptic, 2, true);
  EXPECT_EQ(flipped(1, 1), Complex(2.0, 0.0));
  EXPECT_EQ(flipped(0, 3), Complex(kPi * kPi, 0.0));
}

TEST(IntersectionMetric, DeformedNeedsOracle) {
  try {
    intersection_metric(ModelCase::deformed, 3);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_STREQ(e.what(), "use oracle metric");
  }
}

TEST(MetricMatrix, RejectsDegenerateAndAsymmetric) {
  ComplexMatrix m(2, 2);
  m << 1.0, 2.0, 2.0, 4.0;
  try {
    MetricMatrix{m};
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_STREQ(e.what(), "degenerate metric");
  }
  m << 1.0, 2.0, 0.0, 4.0;
  EXPECT_THROW(MetricMatrix{m}, DomainError);
}

TEST(Tensor3, SymmetricStorage) {
  Tensor3 t(3);
  t.set(2, 0, 1, Complex{1.5, -2.0});
  EXPECT_EQ(t(0, 1, 2), Complex(1.5, -2.0));
  EXPECT_EQ(t(1, 2, 0), Complex(1.5, -2.0));
  EXPECT_DOUBLE_EQ(t.max_abs(), 2.5);
}

TEST(StructureTensor, RationalMatchesFiniteDifference) {
  const PrepotentialModel m = PrepotentialModel::rational(2);
  const std::vector<Complex> p{1.0, 0.3};
  const Tensor3 c = structure_tensor(m, p);
  const double h = 1e-2;
  // Fourth-order stencil in z¹ applied three times through a 1D profile.
  const auto f = [&m](double x) {
    const std::vector<Complex> q{x, 0.3};
    return m.value(q);
  };
  const Complex fd = (-f(1.0 + 3 * h) + 8.0 * f(1.0 + 2 * h) - 13.0 * f(1.0 + h) + 13.0 * f(1.0 - h) -
                      8.0 * f(1.0 - 2 * h) + f(1.0 - 3 * h)) /
                     (8.0 * h * h * h);
  EXPECT_LT(std::abs(c(0, 0, 0) - fd), 1e-5 * std::max(1.0, std::abs(fd)));
}

TEST(StructureTensor, EllipticUComponents) {
  const PrepotentialModel m = PrepotentialModel::elliptic(1);
  const std::vector<Complex> p{0.1, 0.3, {0.0, 1.6}};
  const Tensor3 c = structure_tensor(m, p);
  const Complex two_pi_i = 2.0 * kPi * kI;
  EXPECT_LT(std::abs(c(0, 1, 1) + two_pi_i * 2.0), 1e-9);
  EXPECT_LT(std::abs(c(0, 0, 2) - two_pi_i * kPi * kPi), 1e-8);
  EXPECT_LT(std::abs(c(0, 0, 0)), 1e-9);
  EXPECT_LT(std::abs(c(0, 0, 1)), 1e-9);
}

TEST(WDVVResidual, OneDimensionalIsTrivial) {
  Tensor3 t(1);
  t.set(0, 0, 0, 3.0);
  ComplexMatrix g(1, 1);
  g << 2.0;
  const WDVVReport r = wdvv_residual(t, MetricMatrix(g));
  EXPECT_EQ(r.max_abs_residual, 0.0);
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(r.low_rank);
}

TEST(WDVVResidual, RationalRankThree) {
  const PrepotentialModel m = PrepotentialModel::rational(3);
  const std::vector<Complex> p{{0.31, 0.05}, {-0.64, 0.11}, {0.92, -0.07}};
  const WDVVReport r = wdvv_residual(structure_tensor(m, p), intersection_metric(ModelCase::rational, 3));
  EXPECT_LT(r.max_relative_residual, 1e-8);
  EXPECT_TRUE(r.pass);
  EXPECT_FALSE(r.low_rank);
}

TEST(WDVVResidual, EllipticRankOne) {
  const PrepotentialModel m = PrepotentialModel::elliptic(1);
  const std::vector<Complex> p{0.1, 0.3, {0.0, 1.6}};
  const Tensor3 c = structure_tensor(m, p);
  const WDVVReport r = wdvv_residual(c, intersection_metric(ModelCase::elliptic, 1), 1e-6);
  EXPECT_LT(r.max_relative_residual, 1e-6);
  const WDVVReport bad = wdvv_residual(c, intersection_metric(ModelCase::elliptic, 1, true), 1e-6);
  EXPECT_FALSE(bad.pass);
  ASSERT_FALSE(bad.worst.empty());
  EXPECT_EQ(bad.worst.front().abs_residual, bad.max_abs_residual);
}

TEST(WDVVResidual, ComponentAntisymmetry) {
  const PrepotentialModel m = PrepotentialModel::rational(3);
  const std::vector<Complex> p{{0.31, 0.05}, {-0.64, 0.11}, {0.92, -0.07}};
  Tensor3 c = structure_tensor(m, p);
  c.set(0, 1, 2, c(0, 1, 2) + 0.1);  // make the residual nonzero
  const MetricMatrix g = intersection_metric(ModelCase::rational, 3);
  const Complex r = wdvv_component(c, g, {0, 1, 2, 1});
  EXPECT_GT(std::abs(r), 1e-6);
  EXPECT_EQ(wdvv_component(c, g, {0, 1, 2, 0}), Complex(0.0, 0.0));
  EXPECT_LT(std::abs(r + wdvv_component(c, g, {0, 2, 1, 1})), 1e-12);
  EXPECT_LT(std::abs(r + wdvv_component(c, g, {1, 1, 2, 0})), 1e-12);
}

TEST(WDVVResidual, RelabelInvariant) {
  const PrepotentialModel m = PrepotentialModel::elliptic(1);
  const std::vector<Complex> p{0.1, 0.3, {0.0, 1.6}};
  Tensor3 c = structure_tensor(m, p);
  c.set(1, 1, 1, c(1, 1, 1) * 1.01);
  const MetricMatrix g = intersection_metric(ModelCase::elliptic, 1);
  const std::vector<int> perm{2, 0, 1};
  const WDVVReport a = wdvv_residual(c, g, 1e-6);
  const WDVVReport b = wdvv_residual(permuted(c, perm), permuted(g, perm), 1e-6);
  EXPECT_NEAR(a.max_relative_residual, b.max_relative_residual, 1e-12 * a.max_relative_residual + 1e-15);
}

TEST(WDVVResidual, PerturbationIsDetected) {
  const PrepotentialModel m = PrepotentialModel::rational(3);
  const std::vector<Complex> p{{0.31, 0.05}, {-0.64, 0.11}, {0.92, -0.07}};
  Tensor3 c = structure_tensor(m, p);
  c.set(0, 0, 1, c(0, 0, 1) + 1e-3);
  const WDVVReport r = wdvv_residual(c, intersection_metric(ModelCase::rational, 3));
  EXPECT_FALSE(r.pass);
  EXPECT_GT(r.max_relative_residual, 1e-6);
}
