#include <cmath>

#include <gtest/gtest.h>

#include "jwdvv/superpotential_oracle.hpp"

using namespace jwdvv;

namespace {

RationalChart rchart(ChartPoint coords, std::vector<int> k = {}) {
  RationalChart c;
  c.rank = static_cast<int>(coords.size());
  c.coords = std::move(coords);
  c.multiplicities = std::move(k);
  return c;
}

double max_dev(const Tensor3& a, const Tensor3& b) {
  double d = 0.0;
  const int n = a.dimension();
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k) d = std::max(d, std::abs(a(i, j, k) - b(i, j, k)));
  return d;
}

const std::vector<Complex> kRationalPoint{{0.31, 0.05}, {-0.64, 0.11}, {0.92, -0.07}};

}  // namespace

TEST(Superpotential, PolynomialValue) {
  const Superpotential sp = Superpotential::polynomial(rchart({0.3, -1.3}));
  EXPECT_EQ(sp.kind(), ModelCase::rational);
  EXPECT_LT(std::abs(lambda_eval(sp, 2.0) - 5.61), 1e-13);
  EXPECT_EQ(sp.zeros().size(), 3u);
  EXPECT_TRUE(sp.poles().empty());
}

TEST(Superpotential, DeformedPoles) {
  const Superpotential sp = Superpotential::polynomial(rchart({0.3, -0.8, 0.6}, {1, 1, 1, -1}));
  EXPECT_EQ(sp.kind(), ModelCase::deformed);
  ASSERT_EQ(sp.poles().size(), 1u);
  EXPECT_LT(std::abs(sp.poles().front() - 0.6), 1e-15);
  try {
    lambda_eval(sp, 0.6);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_STREQ(e.what(), "evaluation at pole");
  }
}

TEST(Superpotential, EllipticPeriodicity) {
  const PrepotentialModel m = PrepotentialModel::elliptic(2);
  const std::vector<Complex> p{0.1, 0.4, {-0.3, 0.1}, {0.1, 1.5}};
  const Superpotential sp = Superpotential::of(m, p);
  const Complex v{0.7, 0.2};
  EXPECT_LT(std::abs(lambda_eval(sp, v + kPi) - lambda_eval(sp, v)), 1e-12 * std::abs(lambda_eval(sp, v)));
  EXPECT_THROW(lambda_eval(sp, 0.0), DomainError);
  EXPECT_LT(sp.separation(0.1, 0.1 + kPi), 1e-14);
}

TEST(ParamDerivative, UIsTwoPiILambda) {
  const PrepotentialModel m = PrepotentialModel::elliptic(1);
  const std::vector<Complex> p{0.1, 0.4, {0.0, 1.5}};
  const Superpotential sp = Superpotential::of(m, p);
  const Complex v{0.9, -0.1};
  EXPECT_LT(std::abs(param_derivative(sp, 0, v) - 2.0 * kPi * kI * lambda_eval(sp, v)), 1e-12);
}

TEST(ParamDerivative, ChainRuleThroughEliminatedCoordinate) {
  const std::vector<int> k{2, 1, 1, -1};
  const Superpotential sp = Superpotential::polynomial(rchart({0.3, -0.8, 0.6}, k));
  const Complex v{1.4, 0.3};
  const auto z = sp.rational_chart().full_coordinates();
  const Complex lam = lambda_eval(sp, v);
  for (int a = 0; a < 3; ++a) {
    const double ka = k[static_cast<std::size_t>(a + 1)];
    const Complex expected = lam * ka * (1.0 / (v - z[0]) - 1.0 / (v - z[static_cast<std::size_t>(a + 1)]));
    EXPECT_LT(std::abs(param_derivative(sp, a, v) - expected), 1e-10 * std::max(1.0, std::abs(expected)));
  }
}

TEST(ParamDerivative, TauMatchesFiniteDifference) {
  const PrepotentialModel m = PrepotentialModel::elliptic(1);
  const std::vector<Complex> p{0.1, 0.4, {0.0, 1.5}};
  const Superpotential sp = Superpotential::of(m, p);
  const Complex v{0.9, -0.1};
  const double h = 1e-4;
  std::vector<Complex> plus = p;
  std::vector<Complex> minus = p;
  plus[2] += h;
  minus[2] -= h;
  const Complex fd = (lambda_eval(sp.at(plus), v) - lambda_eval(sp.at(minus), v)) / (2.0 * h);
  EXPECT_LT(std::abs(param_derivative(sp, 2, v) - fd), 1e-7);
}

TEST(LambdaPrime, MatchesPolynomialDerivative) {
  const Superpotential sp = Superpotential::polynomial(rchart({0.3, -1.3}));
  // λ = (v − 1)(v − 0.3)(v + 1.3)
  const Complex v{0.5, 0.4};
  const Complex expected = (v - 0.3) * (v + 1.3) + (v - 1.0) * (v + 1.3) + (v - 1.0) * (v - 0.3);
  EXPECT_LT(std::abs(lambda_prime(sp, v) - expected), 1e-10);
}

TEST(CriticalPoints, DegenerateRaises) {
  const Complex w = std::exp(2.0 * kPi * kI / 3.0);
  const Superpotential sp = Superpotential::polynomial(rchart({w, w * w}));
  try {
    critical_points(sp);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_STREQ(e.what(), "degenerate superpotential");
  }
}

TEST(RationalOracle, EtaSymmetricAndMetricConstant) {
  const PrepotentialModel m = PrepotentialModel::rational(3);
  const Superpotential sp = Superpotential::of(m, kRationalPoint);
  const ComplexMatrix eta = tensors_from_critical_points(sp, ResidueForm::eta).matrix;
  EXPECT_LT((eta - eta.transpose()).norm(), 1e-10 * eta.norm());
  const MetricMatrix closed = intersection_metric(ModelCase::rational, 3);
  const std::vector<Complex> other{{-0.2, 0.1}, {0.75, -0.04}, {0.05, 0.3}};
  for (const auto& p : {kRationalPoint, other}) {
    const OracleTensor g = tensors_from_critical_points(sp.at(p), ResidueForm::g);
    EXPECT_EQ(g.contours, 3u);
    EXPECT_LT((g.matrix - closed.entries()).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(RationalOracle, CStarMatchesPrepotential) {
  const PrepotentialModel m = PrepotentialModel::rational(3);
  const Superpotential sp = Superpotential::of(m, kRationalPoint);
  const Tensor3 cs = tensors_from_critical_points(sp, ResidueForm::c_star).tensor;
  EXPECT_LT(max_dev(cs, structure_tensor(m, kRationalPoint)), 1e-7);
}

TEST(RationalOracle, RelabelCovariance) {
  const PrepotentialModel m = PrepotentialModel::rational(3);
  const std::vector<Complex> swapped{kRationalPoint[1], kRationalPoint[0], kRationalPoint[2]};
  const Tensor3 a = tensors_from_critical_points(Superpotential::of(m, kRationalPoint), ResidueForm::c_star).tensor;
  const Tensor3 b = tensors_from_critical_points(Superpotential::of(m, swapped), ResidueForm::c_star).tensor;
  const int perm[3] = {1, 0, 2};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) EXPECT_LT(std::abs(a(i, j, k) - b(perm[i], perm[j], perm[k])), 1e-10);
}

TEST(RationalOracle, ResidueClosure) {
  const Superpotential sp = Superpotential::of(PrepotentialModel::rational(3), kRationalPoint);
  for (ResidueForm f : {ResidueForm::eta, ResidueForm::c, ResidueForm::g, ResidueForm::c_star})
    EXPECT_LT(residue_closure(sp, f), 1e-8);
  const Superpotential def = Superpotential::polynomial(rchart({0.3, -0.8, 0.6}, {1, 1, 1, -1}));
  EXPECT_LT(residue_closure(def, ResidueForm::g), 1e-8);
}

TEST(RationalOracle, ContourRadiusRobustness) {
  const Superpotential sp = Superpotential::of(PrepotentialModel::rational(3), kRationalPoint);
  ResidueBudget half;
  half.radius_fraction = 0.05;
  const Tensor3 a = tensors_from_critical_points(sp, ResidueForm::c_star).tensor;
  const Tensor3 b = tensors_from_critical_points(sp, ResidueForm::c_star, half).tensor;
  EXPECT_LT(max_dev(a, b) / std::max(1.0, a.max_abs()), 1e-8);
}

TEST(DeformedOracle, MetricSupportsWDVV) {
  const PrepotentialModel m = PrepotentialModel::deformed({2, 1, 1, 1});
  const std::vector<Complex> p{{0.3, 0.05}, {-0.7, 0.1}, {0.9, -0.05}};
  const Superpotential sp = Superpotential::of(m, p);
  const OracleTensor g = tensors_from_critical_points(sp, ResidueForm::g);
  const Tensor3 c = structure_tensor(m, p);
  EXPECT_LT(max_dev(tensors_from_critical_points(sp, ResidueForm::c_star).tensor, c), 1e-7);
  EXPECT_LT(wdvv_residual(c, MetricMatrix(g.matrix)).max_relative_residual, 1e-7);
}

TEST(EllipticOracle, RankOneMetricAndStructureConstants) {
  const PrepotentialModel m = PrepotentialModel::elliptic(1);
  const std::vector<Complex> p{0.05, 0.3, {0.0, 1.8}};
  const Superpotential sp = Superpotential::of(m, p);
  const OracleTensor g = tensors_from_complementary_contours(sp, ResidueForm::g);
  const MetricMatrix closed = intersection_metric(ModelCase::elliptic, 1);
  EXPECT_LT((g.matrix - closed.entries()).cwiseAbs().maxCoeff(), 1e-6);
  const Tensor3 cs = tensors_from_complementary_contours(sp, ResidueForm::c_star).tensor;
  EXPECT_LT(std::abs(cs(0, 1, 1) + 2.0 * kPi * kI * 2.0), 1e-6);
  EXPECT_LT(max_dev(cs, structure_tensor(m, p)), 1e-6);
}

TEST(EllipticOracle, MetricIndependentOfU) {
  const PrepotentialModel m = PrepotentialModel::elliptic(1);
  const std::vector<Complex> a{0.05, 0.3, {0.1, 1.6}};
  const std::vector<Complex> b{0.4, 0.3, {0.1, 1.6}};
  const ComplexMatrix ga = tensors_from_complementary_contours(Superpotential::of(m, a), ResidueForm::g).matrix;
  const ComplexMatrix gb = tensors_from_complementary_contours(Superpotential::of(m, b), ResidueForm::g).matrix;
  EXPECT_LT((ga - gb).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(EllipticOracle, UnsupportedFormAndOverlap) {
  const PrepotentialModel m = PrepotentialModel::elliptic(1);
  const std::vector<Complex> p{0.05, 0.3, {0.0, 1.8}};
  const Superpotential sp = Superpotential::of(m, p);
  EXPECT_THROW(tensors_from_complementary_contours(sp, ResidueForm::eta), std::invalid_argument);
  ResidueBudget wide;
  wide.radius_fraction = 0.5;
  try {
    tensors_from_complementary_contours(sp, ResidueForm::g, wide);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_STREQ(e.what(), "contour overlap");
  }
}

TEST(ResidueBudget, Invariants) {
  ResidueBudget b;
  b.radius_fraction = 0.6;
  EXPECT_THROW(b.validate(), std::invalid_argument);
  b = ResidueBudget{};
  b.samples = 4;
  EXPECT_THROW(b.validate(), std::invalid_argument);
}
