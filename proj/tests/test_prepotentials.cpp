#include <cmath>

#include <gtest/gtest.h>

#include "jwdvv/prepotentials.hpp"
#include "jwdvv/wdvv_checker.hpp"

using namespace jwdvv;

namespace {

RationalChart rchart(ChartPoint coords, std::vector<int> k = {}) {
  RationalChart c;
  c.rank = static_cast<int>(coords.size());
  c.coords = std::move(coords);
  c.multiplicities = std::move(k);
  return c;
}

EllipticChart echart(Complex u, ChartPoint coords, Complex tau) {
  EllipticChart c;
  c.u = u;
  c.coords = std::move(coords);
  c.modular = ModularPoint(tau);
  return c;
}

// F_temp on the z chart, logs continued from anchor.
ScalarField temp_germ(const EllipticChart& anchor) {
  return [anchor](std::span<const Complex> p) {
    EllipticChart c = anchor;
    c.coords.assign(p.begin(), p.end());
    return elliptic_F_temp(c, {}, &anchor);
  };
}

ScalarField quantum_germ(const EllipticChart& anchor) {
  return [anchor](std::span<const Complex> p) {
    EllipticChart c = anchor;
    c.coords.assign(p.begin(), p.end());
    return elliptic_F_quantum(c, {}, &anchor);
  };
}

}  // namespace

TEST(RationalPrepotential, LogFourExample) {
  const PrepotentialModel m = PrepotentialModel::rational(2);
  const std::vector<Complex> p{1.0, -1.0};
  EXPECT_LT(std::abs(m.value(p) - std::log(4.0)), 1e-14);
}

TEST(RationalPrepotential, PermutationSymmetry) {
  // Permuting z¹..z^l leaves F unchanged; so does swapping z⁰ with z¹
  // (z¹ ↦ z⁰ = −Σ z).
  const PrepotentialModel m = PrepotentialModel::rational(3);
  const std::vector<Complex> p{{0.3, 0.1}, {-0.5, 0.05}, {1.1, -0.2}};
  const Complex f = m.value(p);
  const std::vector<Complex> swapped{p[2], p[0], p[1]};
  EXPECT_LT(std::abs(m.value(swapped) - f), 1e-13);
  const Complex z0 = -(p[0] + p[1] + p[2]);
  const std::vector<Complex> with_z0{z0, p[1], p[2]};
  EXPECT_LT(std::abs(m.value(with_z0) - f), 1e-13);
}

TEST(RationalPrepotential, DiscriminantPointRaises) {
  const PrepotentialModel m = PrepotentialModel::rational(3);
  const std::vector<Complex> p{0.4, 0.4, -1.0};
  try {
    m.value(p);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_STREQ(e.what(), "discriminant point");
  }
}

TEST(RationalPrepotential, RankAndShapeValidation) {
  EXPECT_THROW(PrepotentialModel::rational(1), std::invalid_argument);
  const PrepotentialModel m = PrepotentialModel::rational(3);
  const std::vector<Complex> short_point{0.1, 0.2};
  EXPECT_THROW(m.value(short_point), std::invalid_argument);
}

TEST(DeformedPrepotential, ZeroMultiplicityRejected) {
  try {
    PrepotentialModel::deformed({1, 0, 1});
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_STREQ(e.what(), "invalid multiplicity");
  }
  EXPECT_THROW(rchart({0.2, 0.5}, {1, 1, 0}).validate(), DomainError);
}

TEST(DeformedPrepotential, AllOnesIsRational) {
  const ChartPoint z{{0.3, 0.1}, {-0.5, 0.05}, {1.1, -0.2}};
  EXPECT_LT(std::abs(deformed_dual_F(rchart(z, {1, 1, 1, 1})) - rational_dual_F(rchart(z))), 1e-14);
}

TEST(DeformedPrepotential, EliminatesWeightedCentre) {
  const RationalChart c = rchart({0.4, -0.3}, {2, 1, 3});
  const auto full = c.full_coordinates();
  EXPECT_LT(std::abs(2.0 * full[0] + full[1] + 3.0 * full[2]), 1e-15);
}

TEST(DeformedPrepotential, ScalingRelation) {
  // F(2z) = 4F(z) + log 4 · ⅛ Σ 4 k_i k_j (z_i − z_j)².
  const std::vector<int> k{2, 1, 1, -1};
  const RationalChart c = rchart({{0.3, 0.02}, {-0.5, 0.01}, {0.8, -0.03}}, k);
  RationalChart c2 = c;
  for (auto& z : c2.coords) z *= 2.0;
  const auto full = c.full_coordinates();
  Complex quad{0.0, 0.0};
  for (std::size_t i = 0; i < full.size(); ++i)
    for (std::size_t j = 0; j < full.size(); ++j)
      if (i != j) quad += static_cast<double>(k[i] * k[j]) * (full[i] - full[j]) * (full[i] - full[j]);
  const Complex expected = 4.0 * deformed_dual_F(c) + std::log(4.0) * quad / 2.0;
  EXPECT_LT(std::abs(deformed_dual_F(c2) - expected), 1e-12);
}

TEST(EllipticPrepotential, MixedUDerivativesAreMetric) {
  const PrepotentialModel m = PrepotentialModel::elliptic(2);
  const std::vector<Complex> p{{0.1, 0.0}, {0.31, 0.02}, {-0.12, 0.05}, {0.0, 1.7}};
  const Tensor3 c = structure_tensor(m, p);
  const MetricMatrix g = intersection_metric(ModelCase::elliptic, 2);
  const Complex two_pi_i = 2.0 * kPi * kI;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) EXPECT_LT(std::abs(c(0, a, b) - two_pi_i * g(a, b)), 1e-8) << a << b;
}

TEST(EllipticPrepotential, QuantumAndTempAgreeOnPureZThirdDerivatives) {
  const EllipticChart a = echart(0.0, {0.31, -0.12}, Complex{0.0, 1.7});
  const ScalarField fq = quantum_germ(a);
  const ScalarField ft = temp_germ(a);
  for (std::array<int, 3> idx : {std::array<int, 3>{0, 0, 0}, {0, 0, 1}, {0, 1, 1}, {1, 1, 1}}) {
    const Complex q = mixed_partial_3(fq, a.coords, idx, {});
    const Complex t = mixed_partial_3(ft, a.coords, idx, {});
    EXPECT_LT(std::abs(q - t) / std::max(1.0, std::abs(t)), 1e-8);
  }
}

TEST(EllipticPrepotential, TempDistinctIndexThetaFormula) {
  // ∂₁∂₂∂₃ F_temp for l = 3 in terms of θ₁'/θ₁ at z⁰ − z^r and z⁰.
  const EllipticChart a = echart(0.0, {0.21, -0.62, 0.55}, Complex{0.1, 1.4});
  const Complex d = mixed_partial_3(temp_germ(a), a.coords, {0, 1, 2}, {});
  const auto z = a.full_coordinates();
  const auto lg = [&a](Complex w) { return theta1_log_derivative(w, a.modular); };
  Complex expected = -4.0 * lg(z[0]);
  for (int r = 1; r <= 3; ++r) expected += 2.0 * lg(z[0] - z[static_cast<std::size_t>(r)]);
  EXPECT_LT(std::abs(d - expected), 1e-8);
}

TEST(EllipticPrepotential, QuantumVanishesAtOrigin) {
  const EllipticChart c = echart(0.0, {0.0, 0.0}, Complex{0.0, 1.5});
  EXPECT_LT(std::abs(elliptic_F_quantum(c)), 1e-14);
}

TEST(EllipticPrepotential, QuadraticInU) {
  const PrepotentialModel m = PrepotentialModel::elliptic(1);
  const auto f = [&m](double u) {
    const std::vector<Complex> p{u, {0.4, 0.1}, {0.2, 1.3}};
    return m.value(p);
  };
  const Complex third = f(0.3) - 3.0 * f(0.2) + 3.0 * f(0.1) - f(0.0);
  EXPECT_LT(std::abs(third), 1e-11);
}

TEST(EllipticPrepotential, StripAndLatticeValidation) {
  EXPECT_THROW(echart(0.0, {{0.1, 5.0}}, Complex{0.0, 1.0}).validate(), DomainError);
  EXPECT_THROW(echart(0.0, {kPi}, Complex{0.0, 1.0}).validate(), DomainError);
  EXPECT_THROW(echart(0.0, {0.3, 0.3}, Complex{0.0, 1.0}).validate(), DomainError);
  EXPECT_NO_THROW(echart(0.0, {0.3, -0.5}, Complex{0.0, 1.0}).validate());
}

TEST(EllipticPrepotential, LatticeDistance) {
  const ModularPoint m(Complex{0.0, 1.0});
  EXPECT_NEAR(lattice_distance(Complex{kPi + 0.1, 0.0}, m), 0.1, 1e-14);
  EXPECT_NEAR(lattice_distance(Complex{0.0, kPi - 0.2}, m), 0.2, 1e-14);
}

TEST(Germ, StableUnderRadiusHalving) {
  const PrepotentialModel m = PrepotentialModel::elliptic(2);
  const std::vector<Complex> p{{0.05, 0.0}, {0.42, -0.03}, {-0.27, 0.06}, {0.1, 1.6}};
  DiffSpec half;
  half.radius = 0.025;
  const Tensor3 a = structure_tensor(m, p);
  const Tensor3 b = structure_tensor(m, p, half);
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j)
      for (int k = j; k < 4; ++k) EXPECT_LT(std::abs(a(i, j, k) - b(i, j, k)), 1e-8);
}

TEST(Germ, ContinuesAcrossPrincipalCut) {
  // (z¹ − z²)² crosses the negative real axis: the principal value jumps,
  // the germ does not.
  const PrepotentialModel m = PrepotentialModel::rational(2);
  const std::vector<Complex> anchor{{1e-4, 0.5}, {0.0, -0.5}};
  const std::vector<Complex> across{{-1e-4, 0.5}, {0.0, -0.5}};
  const ScalarField g = m.germ(anchor);
  EXPECT_LT(std::abs(g(across) - g(anchor)), 1e-3);
  EXPECT_GT(std::abs(m.value(across) - m.value(anchor)), 0.1);
}

TEST(Germ, FarSampleRaises) {
  const PrepotentialModel m = PrepotentialModel::rational(2);
  const std::vector<Complex> anchor{0.5, -0.3};
  const ScalarField g = m.germ(anchor);
  const std::vector<Complex> far{-0.5, -0.3};
  EXPECT_THROW(g(far), SingularityError);
}

TEST(ModelCase, NamesRoundTrip) {
  for (ModelCase c : {ModelCase::rational, ModelCase::deformed, ModelCase::elliptic})
    EXPECT_EQ(parse_model_case(to_string(c)), c);
  EXPECT_THROW(parse_model_case("nonsense"), std::invalid_argument);
  const auto names = PrepotentialModel::elliptic(2).coordinate_names();
  EXPECT_EQ(names, (std::vector<std::string>{"u", "z1", "z2", "tau"}));
}
