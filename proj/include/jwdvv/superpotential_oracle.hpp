#ifndef JWDVV_SUPERPOTENTIAL_ORACLE_HPP
#define JWDVV_SUPERPOTENTIAL_ORACLE_HPP

#include <vector>

#include "jwdvv/prepotentials.hpp"
#include "jwdvv/wdvv_checker.hpp"

namespace jwdvv {

// λ(v) for one chart point.
//   rational / deformed: Π_{i=0}^{l} (v − z^i)^{k_i}
//   elliptic:            e^{2πiu} Π_{i=0}^{l} θ₁(v − z^i|τ) / θ₁(v|τ)^{l+1}
// Parameters are indexed like the prepotential chart: (z¹..z^l) or (u, z¹..z^l, τ).
class Superpotential {
 public:
  static Superpotential polynomial(RationalChart chart, SeriesPolicy policy = {});
  static Superpotential elliptic(EllipticChart chart, SeriesPolicy policy = {});
  // Superpotential of model at point.
  static Superpotential of(const PrepotentialModel& model, std::span<const Complex> point);

  ModelCase kind() const { return kind_; }
  int dimension() const;
  ChartPoint parameters() const;
  // Same family at another chart point.
  Superpotential at(std::span<const Complex> point) const;

  const RationalChart& rational_chart() const { return rational_; }
  const EllipticChart& elliptic_chart() const { return elliptic_; }
  const SeriesPolicy& policy() const { return policy_; }

  // Zeros and poles of λ in v; elliptic points are representatives mod the lattice.
  std::vector<Complex> zeros() const;
  std::vector<Complex> poles() const;
  // Distance from v to the nearest pole (∞ when there is none).
  double pole_distance(Complex v) const;
  // Distance between two v-points, modulo the lattice in the elliptic case.
  double separation(Complex a, Complex b) const;

 private:
  Superpotential() = default;

  ModelCase kind_ = ModelCase::rational;
  RationalChart rational_;
  EllipticChart elliptic_;
  SeriesPolicy policy_;
};

struct ResidueBudget {
  double radius_fraction = 0.1;  // contour radius / distance to the nearest other singular point
  int samples = 96;              // nodes per contour
  int boundary_samples = 128;    // nodes on the elliptic cell boundary
  DiffSpec param{0.05, 32, 1e-9, 0};

  void validate() const;
};

// DomainError("evaluation at pole") within 1e-8 of a pole.
Complex lambda_eval(const Superpotential& sp, Complex v);

// ∂λ/∂p^a at fixed v, including the induced variation of z⁰.  The u
// derivative is 2πiλ; the others are Cauchy derivatives in the parameter.
// DomainError("parameter singularity") if the parameter disk is not clean.
Complex param_derivative(const Superpotential& sp, int a, Complex v, const ResidueBudget& budget = {});

// dλ/dv by the product rule over the factors of λ (θ₁′ from its series).
Complex lambda_prime(const Superpotential& sp, Complex v);

enum class ResidueForm { eta, c, g, c_star };

// η, g come back in matrix, c, c* in tensor.
struct OracleTensor {
  ResidueForm form = ResidueForm::g;
  ComplexMatrix matrix;
  Tensor3 tensor;
  std::size_t contours = 0;
};

// Critical points of a rational / deformed λ: roots of Σ_i k_i Π_{j≠i}(v − z^j).
// DomainError("degenerate superpotential") when two of them coincide.
std::vector<Complex> critical_points(const Superpotential& sp);

// −Σ_{dλ=0} res of
//   η: ∂′λ ∂″λ / λ′,      c:  ∂′λ ∂″λ ∂‴λ / λ′,
//   g: ∂′logλ ∂″logλ / (logλ)′,  c*: ∂′logλ ∂″logλ ∂‴logλ / (logλ)′,
// each residue a small contour integral.
OracleTensor tensors_from_critical_points(const Superpotential& sp, ResidueForm which,
                                          const ResidueBudget& budget = {});

// Elliptic g or c* from residues at the known singular points z⁰..z^l and 0
// plus the cell-boundary term that the non-periodic ∂_τ log λ leaves behind.
// DomainError("contour overlap") when singular points are closer than four
// contour radii.
OracleTensor tensors_from_complementary_contours(const Superpotential& sp, ResidueForm which,
                                                 const ResidueBudget& budget = {});

// Rational / deformed: largest |Σ_crit res + Σ_{z^i} res + res_∞| over all
// components, relative to max(1, |Σ_crit res|).
double residue_closure(const Superpotential& sp, ResidueForm which, const ResidueBudget& budget = {});

}  // namespace jwdvv

#endif  // JWDVV_SUPERPOTENTIAL_ORACLE_HPP
