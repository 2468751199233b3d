#ifndef JWDVV_PREPOTENTIALS_HPP
#define JWDVV_PREPOTENTIALS_HPP

#include <string>
#include <vector>

#include "jwdvv/numeric_core.hpp"
#include "jwdvv/special_functions.hpp"

namespace jwdvv {

enum class ModelCase { rational, deformed, elliptic };

std::string to_string(ModelCase c);
// Accepts "rational", "deformed", "elliptic".
ModelCase parse_model_case(const std::string& name);

// Coordinates z¹..z^l of the plane Σ_{i=0}^{l} k_i z^i = 0, with z⁰ eliminated.
struct RationalChart {
  int rank = 2;
  ChartPoint coords;               // z¹..z^l
  std::vector<int> multiplicities;  // k₀..k_l; empty means all ones

  int multiplicity(int i) const;
  // z⁰..z^l with z⁰ = −(Σ_{i≥1} k_i z^i)/k₀.
  std::vector<Complex> full_coordinates() const;
  // DomainError("invalid multiplicity") for a zero k_i, DomainError("discriminant point")
  // for coincident z's, std::invalid_argument for shape mismatches.
  void validate() const;
};

// (u, z¹..z^l, τ) with z⁰ = −Σ z^i.
struct EllipticChart {
  Complex u{0.0, 0.0};
  ChartPoint coords;  // z¹..z^l
  ModularPoint modular{Complex{0.0, 1.0}};

  int rank() const { return static_cast<int>(coords.size()); }
  std::vector<Complex> full_coordinates() const;
  // DomainError unless every z^i lies in the strip |Im z| < π Im τ and the z^i
  // (i = 0..l) are distinct and nonzero modulo the lattice πℤ + πτℤ.
  void validate() const;
};

// Distance from z to the nearest point of the lattice πℤ + πτℤ.
double lattice_distance(Complex z, const ModularPoint& m);

struct ModelOptions {
  SeriesPolicy series;
  // Negative control: omit the ((l+1)/4) Σ' ℒi₃(q², e^{2iz^i}) block of F*_quantum.
  bool drop_single_terms = false;
};

// ⅛ Σ_{i≠j} (z_i − z_j)² log (z_i − z_j)² on the plane Σ z^i = 0 (all k_i = 1).
// With anchor, logs are continued from the anchor chart (see polylog_exp).
Complex rational_dual_F(const RationalChart& chart, const RationalChart* anchor = nullptr);

// ⅛ Σ_{i≠j} k_i k_j (z_i − z_j)² log (z_i − z_j)².
Complex deformed_dual_F(const RationalChart& chart, const RationalChart* anchor = nullptr);

// −⅛ Σ'_{i≠j} {ℒi₃(q², e^{2i(z^i−z^j)}) − ℒi₃(q², 1)}
//   + ((l+1)/4) Σ'_i {ℒi₃(q², e^{2iz^i}) − ℒi₃(q², 1)},  primed sums include i = 0.
Complex elliptic_F_quantum(const EllipticChart& chart, const ModelOptions& options = {},
                           const EllipticChart* anchor = nullptr);

// 2πi[½π²τu² − ½u Σ (z^i)²] + F*_quantum.
Complex elliptic_dual_F(const EllipticChart& chart, const ModelOptions& options = {},
                        const EllipticChart* anchor = nullptr);

// ⅛ Σ'_{i≠j} Λ₃(z^i − z^j) − ((l+1)/4) Σ'_i Λ₃(z^i).
Complex elliptic_F_temp(const EllipticChart& chart, const SeriesPolicy& policy = {},
                        const EllipticChart* anchor = nullptr);

// A prepotential on a fixed chart layout:
//   rational / deformed: p = (z¹..z^l)
//   elliptic:            p = (u, z¹..z^l, τ)
class PrepotentialModel {
 public:
  static PrepotentialModel rational(int rank);
  // multiplicities k₀..k_l; rank = size − 1.
  static PrepotentialModel deformed(std::vector<int> multiplicities);
  static PrepotentialModel elliptic(int rank);

  ModelCase kind() const { return kind_; }
  int rank() const { return rank_; }
  int dimension() const { return kind_ == ModelCase::elliptic ? rank_ + 2 : rank_; }
  const std::vector<int>& multiplicities() const { return multiplicities_; }
  std::vector<std::string> coordinate_names() const;

  ModelOptions options;

  RationalChart rational_chart(std::span<const Complex> point) const;
  EllipticChart elliptic_chart(std::span<const Complex> point) const;

  // Principal-branch value.
  Complex value(std::span<const Complex> point) const;

  // The function near anchor, with every logarithm continued from its value
  // at the anchor.  Samples that stray further than half the distance to a
  // branch point raise SingularityError so derivative stencils shrink.
  ScalarField germ(std::span<const Complex> anchor) const;

 private:
  PrepotentialModel(ModelCase kind, int rank, std::vector<int> multiplicities);

  ModelCase kind_;
  int rank_;
  std::vector<int> multiplicities_;
};

}  // namespace jwdvv

#endif  // JWDVV_PREPOTENTIALS_HPP
