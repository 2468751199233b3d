#ifndef JWDVV_WDVV_CHECKER_HPP
#define JWDVV_WDVV_CHECKER_HPP

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "jwdvv/numeric_core.hpp"
#include "jwdvv/prepotentials.hpp"

namespace jwdvv {

using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

// Symmetric nondegenerate metric with a cached inverse.
class MetricMatrix {
 public:
  // DomainError("degenerate metric") when |det| <= 1e-12 or the matrix is
  // not symmetric.
  explicit MetricMatrix(ComplexMatrix entries);

  int dimension() const { return static_cast<int>(entries_.rows()); }
  const ComplexMatrix& entries() const { return entries_; }
  const ComplexMatrix& inverse() const { return inverse_; }
  Complex operator()(int i, int j) const { return entries_(i, j); }

 private:
  ComplexMatrix entries_;
  ComplexMatrix inverse_;
};

// Fully symmetric rank-3 array; only sorted index triples are stored.
class Tensor3 {
 public:
  explicit Tensor3(int dimension = 0);

  int dimension() const { return dim_; }
  Complex operator()(int a, int b, int c) const { return data_[offset(a, b, c)]; }
  void set(int a, int b, int c, Complex value) { data_[offset(a, b, c)] = value; }
  double max_abs() const;

 private:
  std::size_t offset(int a, int b, int c) const;

  int dim_;
  std::vector<Complex> data_;
};

// Closed-form intersection form in the chart coordinates.
//   rational: δ_ij + 1
//   elliptic (u, z¹..z^l, τ): G_uτ = π², G_ij = −(δ_ij + 1)
// flip_z_block negates the z block (negative control).  The deformed case
// throws std::invalid_argument("use oracle metric").
MetricMatrix intersection_metric(ModelCase c, int rank, bool flip_z_block = false);

// Every c_abc = ∂³F/∂p^a∂p^b∂p^c at point.
Tensor3 structure_tensor(const PrepotentialModel& model, std::span<const Complex> point,
                         const DiffSpec& spec = {});

struct ResidualEntry {
  std::array<int, 4> indices{};  // α, β, γ, δ
  double abs_residual = 0.0;
};

struct WDVVReport {
  double max_abs_residual = 0.0;
  double max_relative_residual = 0.0;
  double normalization = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool low_rank = false;               // dimension <= 2: the equations are near vacuous
  std::vector<ResidualEntry> worst;    // largest residuals, descending
};

// One component R(α,β,γ,δ) = Σ c_αβλ G^λμ c_μγδ − c_δβλ G^λμ c_μγα.
Complex wdvv_component(const Tensor3& tensor, const MetricMatrix& metric, std::array<int, 4> index);

// R = Σ c_αβλ G^λμ c_μγδ − c_δβλ G^λμ c_μγα over α<δ, β<γ (R is
// antisymmetric in both pairs), normalised by max|c|²·max row sum of G⁻¹.
WDVVReport wdvv_residual(const Tensor3& tensor, const MetricMatrix& metric,
                         double tolerance = 1e-8, std::size_t keep_worst = 5);

}  // namespace jwdvv

#endif  // JWDVV_WDVV_CHECKER_HPP
