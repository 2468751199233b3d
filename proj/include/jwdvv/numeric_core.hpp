#ifndef JWDVV_NUMERIC_CORE_HPP
#define JWDVV_NUMERIC_CORE_HPP

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace jwdvv {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr Complex kI{0.0, 1.0};

// A point on a chart: the independent coordinates only (dependent ones are
// re-solved by the model that owns the chart).
using ChartPoint = std::vector<Complex>;

// Scalar function on a chart.
using ScalarField = std::function<Complex(std::span<const Complex>)>;

// Raised for inputs outside a function's domain (branch cuts, poles, strips,
// discriminant points).  The CLI maps it to exit code 2.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A function was sampled at (or too close to) one of its singularities.
// Callers that can shrink their stencil catch this and retry.
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Iteration or truncation budget exhausted.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ContourSpec {
  Complex center{0.0, 0.0};
  double radius = 1.0;
  int samples = 256;

  // Throws std::invalid_argument unless radius > 0 and samples is even and >= 16.
  void validate() const;
};

struct DiffSpec {
  double radius = 0.05;
  int samples = 32;
  double tolerance = 1e-9;
  // Number of times mixed_partial_3 may halve the radius after a
  // singularity flag.
  int max_halvings = 4;

  void validate() const;
};

// (1/2πi)∮ f(v) dv over the circle, trapezoid rule on equispaced nodes.
Complex contour_integral(const std::function<Complex(Complex)>& f,
                         const ContourSpec& spec);

// f^(order)(center) by the Cauchy integral formula.
//
// The estimate from spec.samples nodes is compared with the one from the
// embedded half-size node set.  If they disagree by more than
// spec.tolerance (relative, with a rounding floor) a SingularityError is
// thrown: the disk is too close to a singularity of f.
Complex cauchy_derivative(const std::function<Complex(Complex)>& f,
                          Complex center, int order, const DiffSpec& spec);

// ∂³F/∂p^a∂p^b∂p^c at point.  Indices are sorted first, so every
// permutation of (a,b,c) runs the same computation.  Repeated indices become
// one higher-order derivative; distinct ones are nested Cauchy circles.  On a
// singularity flag the radius is halved (spec.max_halvings times) before a
// DomainError("derivative disk hits singularity") is raised.
Complex mixed_partial_3(const ScalarField& field, std::span<const Complex> point,
                        std::array<int, 3> indices, const DiffSpec& spec);

// Mixed partial of arbitrary order given as per-coordinate orders.  Building
// block of mixed_partial_3, also used for second derivatives in tests.
Complex mixed_partial(const ScalarField& field, std::span<const Complex> point,
                      std::span<const int> orders, const DiffSpec& spec);

struct RootsResult {
  std::vector<Complex> roots;
  // Set when two roots are closer than 10·tolerance^{1/3}·max(1,|root|);
  // a k-fold root only resolves to about tolerance^{1/k}.
  bool clustered = false;
  int iterations = 0;
};

// All roots of c[0] + c[1] v + ... + c[n] v^n (ascending powers) by
// Durand–Kerner iteration.  Throws std::invalid_argument for a zero leading
// coefficient or degree < 1, ConvergenceError("root finding failed") when the
// iteration cap is reached.
RootsResult polynomial_roots(std::span<const Complex> coefficients,
                             double tolerance = 1e-13, int max_iterations = 500);

// Helpers on ascending-power coefficient vectors.
Complex polynomial_eval(std::span<const Complex> coefficients, Complex v);
std::vector<Complex> polynomial_multiply(std::span<const Complex> a,
                                         std::span<const Complex> b);
std::vector<Complex> polynomial_derivative(std::span<const Complex> coefficients);

}  // namespace jwdvv

#endif  // JWDVV_NUMERIC_CORE_HPP
