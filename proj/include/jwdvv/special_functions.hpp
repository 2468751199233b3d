#ifndef JWDVV_SPECIAL_FUNCTIONS_HPP
#define JWDVV_SPECIAL_FUNCTIONS_HPP

#include <optional>

#include "jwdvv/numeric_core.hpp"

namespace jwdvv {

// Point τ of the upper half plane together with the nome q = exp(iπτ).
class ModularPoint {
 public:
  // Throws DomainError unless Im τ > 0.
  explicit ModularPoint(Complex tau);

  Complex tau() const { return tau_; }
  Complex q() const { return q_; }
  // log q taken as iπτ exactly, never through a principal logarithm.
  Complex log_q() const { return kI * kPi * tau_; }

 private:
  Complex tau_;
  Complex q_;
};

// Truncation control for every q-series and Li-series.
struct SeriesPolicy {
  int max_terms = 400;
  double tail_tolerance = 1e-14;

  void validate() const;
};

// d-th z-derivative (d = 0..3) of θ₁(z|τ) from the sine series
//   θ₁ = 2 Σ_{n≥0} (−1)ⁿ q^{(n+1/2)²} sin((2n+1)z).
// Throws ConvergenceError("series out of convergence budget") when the
// terms do not fall below the tolerance within max_terms.
Complex theta1(Complex z, const ModularPoint& m, int d = 0, const SeriesPolicy& policy = {});

// θ₁'(z|τ)/θ₁(z|τ).  DomainError("log-derivative at lattice point") when
// |θ₁(z)| < 1e-12.
Complex theta1_log_derivative(Complex z, const ModularPoint& m, const SeriesPolicy& policy = {});

// θ₁ from the triple product 2Gq^{1/4} sin z Π(1−q^{2n}e^{2iz})(1−q^{2n}e^{−2iz})
// with G = Π(1−q^{2n}).  Kept as an independent evaluation route.
Complex theta1_product(Complex z, const ModularPoint& m, const SeriesPolicy& policy = {});

// G = Π_{n≥1}(1 − q^{2n}).
Complex theta_product_constant(const ModularPoint& m, const SeriesPolicy& policy = {});

// Li_N(z) = Σ_{r≥1} z^r / r^N for |z| < 1; N = 0 is z/(1−z) in closed form.
// DomainError("outside series domain") for |z| >= 1.
Complex polylog(int n, Complex z, const SeriesPolicy& policy = {});

// Li_N(ζ) for |ζ| > 1 from the inversion formula
//   Li_N(ζ) = (−1)^{N−1} Li_N(1/ζ) − (2πi)^N/N! · B_N(1/2 + log(−ζ)/(2πi)),
// principal logarithm.  DomainError("branch cut") on the real ray [1, ∞).
Complex polylog_inverted(int n, Complex zeta, const SeriesPolicy& policy = {});

// Li_N(e^μ) for any μ.  The value is the principal one when anchor is
// empty (or equal to μ); otherwise it is the analytic continuation from the
// principal value at e^{anchor} along the straight segment, so that a
// small disk around the anchor never straddles a cut.  Different
// continuations differ by polynomials of degree N−1 in μ.
// DomainError at μ ∈ 2πiℤ when N <= 1 (pole / log singularity).
Complex polylog_exp(int n, Complex mu, std::optional<Complex> anchor = std::nullopt,
                    const SeriesPolicy& policy = {});

// Λ_N(z,q) = −½(2iz)^N/N! − Σ_{n≥0} Li_N(q^{2n}e^{2iz}) + (−1)^N Σ_{n≥1} Li_N(q^{2n}e^{−2iz}),
// N = 0..3, continued from anchor like polylog_exp.
// DomainError("outside fundamental strip") unless |Im z| < π·Im τ.
Complex lambdaN(int n, Complex z, const ModularPoint& m, const SeriesPolicy& policy = {},
                std::optional<Complex> anchor = std::nullopt);

// Elliptic polylogarithm
//   ℒi_r(q,ζ) = Σ_{n≥0} Li_r(qⁿζ) + Σ_{n≥1} Li_r(qⁿζ^{−1}) − χ_r(q,ζ),
//   χ_r = Σ_{j=0}^{r} B_{j+1}/((r−j)!(j+1)!) (log ζ)^{r−j} (log q)^j,
// r odd, principal logarithms.  Requires |q| < 1, |qζ| < 1, |q/ζ| < 1.
Complex elliptic_polylog(int r, Complex qarg, Complex zeta, const SeriesPolicy& policy = {});

// ℒi_3(q², e^{2iz}) with log q² = 2iπτ and log ζ = 2iz taken exactly, so the
// only multivalued piece is the n = 0 term (continued from anchor).
Complex elliptic_trilog(Complex z, const ModularPoint& m, const SeriesPolicy& policy = {},
                        std::optional<Complex> anchor = std::nullopt);

// Normalised Eisenstein series, constant term 1 in q² = e^{2iπτ}:
//   E₂ = 1 − 24 Σ σ₁(n) q^{2n},  E₄ = 1 + 240 Σ σ₃(n) q^{2n}.
Complex eisenstein(int k, const ModularPoint& m, const SeriesPolicy& policy = {});

// Bernoulli number B_n (B₁ = −1/2) and polynomial B_n(x).
double bernoulli_number(int n);
Complex bernoulli_polynomial(int n, Complex x);

// ζ(s) for integer s (s != 1).
double zeta_integer(int s);

}  // namespace jwdvv

#endif  // JWDVV_SPECIAL_FUNCTIONS_HPP
