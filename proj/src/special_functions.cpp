#include "jwdvv/special_functions.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace jwdvv {

namespace {

constexpr int kZetaMin = -160;
constexpr int kZetaMax = 40;

double factorial(int n) {
  double r = 1.0;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

// ζ(s), s >= 2, by Euler–Maclaurin with a fixed cut-off.
double zeta_positive(int s) {
  if (s == 2) return kPi * kPi / 6.0;
  constexpr int kCut = 16;
  double sum = 0.0;
  for (int n = kCut - 1; n >= 1; --n) sum += std::pow(static_cast<double>(n), -s);
  const double m = kCut;
  sum += std::pow(m, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(m, -s);
  constexpr std::array<double, 5> b2j{1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0};
  double rising = s;  // s (s+1) ... (s+2j-2)
  for (int j = 1; j <= 5; ++j) {
    sum += b2j[static_cast<std::size_t>(j - 1)] / factorial(2 * j) * rising *
           std::pow(m, -s - 2 * j + 1);
    rising *= (s + 2 * j - 1.0) * (s + 2 * j);
  }
  return sum;
}

struct ZetaTable {
  std::array<double, kZetaMax - kZetaMin + 1> values{};
  std::array<double, 2 - kZetaMin + 1> bernoulli{};

  ZetaTable() {
    // Bernoulli numbers from ζ(2k); B₁ = −1/2, odd ones above 1 vanish.
    for (int n = 0; n <= 2 - kZetaMin; ++n) {
      double b = 0.0;
      if (n == 0) {
        b = 1.0;
      } else if (n == 1) {
        b = -0.5;
      } else if (n % 2 == 0) {
        const int k = n / 2;
        b = (k % 2 == 1 ? 2.0 : -2.0) * factorial(n) * zeta_positive(n) / std::pow(2.0 * kPi, n);
      }
      bernoulli[static_cast<std::size_t>(n)] = b;
    }
    for (int s = kZetaMin; s <= kZetaMax; ++s) {
      double v = 0.0;
      if (s >= 2) {
        v = zeta_positive(s);
      } else if (s <= 0) {
        const int m = -s;
        v = (m % 2 == 0 ? 1.0 : -1.0) * bernoulli[static_cast<std::size_t>(m + 1)] / (m + 1.0);
      }
      values[static_cast<std::size_t>(s - kZetaMin)] = v;
    }
  }
};

const ZetaTable& zeta_table() {
  static const ZetaTable table;
  return table;
}

// log(−a) on the principal branch, with the positive real ray taken from
// below (Li_N(x) for x > 1 gets the conventional −iπ imaginary part).
Complex log_of_negated(Complex a) {
  if (a.imag() == 0.0 && a.real() > 0.0) return {std::log(a.real()), kPi};
  return std::log(-a);
}

// Σ_{r≥1} x^r / r^n for |x| <= ~0.6.
Complex polylog_series(int n, Complex x, const SeriesPolicy& policy) {
  const double ax = std::abs(x);
  Complex sum{0.0, 0.0};
  Complex power = x;
  for (int r = 1; r <= policy.max_terms; ++r) {
    sum += power / std::pow(static_cast<double>(r), n);
    const double tail = std::pow(ax, r + 1) / (1.0 - ax);
    if (tail <= policy.tail_tolerance * std::max(std::abs(sum), 1e-300) || ax == 0.0) return sum;
    power *= x;
  }
  throw ConvergenceError("series out of convergence budget");
}

// Li_n(e^μ) for |μ| < 2π from the expansion
//   Σ_{k≠n−1} ζ(n−k) μ^k/k! + μ^{n−1}/(n−1)! (H_{n−1} − log(−μ)),
// with log(−μ) supplied by the caller (branch choice).
Complex polylog_log_series(int n, Complex mu, Complex log_neg_mu, const SeriesPolicy& policy) {
  const auto& table = zeta_table();
  double harmonic = 0.0;
  for (int j = 1; j <= n - 1; ++j) harmonic += 1.0 / j;

  Complex sum{0.0, 0.0};
  Complex power{1.0, 0.0};  // μ^k / k!
  double previous = 0.0;
  for (int k = 0; k <= policy.max_terms; ++k) {
    if (k > 0) power *= mu / static_cast<double>(k);
    double magnitude = 0.0;
    if (k == n - 1) {
      const Complex term = power * (harmonic - log_neg_mu);
      sum += term;
      magnitude = std::abs(term);
    } else {
      const int s = n - k;
      if (s < kZetaMin) throw ConvergenceError("series out of convergence budget");
      const double z = table.values[static_cast<std::size_t>(s - kZetaMin)];
      const Complex term = z * power;
      sum += term;
      magnitude = std::abs(term);
    }
    // ζ at negative even integers vanishes, so look at pairs of terms.
    if (k > n + 1 && magnitude + previous <= policy.tail_tolerance * std::max(std::abs(sum), 1e-300))
      return sum;
    previous = magnitude;
  }
  throw ConvergenceError("series out of convergence budget");
}

void check_strip(Complex z, const ModularPoint& m) {
  if (!(std::abs(z.imag()) < kPi * m.tau().imag()))
    throw DomainError("outside fundamental strip");
}

}  // namespace

ModularPoint::ModularPoint(Complex tau) : tau_(tau) {
  if (!(tau.imag() > 0.0)) throw DomainError("tau must lie in the upper half plane");
  q_ = std::exp(kI * kPi * tau);
}

void SeriesPolicy::validate() const {
  if (max_terms < 8) throw std::invalid_argument("max_terms must be at least 8");
  if (!(tail_tolerance > 0.0)) throw std::invalid_argument("tail_tolerance must be positive");
}

double zeta_integer(int s) {
  if (s == 1) throw DomainError("zeta has a pole at s = 1");
  if (s < kZetaMin || s > kZetaMax) {
    if (s > kZetaMax) return 1.0 + std::pow(2.0, -s);
    throw std::out_of_range("zeta argument outside table");
  }
  return zeta_table().values[static_cast<std::size_t>(s - kZetaMin)];
}

double bernoulli_number(int n) {
  if (n < 0 || n > 2 - kZetaMin) throw std::out_of_range("Bernoulli index outside table");
  return zeta_table().bernoulli[static_cast<std::size_t>(n)];
}

Complex bernoulli_polynomial(int n, Complex x) {
  Complex sum{0.0, 0.0};
  for (int k = 0; k <= n; ++k) sum += binomial(n, k) * bernoulli_number(k) * std::pow(x, n - k);
  return sum;
}

Complex theta1(Complex z, const ModularPoint& m, int d, const SeriesPolicy& policy) {
  if (d < 0 || d > 3) throw std::invalid_argument("theta1 derivative order must be 0..3");
  policy.validate();
  Complex sum{0.0, 0.0};
  double largest = 0.0;
  double previous = std::numeric_limits<double>::infinity();
  for (int n = 0; n < policy.max_terms; ++n) {
    const double half = n + 0.5;
    const double freq = 2.0 * n + 1.0;
    const Complex weight = 2.0 * (n % 2 == 0 ? 1.0 : -1.0) *
                           std::exp(m.log_q() * (half * half)) * std::pow(freq, d);
    const Complex arg = freq * z;
    Complex wave;
    switch (d) {
      case 0: wave = std::sin(arg); break;
      case 1: wave = std::cos(arg); break;
      case 2: wave = -std::sin(arg); break;
      default: wave = -std::cos(arg); break;
    }
    const Complex term = weight * wave;
    sum += term;
    const double magnitude = std::abs(weight) * std::cosh(freq * z.imag());
    largest = std::max(largest, magnitude);
    if (magnitude < previous && magnitude <= policy.tail_tolerance * largest && n > 0) return sum;
    previous = magnitude;
  }
  throw ConvergenceError("series out of convergence budget");
}

Complex theta1_log_derivative(Complex z, const ModularPoint& m, const SeriesPolicy& policy) {
  const Complex value = theta1(z, m, 0, policy);
  if (std::abs(value) < 1e-12) throw DomainError("log-derivative at lattice point");
  return theta1(z, m, 1, policy) / value;
}

Complex theta_product_constant(const ModularPoint& m, const SeriesPolicy& policy) {
  policy.validate();
  const Complex q2 = m.q() * m.q();
  Complex product{1.0, 0.0};
  Complex power = q2;
  for (int n = 1; n <= policy.max_terms; ++n) {
    product *= 1.0 - power;
    if (std::abs(power) <= policy.tail_tolerance) return product;
    power *= q2;
  }
  throw ConvergenceError("series out of convergence budget");
}

Complex theta1_product(Complex z, const ModularPoint& m, const SeriesPolicy& policy) {
  policy.validate();
  check_strip(z, m);
  const Complex q2 = m.q() * m.q();
  const Complex up = std::exp(2.0 * kI * z);
  const Complex down = std::exp(-2.0 * kI * z);
  Complex product = 2.0 * theta_product_constant(m, policy) * std::exp(m.log_q() / 4.0) * std::sin(z);
  Complex power = q2;
  for (int n = 1; n <= policy.max_terms; ++n) {
    product *= (1.0 - power * up) * (1.0 - power * down);
    if (std::abs(power) * std::max(std::abs(up), std::abs(down)) <= policy.tail_tolerance)
      return product;
    power *= q2;
  }
  throw ConvergenceError("series out of convergence budget");
}

Complex polylog(int n, Complex z, const SeriesPolicy& policy) {
  if (n < 0) throw std::invalid_argument("polylog order must be non-negative");
  policy.validate();
  if (!(std::abs(z) < 1.0)) throw DomainError("outside series domain");
  if (n == 0) return z / (1.0 - z);
  if (std::abs(z) <= 0.5) return polylog_series(n, z, policy);
  return polylog_exp(n, std::log(z), std::nullopt, policy);
}

Complex polylog_inverted(int n, Complex zeta, const SeriesPolicy& policy) {
  if (n < 0) throw std::invalid_argument("polylog order must be non-negative");
  if (!(std::abs(zeta) > 1.0)) throw DomainError("inversion needs |zeta| > 1");
  if (zeta.imag() == 0.0 && zeta.real() >= 1.0) throw DomainError("branch cut");
  const Complex two_pi_i = 2.0 * kPi * kI;
  const Complex inverse = polylog(n, 1.0 / zeta, policy);
  const Complex correction = std::pow(two_pi_i, n) / factorial(n) *
                             bernoulli_polynomial(n, 0.5 + std::log(-zeta) / two_pi_i);
  return (n % 2 == 1 ? 1.0 : -1.0) * inverse - correction;
}

Complex polylog_exp(int n, Complex mu, std::optional<Complex> anchor, const SeriesPolicy& policy) {
  if (n < 0) throw std::invalid_argument("polylog order must be non-negative");
  policy.validate();
  const Complex base = anchor.value_or(mu);
  const double shift = 2.0 * kPi * std::round(base.imag() / (2.0 * kPi));
  const Complex m = mu - kI * shift;
  const Complex a = base - kI * shift;

  if (m.real() < -0.7) {
    const Complex x = std::exp(m);
    if (n == 0) return x / (1.0 - x);
    return polylog_series(n, x, policy);
  }
  if (n == 0) {
    const Complex x = std::exp(m);
    if (std::abs(1.0 - x) < 1e-300) throw DomainError("polylog pole at 1");
    return x / (1.0 - x);
  }
  if (m.real() > 0.7) {
    // Inversion; log(−e^m) on the side of the cut where the anchor sits.
    const Complex ell = a.imag() > 0.0 ? m - kI * kPi : m + kI * kPi;
    const Complex two_pi_i = 2.0 * kPi * kI;
    const Complex inverse = polylog_series(n, std::exp(-m), policy);
    return (n % 2 == 1 ? 1.0 : -1.0) * inverse -
           std::pow(two_pi_i, n) / factorial(n) * bernoulli_polynomial(n, 0.5 + ell / two_pi_i);
  }
  if (m == Complex{0.0, 0.0}) {
    if (n == 1) throw DomainError("polylog singular at 1");
    return zeta_integer(n);
  }
  Complex log_neg;
  if (a == Complex{0.0, 0.0} || a == m) {
    log_neg = log_of_negated(m);
  } else {
    log_neg = log_of_negated(a) + std::log(m / a);
  }
  return polylog_log_series(n, m, log_neg, policy);
}

Complex lambdaN(int n, Complex z, const ModularPoint& m, const SeriesPolicy& policy,
                std::optional<Complex> anchor) {
  if (n < 0 || n > 3) throw std::invalid_argument("lambdaN order must be 0..3");
  policy.validate();
  check_strip(z, m);
  const Complex two_i_z = 2.0 * kI * z;
  std::optional<Complex> mu_anchor;
  if (anchor) mu_anchor.emplace(2.0 * kI * *anchor);

  Complex sum = -0.5 * std::pow(two_i_z, n) / factorial(n) - polylog_exp(n, two_i_z, mu_anchor, policy);
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  const Complex step = 2.0 * kI * kPi * m.tau();
  const double q2 = std::abs(m.q() * m.q());
  for (int k = 1; k <= policy.max_terms; ++k) {
    const Complex up = two_i_z + step * static_cast<double>(k);
    const Complex down = -two_i_z + step * static_cast<double>(k);
    sum += -polylog_exp(n, up, std::nullopt, policy) + sign * polylog_exp(n, down, std::nullopt, policy);
    const double bound = std::max(std::exp(up.real()), std::exp(down.real())) * q2;
    if (bound / (1.0 - q2) <= policy.tail_tolerance * std::max(std::abs(sum), 1.0)) return sum;
  }
  throw ConvergenceError("series out of convergence budget");
}

Complex elliptic_trilog(Complex z, const ModularPoint& m, const SeriesPolicy& policy,
                        std::optional<Complex> anchor) {
  policy.validate();
  check_strip(z, m);
  const Complex log_zeta = 2.0 * kI * z;
  const Complex log_qarg = 2.0 * m.log_q();
  std::optional<Complex> mu_anchor;
  if (anchor) mu_anchor.emplace(2.0 * kI * *anchor);

  Complex sum = polylog_exp(3, log_zeta, mu_anchor, policy);
  const double q2 = std::abs(m.q() * m.q());
  bool done = false;
  for (int k = 1; k <= policy.max_terms; ++k) {
    const Complex up = log_zeta + log_qarg * static_cast<double>(k);
    const Complex down = -log_zeta + log_qarg * static_cast<double>(k);
    sum += polylog_exp(3, up, std::nullopt, policy) + polylog_exp(3, down, std::nullopt, policy);
    const double bound = std::max(std::exp(up.real()), std::exp(down.real())) * q2;
    if (bound / (1.0 - q2) <= policy.tail_tolerance * std::max(std::abs(sum), 1.0)) {
      done = true;
      break;
    }
  }
  if (!done) throw ConvergenceError("series out of convergence budget");

  Complex chi{0.0, 0.0};
  for (int j = 0; j <= 3; ++j)
    chi += bernoulli_number(j + 1) / (factorial(3 - j) * factorial(j + 1)) *
           std::pow(log_zeta, 3 - j) * std::pow(log_qarg, j);
  return sum - chi;
}

Complex elliptic_polylog(int r, Complex qarg, Complex zeta, const SeriesPolicy& policy) {
  if (r < 1 || r % 2 == 0) throw std::invalid_argument("elliptic polylog order must be odd");
  policy.validate();
  if (!(std::abs(qarg) < 1.0) || qarg == Complex{0.0, 0.0})
    throw DomainError("elliptic polylog needs 0 < |q| < 1");
  if (zeta == Complex{0.0, 0.0}) throw DomainError("elliptic polylog needs zeta != 0");
  if (!(std::abs(qarg * zeta) < 1.0) || !(std::abs(qarg / zeta) < 1.0))
    throw DomainError("outside series domain");

  const Complex log_zeta = std::log(zeta);
  const Complex log_q = std::log(qarg);
  Complex sum = polylog_exp(r, log_zeta, std::nullopt, policy);
  Complex up = qarg * zeta;
  Complex down = qarg / zeta;
  bool done = false;
  for (int k = 1; k <= policy.max_terms; ++k) {
    sum += polylog(r, up, policy) + polylog(r, down, policy);
    const double bound = std::max(std::abs(up), std::abs(down)) * std::abs(qarg);
    if (bound / (1.0 - std::abs(qarg)) <= policy.tail_tolerance * std::max(std::abs(sum), 1.0)) {
      done = true;
      break;
    }
    up *= qarg;
    down *= qarg;
  }
  if (!done) throw ConvergenceError("series out of convergence budget");

  Complex chi{0.0, 0.0};
  for (int j = 0; j <= r; ++j)
    chi += bernoulli_number(j + 1) / (factorial(r - j) * factorial(j + 1)) *
           std::pow(log_zeta, r - j) * std::pow(log_q, j);
  return sum - chi;
}

Complex eisenstein(int k, const ModularPoint& m, const SeriesPolicy& policy) {
  if (k != 2 && k != 4) throw std::invalid_argument("only E2 and E4 are provided");
  policy.validate();
  const Complex q2 = m.q() * m.q();
  const double coefficient = k == 2 ? -24.0 : 240.0;
  Complex lambert{0.0, 0.0};
  Complex power = q2;
  for (int n = 1; n <= policy.max_terms; ++n) {
    // Σ σ_{k−1}(n) q^{2n} = Σ n^{k−1} q^{2n} / (1 − q^{2n})
    const double weight = std::pow(static_cast<double>(n), k - 1);
    const double bound = weight * std::abs(power) / (1.0 - std::abs(power));
    if (bound * std::abs(coefficient) <=
        policy.tail_tolerance * std::abs(1.0 + coefficient * lambert))
      return 1.0 + coefficient * lambert;
    lambert += weight * power / (1.0 - power);
    power *= q2;
  }
  throw ConvergenceError("series out of convergence budget");
}

}  // namespace jwdvv
