#include "jwdvv/numeric_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace jwdvv {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double factorial(int n) {
  double r = 1.0;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

Complex unit_root(int k, int n) {
  const double angle = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

// A value with an estimate of its absolute rounding noise.
struct Estimate {
  Complex value;
  double noise;
};

// N-node trapezoid estimate of f^{(m)}(center) checked against the embedded
// N/2-node estimate.  The floor allows for noise already present in the samples.
Estimate cauchy_estimate(const std::function<Estimate(Complex)>& f, Complex center, int order,
                         const DiffSpec& spec) {
  const int n = spec.samples;
  Complex full{0.0, 0.0};
  Complex half{0.0, 0.0};
  double noise = 0.0;
  for (int k = 0; k < n; ++k) {
    const Complex w = unit_root(k, n);
    const Estimate sample = f(center + spec.radius * w);
    if (!is_finite(sample.value)) throw SingularityError("singularity on contour");
    const Complex term = sample.value * unit_root((n - (k * order) % n) % n, n);
    full += term;
    if (k % 2 == 0) half += term;
    noise = std::max({noise, sample.noise, kEps * std::abs(sample.value)});
  }
  const double scale = factorial(order) / std::pow(spec.radius, order);
  full *= scale / static_cast<double>(n);
  half *= scale / static_cast<double>(n / 2);
  noise *= scale;
  if (std::abs(full - half) > spec.tolerance * std::abs(full) + 100.0 * noise)
    throw SingularityError("derivative disk hits singularity");
  return {full, noise};
}

// Mixed partial without radius adaptation.  orders[i] is the derivative
// order in coordinate i.
Estimate mixed_partial_fixed(const ScalarField& field, ChartPoint& point,
                             std::span<const int> orders, std::size_t first,
                             const DiffSpec& spec) {
  std::size_t axis = first;
  while (axis < orders.size() && orders[axis] == 0) ++axis;
  if (axis == orders.size()) {
    const Complex value = field(point);
    return {value, kEps * std::abs(value)};
  }

  const Complex center = point[axis];
  auto slice = [&](Complex w) {
    const Complex saved = point[axis];
    point[axis] = w;
    Estimate value;
    try {
      value = mixed_partial_fixed(field, point, orders, axis + 1, spec);
    } catch (...) {
      point[axis] = saved;
      throw;
    }
    point[axis] = saved;
    return value;
  };
  return cauchy_estimate(slice, center, orders[axis], spec);
}

}  // namespace

void ContourSpec::validate() const {
  if (!(radius > 0.0)) throw std::invalid_argument("contour radius must be positive");
  if (samples < 16 || samples % 2 != 0)
    throw std::invalid_argument("contour samples must be even and at least 16");
}

void DiffSpec::validate() const {
  if (!(radius > 0.0)) throw std::invalid_argument("derivative radius must be positive");
  if (!(tolerance > 0.0)) throw std::invalid_argument("derivative tolerance must be positive");
  if (samples < 8 || samples % 2 != 0)
    throw std::invalid_argument("derivative samples must be even and at least 8");
  if (max_halvings < 0) throw std::invalid_argument("max_halvings must be non-negative");
}

Complex contour_integral(const std::function<Complex(Complex)>& f, const ContourSpec& spec) {
  spec.validate();
  Complex sum{0.0, 0.0};
  for (int k = 0; k < spec.samples; ++k) {
    const Complex w = unit_root(k, spec.samples);
    const Complex value = f(spec.center + spec.radius * w);
    if (!is_finite(value)) throw SingularityError("singularity on contour");
    sum += value * w;
  }
  return sum * spec.radius / static_cast<double>(spec.samples);
}

Complex cauchy_derivative(const std::function<Complex(Complex)>& f, Complex center,
                          int order, const DiffSpec& spec) {
  if (order < 0) throw std::invalid_argument("derivative order must be non-negative");
  spec.validate();
  if (order == 0) return f(center);
  if (spec.samples / 2 <= order)
    throw std::invalid_argument("too few derivative samples for the requested order");
  const auto sampled = [&f](Complex w) {
    const Complex value = f(w);
    return Estimate{value, kEps * std::abs(value)};
  };
  return cauchy_estimate(sampled, center, order, spec).value;
}

Complex mixed_partial(const ScalarField& field, std::span<const Complex> point,
                      std::span<const int> orders, const DiffSpec& spec) {
  if (orders.size() != point.size())
    throw std::invalid_argument("orders and point dimensions differ");
  spec.validate();
  for (int o : orders)
    if (o < 0 || spec.samples / 2 <= o)
      throw std::invalid_argument("derivative order out of range for the sample count");
  DiffSpec current = spec;
  ChartPoint work(point.begin(), point.end());
  for (int attempt = 0;; ++attempt) {
    try {
      return mixed_partial_fixed(field, work, orders, 0, current).value;
    } catch (const SingularityError&) {
      if (attempt >= spec.max_halvings) break;
      current.radius *= 0.5;
    }
  }
  throw DomainError("derivative disk hits singularity");
}

Complex mixed_partial_3(const ScalarField& field, std::span<const Complex> point,
                        std::array<int, 3> indices, const DiffSpec& spec) {
  std::sort(indices.begin(), indices.end());
  std::vector<int> orders(point.size(), 0);
  for (int index : indices) {
    if (index < 0 || static_cast<std::size_t>(index) >= point.size())
      throw std::out_of_range("derivative index outside chart");
    ++orders[static_cast<std::size_t>(index)];
  }
  return mixed_partial(field, point, orders, spec);
}

Complex polynomial_eval(std::span<const Complex> coefficients, Complex v) {
  Complex acc{0.0, 0.0};
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * v + *it;
  return acc;
}

std::vector<Complex> polynomial_multiply(std::span<const Complex> a,
                                         std::span<const Complex> b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Complex> out(a.size() + b.size() - 1, Complex{0.0, 0.0});
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<Complex> polynomial_derivative(std::span<const Complex> coefficients) {
  if (coefficients.size() <= 1) return {Complex{0.0, 0.0}};
  std::vector<Complex> out(coefficients.size() - 1);
  for (std::size_t k = 1; k < coefficients.size(); ++k)
    out[k - 1] = static_cast<double>(k) * coefficients[k];
  return out;
}

RootsResult polynomial_roots(std::span<const Complex> coefficients, double tolerance,
                             int max_iterations) {
  if (coefficients.size() < 2) throw std::invalid_argument("polynomial degree must be at least 1");
  const Complex lead = coefficients.back();
  if (lead == Complex{0.0, 0.0}) throw std::invalid_argument("leading coefficient is zero");
  const int degree = static_cast<int>(coefficients.size()) - 1;

  std::vector<Complex> monic(coefficients.begin(), coefficients.end());
  for (auto& c : monic) c /= lead;

  RootsResult result;
  if (degree == 1) {
    result.roots = {-monic[0]};
    return result;
  }

  // Perturbed circle around the root centroid, radius from the Fujiwara bound.
  const Complex centroid = -monic[static_cast<std::size_t>(degree - 1)] / static_cast<double>(degree);
  double bound = 0.0;
  for (int k = 0; k < degree; ++k)
    bound = std::max(bound, std::pow(std::abs(monic[static_cast<std::size_t>(k)]),
                                     1.0 / static_cast<double>(degree - k)));
  const double radius = std::max(2.0 * bound, 1e-3);
  std::vector<Complex> roots(static_cast<std::size_t>(degree));
  for (int k = 0; k < degree; ++k)
    roots[static_cast<std::size_t>(k)] =
        centroid + radius * std::polar(1.0, 0.4 + 2.0 * kPi * k / degree);

  auto rounding_level = [&](Complex v) {
    double acc = 0.0;
    double power = 1.0;
    for (const auto& c : monic) {
      acc += std::abs(c) * power;
      power *= std::abs(v);
    }
    return 8.0 * kEps * acc * degree;
  };

  bool converged = false;
  int iteration = 0;
  for (; iteration < max_iterations && !converged; ++iteration) {
    converged = true;
    for (int i = 0; i < degree; ++i) {
      Complex& x = roots[static_cast<std::size_t>(i)];
      const Complex p = polynomial_eval(monic, x);
      Complex denominator{1.0, 0.0};
      for (int j = 0; j < degree; ++j)
        if (j != i) denominator *= x - roots[static_cast<std::size_t>(j)];
      if (denominator == Complex{0.0, 0.0}) denominator = Complex{kEps, kEps};
      const Complex step = p / denominator;
      x -= step;
      const bool small_step = std::abs(step) <= tolerance * std::max(1.0, std::abs(x));
      const bool at_rounding = std::abs(p) <= rounding_level(x);
      if (!(small_step || at_rounding)) converged = false;
    }
  }
  if (!converged) throw ConvergenceError("root finding failed");

  result.iterations = iteration;
  const double cluster = 10.0 * std::cbrt(tolerance);
  for (int i = 0; i < degree && !result.clustered; ++i)
    for (int j = i + 1; j < degree; ++j)
      if (std::abs(roots[static_cast<std::size_t>(i)] - roots[static_cast<std::size_t>(j)]) <
          cluster * std::max(1.0, std::abs(roots[static_cast<std::size_t>(i)]))) {
        result.clustered = true;
        break;
      }
  result.roots = std::move(roots);
  return result;
}

}  // namespace jwdvv
