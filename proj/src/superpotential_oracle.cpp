#include "jwdvv/superpotential_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace jwdvv {

namespace {

constexpr double kPoleGuard = 1e-8;
constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

bool is_metric_form(ResidueForm f) { return f == ResidueForm::eta || f == ResidueForm::g; }
bool is_logarithmic(ResidueForm f) { return f == ResidueForm::g || f == ResidueForm::c_star; }

Complex int_power(Complex x, int k) {
  Complex r{1.0, 0.0};
  for (int j = 0; j < std::abs(k); ++j) r *= x;
  return k < 0 ? 1.0 / r : r;
}

// Sorted index tuples of the given length over 0..dim-1.
std::vector<std::vector<int>> index_tuples(int dim, int slots) {
  std::vector<std::vector<int>> out;
  std::vector<int> t(static_cast<std::size_t>(slots), 0);
  while (true) {
    out.push_back(t);
    int k = slots - 1;
    while (k >= 0 && t[static_cast<std::size_t>(k)] == dim - 1) --k;
    if (k < 0) break;
    const int next = t[static_cast<std::size_t>(k)] + 1;
    for (int j = k; j < slots; ++j) t[static_cast<std::size_t>(j)] = next;
  }
  return out;
}

// Numerators ∂_a λ (or ∂_a log λ) for every chart direction and the matching
// denominator λ′ (or (log λ)′) at one v.
struct FieldSample {
  std::vector<Complex> numer;
  Complex denom;
};

FieldSample sample_fields(const Superpotential& sp, Complex v, bool logarithmic,
                          const ResidueBudget& budget) {
  FieldSample s;
  const int dim = sp.dimension();
  s.numer.resize(static_cast<std::size_t>(dim));
  for (int a = 0; a < dim; ++a) s.numer[static_cast<std::size_t>(a)] = param_derivative(sp, a, v, budget);
  s.denom = lambda_prime(sp, v);
  if (logarithmic) {
    const Complex lam = lambda_eval(sp, v);
    for (auto& x : s.numer) x /= lam;
    s.denom /= lam;
  }
  return s;
}

Complex tuple_product(const FieldSample& s, const std::vector<int>& tuple) {
  Complex p{1.0, 0.0};
  for (int a : tuple) p *= s.numer[static_cast<std::size_t>(a)];
  return p;
}

// (1/2πi)∮ Π numer / denom dv around center for every tuple.
std::vector<Complex> contour_residues(const Superpotential& sp, Complex center, double radius,
                                      const std::vector<std::vector<int>>& tuples, bool logarithmic,
                                      const ResidueBudget& budget, int samples) {
  std::vector<Complex> acc(tuples.size(), Complex{0.0, 0.0});
  for (int k = 0; k < samples; ++k) {
    const double angle = 2.0 * kPi * k / samples;
    const Complex w{std::cos(angle), std::sin(angle)};
    const FieldSample s = sample_fields(sp, center + radius * w, logarithmic, budget);
    for (std::size_t t = 0; t < tuples.size(); ++t) {
      const Complex value = tuple_product(s, tuples[t]) / s.denom;
      if (!is_finite(value)) throw SingularityError("singularity on contour");
      acc[t] += value * w;
    }
  }
  for (auto& x : acc) x *= radius / static_cast<double>(samples);
  return acc;
}

// Radius for a contour around points[k], clear of every other point.
double contour_radius(const Superpotential& sp, const std::vector<Complex>& points, std::size_t k,
                      const ResidueBudget& budget) {
  double nearest = kInf;
  for (std::size_t j = 0; j < points.size(); ++j)
    if (j != k) nearest = std::min(nearest, sp.separation(points[k], points[j]));
  if (!std::isfinite(nearest)) nearest = 1.0;
  const double radius = budget.radius_fraction * nearest;
  if (nearest < kPoleGuard || nearest < 4.0 * radius) throw DomainError("contour overlap");
  return radius;
}

OracleTensor assemble(ResidueForm which, int dim, const std::vector<std::vector<int>>& tuples,
                      const std::vector<Complex>& values, std::size_t contours) {
  OracleTensor out;
  out.form = which;
  out.contours = contours;
  if (is_metric_form(which)) {
    out.matrix = ComplexMatrix::Zero(dim, dim);
    for (std::size_t t = 0; t < tuples.size(); ++t) {
      const int a = tuples[t][0];
      const int b = tuples[t][1];
      out.matrix(a, b) = out.matrix(b, a) = values[t];
    }
  } else {
    out.tensor = Tensor3(dim);
    for (std::size_t t = 0; t < tuples.size(); ++t)
      out.tensor.set(tuples[t][0], tuples[t][1], tuples[t][2], values[t]);
  }
  return out;
}

void require_polynomial(const Superpotential& sp) {
  if (sp.kind() == ModelCase::elliptic)
    throw std::invalid_argument("critical-point residues need a rational or deformed superpotential");
}

}  // namespace

Superpotential Superpotential::polynomial(RationalChart chart, SeriesPolicy policy) {
  chart.validate();
  Superpotential sp;
  bool all_one = true;
  for (int i = 0; i <= chart.rank; ++i) all_one = all_one && chart.multiplicity(i) == 1;
  sp.kind_ = all_one ? ModelCase::rational : ModelCase::deformed;
  sp.rational_ = std::move(chart);
  sp.policy_ = policy;
  return sp;
}

Superpotential Superpotential::elliptic(EllipticChart chart, SeriesPolicy policy) {
  chart.validate();
  Superpotential sp;
  sp.kind_ = ModelCase::elliptic;
  sp.elliptic_ = std::move(chart);
  sp.policy_ = policy;
  return sp;
}

Superpotential Superpotential::of(const PrepotentialModel& model, std::span<const Complex> point) {
  if (model.kind() == ModelCase::elliptic)
    return elliptic(model.elliptic_chart(point), model.options.series);
  Superpotential sp = polynomial(model.rational_chart(point), model.options.series);
  sp.kind_ = model.kind();
  return sp;
}

int Superpotential::dimension() const {
  return kind_ == ModelCase::elliptic ? elliptic_.rank() + 2 : rational_.rank;
}

ChartPoint Superpotential::parameters() const {
  if (kind_ != ModelCase::elliptic) return rational_.coords;
  ChartPoint p;
  p.push_back(elliptic_.u);
  p.insert(p.end(), elliptic_.coords.begin(), elliptic_.coords.end());
  p.push_back(elliptic_.modular.tau());
  return p;
}

Superpotential Superpotential::at(std::span<const Complex> point) const {
  if (static_cast<int>(point.size()) != dimension())
    throw std::invalid_argument("point dimension does not match superpotential");
  Superpotential sp = *this;
  if (kind_ == ModelCase::elliptic) {
    sp.elliptic_.u = point[0];
    sp.elliptic_.coords.assign(point.begin() + 1, point.end() - 1);
    sp.elliptic_.modular = ModularPoint(point.back());
  } else {
    sp.rational_.coords.assign(point.begin(), point.end());
  }
  return sp;
}

std::vector<Complex> Superpotential::zeros() const {
  if (kind_ == ModelCase::elliptic) return elliptic_.full_coordinates();
  std::vector<Complex> out;
  const auto z = rational_.full_coordinates();
  for (std::size_t i = 0; i < z.size(); ++i)
    if (rational_.multiplicity(static_cast<int>(i)) > 0) out.push_back(z[i]);
  return out;
}

std::vector<Complex> Superpotential::poles() const {
  if (kind_ == ModelCase::elliptic) return {Complex{0.0, 0.0}};
  std::vector<Complex> out;
  const auto z = rational_.full_coordinates();
  for (std::size_t i = 0; i < z.size(); ++i)
    if (rational_.multiplicity(static_cast<int>(i)) < 0) out.push_back(z[i]);
  return out;
}

double Superpotential::separation(Complex a, Complex b) const {
  if (kind_ == ModelCase::elliptic) return lattice_distance(a - b, elliptic_.modular);
  return std::abs(a - b);
}

double Superpotential::pole_distance(Complex v) const {
  double d = kInf;
  for (const auto& p : poles()) d = std::min(d, separation(v, p));
  return d;
}

void ResidueBudget::validate() const {
  if (!(radius_fraction > 0.0 && radius_fraction <= 0.5))
    throw std::invalid_argument("radius fraction must lie in (0, 0.5]");
  if (samples < 16 || samples % 2 != 0) throw std::invalid_argument("contour samples must be even and at least 16");
  if (boundary_samples < 16) throw std::invalid_argument("boundary samples must be at least 16");
  param.validate();
}

Complex lambda_eval(const Superpotential& sp, Complex v) {
  if (sp.pole_distance(v) < kPoleGuard) throw DomainError("evaluation at pole");
  if (sp.kind() == ModelCase::elliptic) {
    const EllipticChart& chart = sp.elliptic_chart();
    const auto z = chart.full_coordinates();
    Complex value = std::exp(2.0 * kPi * kI * chart.u);
    const Complex denominator = theta1(v, chart.modular, 0, sp.policy());
    for (const auto& zi : z) value *= theta1(v - zi, chart.modular, 0, sp.policy()) / denominator;
    return value;
  }
  const RationalChart& chart = sp.rational_chart();
  const auto z = chart.full_coordinates();
  Complex value{1.0, 0.0};
  for (std::size_t i = 0; i < z.size(); ++i) {
    const int k = chart.multiplicity(static_cast<int>(i));
    value *= int_power(v - z[i], k);
  }
  return value;
}

Complex param_derivative(const Superpotential& sp, int a, Complex v, const ResidueBudget& budget) {
  const int dim = sp.dimension();
  if (a < 0 || a >= dim) throw std::out_of_range("parameter index outside chart");
  const ChartPoint base = sp.parameters();
  if (sp.kind() == ModelCase::elliptic && a == 0) return 2.0 * kPi * kI * lambda_eval(sp, v);

  DiffSpec spec = budget.param;
  if (sp.kind() == ModelCase::elliptic) {
    if (a == dim - 1) spec.radius = std::min(spec.radius, 0.25 * base.back().imag());
  } else {
    // Poles of negative multiplicity that move with z^a (z^a itself and z⁰).
    const RationalChart& chart = sp.rational_chart();
    const auto z = chart.full_coordinates();
    const int ia = a + 1;
    const double speed0 = std::abs(static_cast<double>(chart.multiplicity(ia)) / chart.multiplicity(0));
    if (chart.multiplicity(ia) < 0) spec.radius = std::min(spec.radius, 0.25 * std::abs(v - z[static_cast<std::size_t>(ia)]));
    if (chart.multiplicity(0) < 0) spec.radius = std::min(spec.radius, 0.25 * std::abs(v - z[0]) / speed0);
  }

  const auto f = [&](Complex t) {
    ChartPoint p = base;
    p[static_cast<std::size_t>(a)] = t;
    return lambda_eval(sp.at(p), v);
  };
  try {
    return cauchy_derivative(f, base[static_cast<std::size_t>(a)], 1, spec);
  } catch (const SingularityError&) {
    throw DomainError("parameter singularity");
  }
}

Complex lambda_prime(const Superpotential& sp, Complex v) {
  if (sp.pole_distance(v) < kPoleGuard) throw DomainError("evaluation at pole");
  // λ = c Π f_i, so λ′ = c Σ_i f_i′ Π_{j≠i} f_j; no division by a vanishing factor.
  std::vector<Complex> f;
  std::vector<Complex> df;
  Complex c{1.0, 0.0};
  if (sp.kind() == ModelCase::elliptic) {
    const EllipticChart& chart = sp.elliptic_chart();
    c = std::exp(2.0 * kPi * kI * chart.u);
    const Complex t0 = theta1(v, chart.modular, 0, sp.policy());
    const Complex t1 = theta1(v, chart.modular, 1, sp.policy());
    for (const auto& zi : chart.full_coordinates()) {
      f.push_back(theta1(v - zi, chart.modular, 0, sp.policy()));
      df.push_back(theta1(v - zi, chart.modular, 1, sp.policy()));
      f.push_back(1.0 / t0);
      df.push_back(-t1 / (t0 * t0));
    }
  } else {
    const RationalChart& chart = sp.rational_chart();
    const auto z = chart.full_coordinates();
    for (std::size_t i = 0; i < z.size(); ++i) {
      const int k = chart.multiplicity(static_cast<int>(i));
      f.push_back(int_power(v - z[i], k));
      df.push_back(static_cast<double>(k) * int_power(v - z[i], k - 1));
    }
  }
  Complex sum{0.0, 0.0};
  for (std::size_t i = 0; i < f.size(); ++i) {
    Complex term = df[i];
    for (std::size_t j = 0; j < f.size(); ++j)
      if (j != i) term *= f[j];
    sum += term;
  }
  return c * sum;
}

std::vector<Complex> critical_points(const Superpotential& sp) {
  require_polynomial(sp);
  const RationalChart& chart = sp.rational_chart();
  const auto z = chart.full_coordinates();
  std::vector<Complex> numerator(z.size(), Complex{0.0, 0.0});
  for (std::size_t i = 0; i < z.size(); ++i) {
    std::vector<Complex> p{Complex{static_cast<double>(chart.multiplicity(static_cast<int>(i))), 0.0}};
    for (std::size_t j = 0; j < z.size(); ++j) {
      if (j == i) continue;
      const std::vector<Complex> factor{-z[j], Complex{1.0, 0.0}};
      p = polynomial_multiply(p, factor);
    }
    for (std::size_t k = 0; k < p.size(); ++k) numerator[k] += p[k];
  }
  double scale = 0.0;
  for (const auto& c : numerator) scale = std::max(scale, std::abs(c));
  while (numerator.size() > 1 && std::abs(numerator.back()) <= 1e-12 * scale) numerator.pop_back();
  if (numerator.size() < 2) throw DomainError("degenerate superpotential");
  const RootsResult roots = polynomial_roots(numerator);
  if (roots.clustered) throw DomainError("degenerate superpotential");
  return roots.roots;
}

OracleTensor tensors_from_critical_points(const Superpotential& sp, ResidueForm which,
                                          const ResidueBudget& budget) {
  require_polynomial(sp);
  budget.validate();
  const bool logarithmic = is_logarithmic(which);
  const auto crit = critical_points(sp);
  if (logarithmic)
    for (const auto& c : crit)
      if (std::abs(lambda_eval(sp, c)) < kPoleGuard) throw DomainError("superpotential vanishes at a critical point");

  std::vector<Complex> singular = crit;
  for (const auto& z : sp.rational_chart().full_coordinates()) singular.push_back(z);

  const int dim = sp.dimension();
  const auto tuples = index_tuples(dim, is_metric_form(which) ? 2 : 3);
  std::vector<Complex> total(tuples.size(), Complex{0.0, 0.0});
  for (std::size_t k = 0; k < crit.size(); ++k) {
    const double r = contour_radius(sp, singular, k, budget);
    const auto res = contour_residues(sp, crit[k], r, tuples, logarithmic, budget, budget.samples);
    for (std::size_t t = 0; t < tuples.size(); ++t) total[t] -= res[t];
  }
  return assemble(which, dim, tuples, total, crit.size());
}

OracleTensor tensors_from_complementary_contours(const Superpotential& sp, ResidueForm which,
                                                 const ResidueBudget& budget) {
  if (sp.kind() != ModelCase::elliptic)
    throw std::invalid_argument("complementary contours need an elliptic superpotential");
  if (!is_logarithmic(which)) throw std::invalid_argument("only g and c* are available for the elliptic case");
  budget.validate();

  const EllipticChart& chart = sp.elliptic_chart();
  std::vector<Complex> special = chart.full_coordinates();
  special.push_back(Complex{0.0, 0.0});

  // The cell is centred on the special points vertically; its bottom edge
  // carries the boundary term.
  const double cell_height = kPi * chart.modular.tau().imag();
  double lo = kInf;
  double hi = -kInf;
  for (const auto& s : special) {
    lo = std::min(lo, s.imag());
    hi = std::max(hi, s.imag());
  }
  if (hi - lo > 0.5 * cell_height) throw DomainError("special points do not fit in one cell");
  const double y0 = 0.5 * (lo + hi) - 0.5 * cell_height;

  const int dim = sp.dimension();
  const int tau_index = dim - 1;
  const auto tuples = index_tuples(dim, which == ResidueForm::g ? 2 : 3);
  std::vector<Complex> total(tuples.size(), Complex{0.0, 0.0});
  for (std::size_t k = 0; k < special.size(); ++k) {
    const double r = contour_radius(sp, special, k, budget);
    const auto res = contour_residues(sp, special[k], r, tuples, true, budget, budget.samples);
    for (std::size_t t = 0; t < tuples.size(); ++t) total[t] -= res[t];
  }

  // Boundary: −(1/2πi)∫ Δ dx along Im v = y0 over one real period, where
  // Δ = Σ_{S ⊆ τ-slots, S ≠ ∅} (−π)^{|S|} D^{|S|−1} Π_{slots ∉ S} F.
  const int n = budget.boundary_samples;
  std::vector<Complex> line(tuples.size(), Complex{0.0, 0.0});
  for (int k = 0; k < n; ++k) {
    const Complex v{kPi * k / n, y0};
    const FieldSample s = sample_fields(sp, v, true, budget);
    for (std::size_t t = 0; t < tuples.size(); ++t) {
      const auto& tuple = tuples[t];
      std::vector<std::size_t> tau_slots;
      for (std::size_t i = 0; i < tuple.size(); ++i)
        if (tuple[i] == tau_index) tau_slots.push_back(i);
      Complex delta{0.0, 0.0};
      for (unsigned mask = 1; mask < (1u << tau_slots.size()); ++mask) {
        std::vector<bool> in_subset(tuple.size(), false);
        int size = 0;
        for (std::size_t b = 0; b < tau_slots.size(); ++b)
          if (mask & (1u << b)) {
            in_subset[tau_slots[b]] = true;
            ++size;
          }
        Complex term = std::pow(Complex{-kPi, 0.0}, size) * std::pow(s.denom, size - 1);
        for (std::size_t i = 0; i < tuple.size(); ++i)
          if (!in_subset[i]) term *= s.numer[static_cast<std::size_t>(tuple[i])];
        delta += term;
      }
      line[t] += delta;
    }
  }
  for (std::size_t t = 0; t < tuples.size(); ++t)
    total[t] -= line[t] * (kPi / n) / (2.0 * kPi * kI);

  return assemble(which, dim, tuples, total, special.size() + 1);
}

double residue_closure(const Superpotential& sp, ResidueForm which, const ResidueBudget& budget) {
  require_polynomial(sp);
  budget.validate();
  const bool logarithmic = is_logarithmic(which);
  const auto crit = critical_points(sp);
  const auto z = sp.rational_chart().full_coordinates();
  std::vector<Complex> singular = crit;
  singular.insert(singular.end(), z.begin(), z.end());

  const int dim = sp.dimension();
  const auto tuples = index_tuples(dim, is_metric_form(which) ? 2 : 3);
  std::vector<Complex> crit_sum(tuples.size(), Complex{0.0, 0.0});
  std::vector<Complex> all_sum(tuples.size(), Complex{0.0, 0.0});
  for (std::size_t k = 0; k < singular.size(); ++k) {
    const double r = contour_radius(sp, singular, k, budget);
    const auto res = contour_residues(sp, singular[k], r, tuples, logarithmic, budget, budget.samples);
    for (std::size_t t = 0; t < tuples.size(); ++t) {
      all_sum[t] += res[t];
      if (k < crit.size()) crit_sum[t] += res[t];
    }
  }

  // res_∞ = −(1/2πi)∮ over a circle enclosing every finite singularity.
  Complex centre{0.0, 0.0};
  for (const auto& p : singular) centre += p;
  centre /= static_cast<double>(singular.size());
  double spread = 0.0;
  for (const auto& p : singular) spread = std::max(spread, std::abs(p - centre));
  const double big = 2.0 * spread + 1.0;
  const auto outer = contour_residues(sp, centre, big, tuples, logarithmic, budget, 4 * budget.samples);

  double worst = 0.0;
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    const double scale = std::max(1.0, std::abs(crit_sum[t]));
    worst = std::max(worst, std::abs(all_sum[t] - outer[t]) / scale);
  }
  return worst;
}

}  // namespace jwdvv
