#include "jwdvv/runs.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <map>
#include <memory>
#include <random>
#include <sstream>

namespace jwdvv {

namespace {

constexpr double kMinSeparation = 0.2;
constexpr double kMinCriticalSeparation = 0.05;
constexpr int kMaxAttempts = 100;

// FNV-1a, so per-check seeds do not depend on the standard library.
std::uint64_t stable_hash(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

double relative(Complex value, Complex reference) {
  return std::abs(value - reference) / std::max(1.0, std::abs(reference));
}

double max_deviation(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

double max_deviation(const Tensor3& a, const Tensor3& b, const std::vector<int>& axes) {
  double m = 0.0;
  for (std::size_t i = 0; i < axes.size(); ++i)
    for (std::size_t j = i; j < axes.size(); ++j)
      for (std::size_t k = j; k < axes.size(); ++k)
        m = std::max(m, std::abs(a(axes[i], axes[j], axes[k]) - b(axes[i], axes[j], axes[k])));
  return m;
}

std::vector<int> all_axes(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
  return v;
}

std::vector<int> z_axes(const PrepotentialModel& model) {
  std::vector<int> v;
  for (int i = 1; i <= model.rank(); ++i) v.push_back(i);
  return v;
}

bool polynomial_point_ok(const PrepotentialModel& model, const ChartPoint& p) {
  const RationalChart chart = model.rational_chart(p);
  try {
    chart.validate();
  } catch (const DomainError&) {
    return false;
  }
  const auto z = chart.full_coordinates();
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j)
      if (std::abs(z[i] - z[j]) < kMinSeparation) return false;
  try {
    const auto crit = critical_points(Superpotential::of(model, p));
    std::vector<Complex> all = crit;
    all.insert(all.end(), z.begin(), z.end());
    for (std::size_t i = 0; i < crit.size(); ++i)
      for (std::size_t j = i + 1; j < all.size(); ++j)
        if (std::abs(all[i] - all[j]) < kMinCriticalSeparation) return false;
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

bool elliptic_point_ok(const PrepotentialModel& model, const ChartPoint& p) {
  const EllipticChart chart = model.elliptic_chart(p);
  try {
    chart.validate();
  } catch (const DomainError&) {
    return false;
  }
  const auto z = chart.full_coordinates();
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (lattice_distance(z[i], chart.modular) < kMinSeparation) return false;
    for (std::size_t j = i + 1; j < z.size(); ++j)
      if (lattice_distance(z[i] - z[j], chart.modular) < kMinSeparation) return false;
  }
  return true;
}

ChartPoint resolve_point(const RunConfig& config) {
  ChartPoint p = config.chart_point();
  const PrepotentialModel model = config.model();
  if (static_cast<int>(p.size()) != model.dimension())
    throw std::invalid_argument("point dimension does not match case and rank");
  return p;
}

std::vector<ChartPoint> points_for(const RunConfig& config, const PrepotentialModel& model,
                                   int default_count, const std::string& salt) {
  if (!config.point.empty()) return {resolve_point(config)};
  const int count = config.samples > 0 ? config.samples : default_count;
  return sample_points(model, count, config.seed ^ stable_hash(salt));
}

Json report_header(const std::string& command, const RunConfig& config, const PrepotentialModel& model) {
  Json j;
  j["command"] = command;
  j["case"] = to_string(model.kind());
  j["rank"] = model.rank();
  if (model.kind() == ModelCase::deformed) j["k"] = model.multiplicities();
  j["coordinates"] = model.coordinate_names();
  j["seed"] = config.seed;
  return j;
}

double default_residual_tolerance(ModelCase c) {
  switch (c) {
    case ModelCase::rational: return 1e-8;
    case ModelCase::deformed: return 1e-7;
    case ModelCase::elliptic: return 1e-6;
  }
  return 1e-6;
}

MetricMatrix metric_for(const PrepotentialModel& model, std::span<const Complex> p, const RunConfig& config) {
  if (model.kind() == ModelCase::deformed) {
    const OracleTensor g = tensors_from_critical_points(Superpotential::of(model, p), ResidueForm::g, config.budget);
    return MetricMatrix(g.matrix);
  }
  return intersection_metric(model.kind(), model.rank(), config.flip_metric_sign);
}

struct WdvvSummary {
  Json points = Json::array();
  double max_relative = 0.0;
  bool low_rank = false;
};

WdvvSummary wdvv_over_points(const PrepotentialModel& model, const std::vector<ChartPoint>& points,
                             const RunConfig& config, double tolerance) {
  WdvvSummary s;
  for (const auto& p : points) {
    const Tensor3 c = structure_tensor(model, p, config.diff);
    const WDVVReport r = wdvv_residual(c, metric_for(model, p, config), tolerance);
    Json worst = Json::array();
    for (const auto& w : r.worst) worst.push_back({{"indices", w.indices}, {"abs_residual", round15(w.abs_residual)}});
    s.points.push_back({{"point", to_json(p)},
                        {"max_abs_residual", round15(r.max_abs_residual)},
                        {"max_relative_residual", round15(r.max_relative_residual)},
                        {"worst", worst}});
    s.max_relative = std::max(s.max_relative, r.max_relative_residual);
    s.low_rank = s.low_rank || r.low_rank;
  }
  return s;
}

// Third derivatives of F*_temp over the elliptic chart (u and τ slots
// included, though only z slots are compared).
Tensor3 temp_tensor(const PrepotentialModel& model, std::span<const Complex> p, const DiffSpec& spec,
                    const std::vector<int>& axes) {
  const auto anchor = std::make_shared<const EllipticChart>(model.elliptic_chart(p));
  const SeriesPolicy policy = model.options.series;
  const ScalarField field = [model, anchor, policy](std::span<const Complex> q) {
    return elliptic_F_temp(model.elliptic_chart(q), policy, anchor.get());
  };
  Tensor3 t(model.dimension());
  for (std::size_t i = 0; i < axes.size(); ++i)
    for (std::size_t j = i; j < axes.size(); ++j)
      for (std::size_t k = j; k < axes.size(); ++k)
        t.set(axes[i], axes[j], axes[k], mixed_partial_3(field, p, {axes[i], axes[j], axes[k]}, spec));
  return t;
}

struct OracleSummary {
  Json points = Json::array();
  std::map<std::string, double> deviation;  // quantity -> max over points
};

void note(OracleSummary& s, const std::string& key, double value) {
  s.deviation[key] = std::max(s.deviation[key], value);
}

OracleSummary oracle_over_points(const PrepotentialModel& model, const std::vector<ChartPoint>& points,
                                 const RunConfig& config) {
  OracleSummary s;
  for (const auto& p : points) {
    const Superpotential sp = Superpotential::of(model, p);
    const Tensor3 st = structure_tensor(model, p, config.diff);
    Json entry{{"point", to_json(p)}};
    if (model.kind() == ModelCase::elliptic) {
      const OracleTensor g = tensors_from_complementary_contours(sp, ResidueForm::g, config.budget);
      const OracleTensor cs = tensors_from_complementary_contours(sp, ResidueForm::c_star, config.budget);
      const MetricMatrix lemma = intersection_metric(ModelCase::elliptic, model.rank());
      const int n = model.dimension();
      double cu = 0.0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          cu = std::max(cu, std::abs(cs.tensor(0, a, b) - 2.0 * kPi * kI * lemma(a, b)));
      const auto zs = z_axes(model);
      const double pure_z = max_deviation(cs.tensor, temp_tensor(model, p, config.diff, zs), zs);
      const double full = max_deviation(cs.tensor, st, all_axes(n));
      const double gdev = max_deviation(g.matrix, lemma.entries());
      entry["g_oracle"] = to_json(g.matrix);
      entry["g_closed_form"] = to_json(lemma.entries());
      entry["g_deviation"] = round15(gdev);
      entry["cstar_u_deviation"] = round15(cu);
      entry["cstar_pure_z_vs_temp_deviation"] = round15(pure_z);
      entry["cstar_vs_prepotential_deviation"] = round15(full);
      entry["cstar_oracle"] = to_json(cs.tensor);
      entry["cstar_prepotential"] = to_json(st);
      note(s, "g", gdev);
      note(s, "cstar_u", cu);
      note(s, "cstar_pure_z_vs_temp", pure_z);
      note(s, "cstar_vs_prepotential", full);
    } else {
      const OracleTensor g = tensors_from_critical_points(sp, ResidueForm::g, config.budget);
      const OracleTensor cs = tensors_from_critical_points(sp, ResidueForm::c_star, config.budget);
      const double cdev = max_deviation(cs.tensor, st, all_axes(model.dimension()));
      entry["g_oracle"] = to_json(g.matrix);
      entry["cstar_oracle"] = to_json(cs.tensor);
      entry["cstar_prepotential"] = to_json(st);
      entry["cstar_deviation"] = round15(cdev);
      note(s, "cstar", cdev);
      if (model.kind() == ModelCase::rational) {
        const MetricMatrix closed = intersection_metric(ModelCase::rational, model.rank());
        const double gdev = max_deviation(g.matrix, closed.entries());
        entry["g_closed_form"] = to_json(closed.entries());
        entry["g_deviation"] = round15(gdev);
        note(s, "g", gdev);
      } else {
        const WDVVReport r = wdvv_residual(st, MetricMatrix(g.matrix));
        entry["wdvv_relative_residual"] = round15(r.max_relative_residual);
        note(s, "wdvv", r.max_relative_residual);
      }
    }
    s.points.push_back(entry);
  }
  return s;
}

// Tolerances per compared quantity.
std::map<std::string, double> oracle_tolerances(ModelCase c, const RunConfig& config) {
  std::map<std::string, double> t;
  switch (c) {
    case ModelCase::rational:
      t = {{"g", 1e-8}, {"cstar", 1e-7}};
      break;
    case ModelCase::deformed:
      t = {{"cstar", 1e-7}, {"wdvv", 1e-7}};
      break;
    case ModelCase::elliptic:
      t = {{"g", 1e-6}, {"cstar_u", 1e-6}, {"cstar_pure_z_vs_temp", 1e-6}, {"cstar_vs_prepotential", 1e-6}};
      break;
  }
  if (config.oracle_tolerance > 0.0)
    for (auto& [key, value] : t) value = config.oracle_tolerance;
  if (c == ModelCase::deformed && config.residual_tolerance > 0.0) t["wdvv"] = config.residual_tolerance;
  return t;
}

// ---- suite checks ----------------------------------------------------------

using CheckFn = std::function<CheckOutcome(const RunConfig&)>;

CheckOutcome outcome(double value, double tolerance, Json details = Json::object()) {
  CheckOutcome o;
  o.value = value;
  o.tolerance = tolerance;
  o.pass = std::isfinite(value) && value < tolerance;
  o.details = std::move(details);
  return o;
}

const std::vector<Complex>& appendix_taus() {
  static const std::vector<Complex> taus{{0.0, 1.1}, {0.0, 1.5}, {0.0, 2.0}, {0.3, 1.2}};
  return taus;
}

// ∂^{a}_z ∂^{b}_τ ℒi₃(q², e^{2iz}) at z = 0.
Complex trilog_derivative_at_zero(Complex tau, int dz, int dtau, const RunConfig& config) {
  const SeriesPolicy policy = config.series;
  const ScalarField field = [policy](std::span<const Complex> p) {
    return elliptic_trilog(p[0], ModularPoint(p[1]), policy);
  };
  const std::vector<Complex> point{Complex{0.0, 0.0}, tau};
  const std::vector<int> orders{dz, dtau};
  return mixed_partial(field, point, orders, config.diff);
}

CheckOutcome appendix_identity(const RunConfig& config, int dz, int dtau,
                               const std::function<Complex(const ModularPoint&)>& rhs) {
  double worst = 0.0;
  Json rows = Json::array();
  for (const auto& tau : appendix_taus()) {
    const Complex lhs = trilog_derivative_at_zero(tau, dz, dtau, config);
    const Complex expected = rhs(ModularPoint(tau));
    const double dev = relative(lhs, expected);
    worst = std::max(worst, dev);
    rows.push_back({{"tau", to_json(tau)}, {"lhs", to_json(lhs)}, {"rhs", to_json(expected)}, {"deviation", round15(dev)}});
  }
  return outcome(worst, 1e-7, {{"rows", rows}});
}

// Grid inside the strip with 0 < Re z < π (principal branches of Li_N(e^{2iz})).
const std::vector<Complex>& z_grid() {
  static const std::vector<Complex> g{{0.5, -0.15}, {0.5, 0.15}, {1.2, 0.0}, {2.0, 0.1}, {2.6, -0.1}};
  return g;
}

const std::vector<Complex>& tau_grid() {
  static const std::vector<Complex> g{{0.0, 1.5}, {0.0, 2.0}, {0.3, 1.2}};
  return g;
}

CheckOutcome check_lambda_ladder(const RunConfig& config) {
  double worst = 0.0;
  for (const auto& tau : tau_grid()) {
    const ModularPoint m(tau);
    for (const auto& z : z_grid())
      for (int n = 1; n <= 3; ++n) {
        const auto f = [&](Complex w) { return lambdaN(n, w, m, config.series, z); };
        const Complex d = cauchy_derivative(f, z, 1, config.diff);
        worst = std::max(worst, relative(d, 2.0 * kI * lambdaN(n - 1, z, m, config.series)));
      }
  }
  return outcome(worst, 1e-9);
}

CheckOutcome check_lambda0(const RunConfig& config) {
  double worst = 0.0;
  for (const auto& tau : tau_grid()) {
    const ModularPoint m(tau);
    for (const auto& z : z_grid())
      worst = std::max(worst, relative(lambdaN(0, z, m, config.series),
                                       theta1_log_derivative(z, m, config.series) / (2.0 * kI)));
  }
  return outcome(worst, 1e-9);
}

CheckOutcome check_lambda_parity(const RunConfig& config) {
  double worst = 0.0;
  for (const auto& tau : tau_grid()) {
    const ModularPoint m(tau);
    for (const auto& z : z_grid())
      for (int n = 1; n <= 3; ++n) {
        const double sign = n % 2 == 0 ? 1.0 : -1.0;
        const Complex lhs = lambdaN(n, -z, m, config.series) + sign * lambdaN(n, z, m, config.series);
        Complex rhs{0.0, 0.0};
        double fact_j = 1.0;
        for (int j = 1; j <= n; ++j) {
          fact_j *= j;
          double fact_nj = 1.0;
          for (int k = 2; k <= n - j; ++k) fact_nj *= k;
          rhs += bernoulli_number(j) * std::pow(2.0 * kPi * kI, j) / (fact_nj * fact_j) *
                 std::pow(2.0 * kI * z, n - j);
        }
        worst = std::max(worst, relative(lhs, sign * rhs));
      }
  }
  return outcome(worst, 1e-9);
}

CheckOutcome check_lambda3_trilog(const RunConfig& config) {
  double worst = 0.0;
  for (const auto& tau : tau_grid()) {
    const ModularPoint m(tau);
    const Complex lq = m.log_q();
    for (const auto& z : z_grid()) {
      const Complex lhs = lambdaN(3, z, m, config.series) + elliptic_trilog(z, m, config.series) -
                          lq * z * z / 3.0 - lq * lq * lq / 90.0;
      worst = std::max(worst, std::abs(lhs));
    }
  }
  return outcome(worst, 1e-9);
}

CheckOutcome check_theta_product(const RunConfig& config) {
  double worst = 0.0;
  const std::vector<Complex> zs{{0.3, 0.0}, {0.2, 0.1}, {1.1, -0.4}, {-0.7, 0.3}, {2.5, 0.2}};
  for (const auto& tau : tau_grid()) {
    const ModularPoint m(tau);
    for (const auto& z : zs) {
      const Complex series = theta1(z, m, 0, config.series);
      const Complex product = theta1_product(z, m, config.series);
      worst = std::max(worst, std::abs(series - product) / std::abs(product));
    }
  }
  return outcome(worst, 1e-9);
}

CheckOutcome check_quasi_modularity(const RunConfig& config) {
  double worst = 0.0;
  const std::vector<Complex> zs{{0.3, 0.0}, {0.2, 0.1}, {0.7, -0.05}};
  const std::vector<Complex> taus{{0.0, 1.2}, {0.3, 1.2}, {0.0, 1.6}};
  for (const auto& tau : taus) {
    const ModularPoint m(tau);
    const ModularPoint s(-1.0 / tau);
    for (const auto& z : zs) {
      const Complex lhs = theta1_log_derivative(z / tau, s, config.series);
      const Complex rhs = 2.0 * kI * z / kPi + tau * theta1_log_derivative(z, m, config.series);
      worst = std::max(worst, relative(lhs, rhs));
    }
  }
  return outcome(worst, 1e-9);
}

CheckOutcome check_polylog_inversion(const RunConfig& config) {
  double worst = 0.0;
  const std::vector<Complex> inside{{0.4, 0.3}, {-0.5, 0.2}, {0.1, -0.6}};
  for (const auto& zeta : inside)
    for (int n = 1; n <= 3; ++n) {
      // Li_N(1/ζ) through the formula, then back to Li_N(ζ).
      const Complex w = 1.0 / zeta;
      const Complex li_w = polylog_inverted(n, w, config.series);
      double fact = 1.0;
      for (int k = 2; k <= n; ++k) fact *= k;
      const Complex correction = std::pow(2.0 * kPi * kI, n) / fact *
                                 bernoulli_polynomial(n, 0.5 + std::log(-w) / (2.0 * kPi * kI));
      const double sign = n % 2 == 1 ? 1.0 : -1.0;
      const Complex back = sign * (li_w + correction);
      worst = std::max(worst, relative(back, polylog(n, zeta, config.series)));
    }
  const std::vector<Complex> outside{{1.3, 0.4}, {-1.5, 0.1}, {0.2, -1.2}};
  for (const auto& zeta : outside)
    for (int n = 1; n <= 3; ++n)
      worst = std::max(worst, relative(polylog_inverted(n, zeta, config.series),
                                       polylog_exp(n, std::log(zeta), std::nullopt, config.series)));
  const Complex two{2.0, 0.01};
  worst = std::max(worst, relative(polylog_inverted(1, two, config.series), -std::log(1.0 - two)));
  return outcome(worst, 1e-9);
}

CheckOutcome check_eisenstein(const RunConfig& config) {
  double worst = 0.0;
  const ModularPoint m(Complex{0.0, 1.1});
  const Complex q2 = m.q() * m.q();
  Complex e2{1.0, 0.0};
  Complex e4{1.0, 0.0};
  Complex power{1.0, 0.0};
  for (int n = 1; n <= 50; ++n) {
    power *= q2;
    double s1 = 0.0;
    double s3 = 0.0;
    for (int d = 1; d <= n; ++d)
      if (n % d == 0) {
        s1 += d;
        s3 += static_cast<double>(d) * d * d;
      }
    e2 -= 24.0 * s1 * power;
    e4 += 240.0 * s3 * power;
  }
  worst = std::max(worst, relative(eisenstein(2, m, config.series), e2));
  worst = std::max(worst, relative(eisenstein(4, m, config.series), e4));
  worst = std::max(worst, relative(eisenstein(2, ModularPoint(Complex{0.0, 30.0}), config.series), 1.0));
  return outcome(worst, 1e-12);
}

CheckOutcome check_u_quadratic(const RunConfig& config) {
  PrepotentialModel model = PrepotentialModel::elliptic(2);
  model.options.series = config.series;
  model.options.drop_single_terms = config.drop_single_terms;
  const ChartPoint p = sample_points(model, 1, config.seed ^ stable_hash("u_quadratic")).front();
  const ScalarField f = model.germ(p);
  const Complex uuu = mixed_partial_3(f, p, {0, 0, 0}, config.diff);
  const Complex uuz = mixed_partial_3(f, p, {0, 0, 1}, config.diff);
  const Complex uut = mixed_partial_3(f, p, {0, 0, 3}, config.diff);
  const double dev = std::max({std::abs(uuu), std::abs(uuz), std::abs(uut - 2.0 * kPi * kI * kPi * kPi)});
  return outcome(dev, 1e-9, {{"point", to_json(p)}, {"uuu", to_json(uuu)}, {"uuz1", to_json(uuz)}, {"uutau", to_json(uut)}});
}

CheckOutcome check_permutation(const RunConfig& config) {
  double worst = 0.0;
  {
    const PrepotentialModel model = PrepotentialModel::rational(3);
    const ChartPoint p = sample_points(model, 1, config.seed ^ stable_hash("perm_rational")).front();
    const auto z = model.rational_chart(p).full_coordinates();
    const ChartPoint swapped12{p[1], p[0], p[2]};
    const ChartPoint swapped01{z[0], p[1], p[2]};
    const Complex f = model.value(p);
    worst = std::max({worst, relative(model.value(swapped12), f), relative(model.value(swapped01), f)});
  }
  {
    PrepotentialModel model = PrepotentialModel::elliptic(2);
    model.options.series = config.series;
    const ChartPoint p = sample_points(model, 1, config.seed ^ stable_hash("perm_elliptic")).front();
    const auto z = model.elliptic_chart(p).full_coordinates();
    const ChartPoint swapped12{p[0], p[2], p[1], p[3]};
    const ChartPoint swapped01{p[0], z[0], p[2], p[3]};
    const Complex f = model.value(p);
    worst = std::max({worst, relative(model.value(swapped12), f), relative(model.value(swapped01), f)});
  }
  return outcome(worst, 1e-10);
}

CheckOutcome check_quantum_at_origin(const RunConfig& config) {
  EllipticChart chart;
  chart.coords = {Complex{0.0, 0.0}, Complex{0.0, 0.0}};
  chart.modular = ModularPoint(Complex{0.0, 1.7});
  ModelOptions options;
  options.series = config.series;
  return outcome(std::abs(elliptic_F_quantum(chart, options)), 1e-12);
}

CheckOutcome check_oracle(const RunConfig& config, const PrepotentialModel& model, int count,
                          const std::string& salt, const std::vector<std::string>& keys) {
  const auto points = sample_points(model, config.samples > 0 ? config.samples : count, config.seed ^ stable_hash(salt));
  const OracleSummary s = oracle_over_points(model, points, config);
  const auto tol = oracle_tolerances(model.kind(), config);
  // Value is the worst deviation relative to its own tolerance, scaled back
  // to the first key's tolerance so value < tolerance ⇔ pass.
  double ratio = 0.0;
  Json dev = Json::object();
  for (const auto& key : keys) {
    ratio = std::max(ratio, s.deviation.at(key) / tol.at(key));
    dev[key] = {{"deviation", round15(s.deviation.at(key))}, {"tolerance", tol.at(key)}};
  }
  const double base = tol.at(keys.front());
  return outcome(ratio * base, base, {{"points", static_cast<int>(points.size())}, {"deviations", dev}});
}

CheckOutcome check_closure(const RunConfig& config) {
  double worst = 0.0;
  const std::vector<PrepotentialModel> models{PrepotentialModel::rational(3),
                                              PrepotentialModel::deformed({1, 1, 1, -1})};
  for (const auto& model : models) {
    const ChartPoint p = sample_points(model, 1, config.seed ^ stable_hash("closure")).front();
    const Superpotential sp = Superpotential::of(model, p);
    for (ResidueForm f : {ResidueForm::eta, ResidueForm::c, ResidueForm::g, ResidueForm::c_star})
      worst = std::max(worst, residue_closure(sp, f, config.budget));
  }
  return outcome(worst, 1e-8);
}

CheckOutcome check_radius_robustness(const RunConfig& config) {
  const PrepotentialModel model = PrepotentialModel::rational(3);
  const ChartPoint p = sample_points(model, 1, config.seed ^ stable_hash("robustness")).front();
  const Superpotential sp = Superpotential::of(model, p);
  ResidueBudget half = config.budget;
  half.radius_fraction *= 0.5;
  const Tensor3 a = tensors_from_critical_points(sp, ResidueForm::c_star, config.budget).tensor;
  const Tensor3 b = tensors_from_critical_points(sp, ResidueForm::c_star, half).tensor;
  const double dev = max_deviation(a, b, all_axes(model.dimension())) / std::max(1.0, a.max_abs());
  return outcome(dev, 1e-8);
}

CheckOutcome check_wdvv(const RunConfig& config, const PrepotentialModel& base, int count, const std::string& salt) {
  PrepotentialModel model = base;
  model.options.series = config.series;
  model.options.drop_single_terms = config.drop_single_terms;
  const auto points = sample_points(model, config.samples > 0 ? config.samples : count, config.seed ^ stable_hash(salt));
  const double tol = config.residual_tolerance > 0.0 ? config.residual_tolerance : default_residual_tolerance(model.kind());
  const WdvvSummary s = wdvv_over_points(model, points, config, tol);
  return outcome(s.max_relative, tol, {{"points", static_cast<int>(points.size())}, {"low_rank", s.low_rank}});
}

const std::map<std::string, CheckFn>& registry() {
  static const std::map<std::string, CheckFn> checks = [] {
    std::map<std::string, CheckFn> m;
    const auto series_model = [](PrepotentialModel model, const RunConfig& c) {
      model.options.series = c.series;
      model.options.drop_single_terms = c.drop_single_terms;
      return model;
    };
    m["special_functions.appendix_dtau3_e4"] = [](const RunConfig& c) {
      return appendix_identity(c, 0, 3, [&c](const ModularPoint& mp) {
        return -kI * kPi * kPi * kPi / 15.0 * eisenstein(4, mp, c.series);
      });
    };
    m["special_functions.appendix_dtau2_dz_zero"] = [](const RunConfig& c) {
      return appendix_identity(c, 1, 2, [](const ModularPoint&) { return Complex{0.0, 0.0}; });
    };
    m["special_functions.appendix_dtau_dz2_e2"] = [](const RunConfig& c) {
      return appendix_identity(c, 2, 1, [&c](const ModularPoint& mp) {
        return 2.0 * kI * kPi / 3.0 * eisenstein(2, mp, c.series);
      });
    };
    m["special_functions.eisenstein_divisor_sums"] = check_eisenstein;
    m["special_functions.lambda0_log_derivative"] = check_lambda0;
    m["special_functions.lambda3_trilog_relation"] = check_lambda3_trilog;
    m["special_functions.lambda_ladder"] = check_lambda_ladder;
    m["special_functions.lambda_parity"] = check_lambda_parity;
    m["special_functions.polylog_inversion"] = check_polylog_inversion;
    m["special_functions.theta_quasi_modularity"] = check_quasi_modularity;
    m["special_functions.theta_series_vs_product"] = check_theta_product;
    m["prepotentials.elliptic_u_quadratic"] = check_u_quadratic;
    m["prepotentials.permutation_symmetry"] = check_permutation;
    m["prepotentials.quantum_vanishes_at_origin"] = check_quantum_at_origin;
    m["superpotential_oracle.rational_g"] = [](const RunConfig& c) {
      return check_oracle(c, PrepotentialModel::rational(3), 5, "oracle_rational", {"g"});
    };
    m["superpotential_oracle.rational_cstar"] = [](const RunConfig& c) {
      return check_oracle(c, PrepotentialModel::rational(3), 5, "oracle_rational", {"cstar"});
    };
    m["superpotential_oracle.elliptic_l1"] = [series_model](const RunConfig& c) {
      return check_oracle(c, series_model(PrepotentialModel::elliptic(1), c), 3, "oracle_elliptic_l1",
                          {"g", "cstar_u", "cstar_pure_z_vs_temp"});
    };
    m["superpotential_oracle.elliptic_l2"] = [series_model](const RunConfig& c) {
      return check_oracle(c, series_model(PrepotentialModel::elliptic(2), c), 3, "oracle_elliptic_l2",
                          {"g", "cstar_u", "cstar_pure_z_vs_temp"});
    };
    m["superpotential_oracle.residue_closure"] = check_closure;
    m["superpotential_oracle.contour_radius_robustness"] = check_radius_robustness;
    m["wdvv_checker.rational_l3"] = [](const RunConfig& c) {
      return check_wdvv(c, PrepotentialModel::rational(3), 20, "wdvv_rational_l3");
    };
    m["wdvv_checker.deformed_k_1_1_1_m1"] = [](const RunConfig& c) {
      return check_wdvv(c, PrepotentialModel::deformed({1, 1, 1, -1}), 10, "wdvv_deformed_a");
    };
    m["wdvv_checker.deformed_k_2_1_1_1"] = [](const RunConfig& c) {
      return check_wdvv(c, PrepotentialModel::deformed({2, 1, 1, 1}), 10, "wdvv_deformed_b");
    };
    m["wdvv_checker.elliptic_l1"] = [](const RunConfig& c) {
      return check_wdvv(c, PrepotentialModel::elliptic(1), 10, "wdvv_elliptic_l1");
    };
    m["wdvv_checker.elliptic_l2"] = [](const RunConfig& c) {
      return check_wdvv(c, PrepotentialModel::elliptic(2), 10, "wdvv_elliptic_l2");
    };
    return m;
  }();
  return checks;
}

}  // namespace

double round15(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  std::ostringstream os;
  os << std::setprecision(15) << x;
  return std::stod(os.str());
}

Json to_json(Complex z) { return Json::array({round15(z.real()), round15(z.imag())}); }

Json to_json(std::span<const Complex> values) {
  Json a = Json::array();
  for (const auto& v : values) a.push_back(to_json(v));
  return a;
}

Json to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const Tensor3& t) {
  Json entries = Json::array();
  const int n = t.dimension();
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      for (int c = b; c < n; ++c) entries.push_back({{"indices", {a, b, c}}, {"value", to_json(t(a, b, c))}});
  return entries;
}

std::vector<ChartPoint> sample_points(const PrepotentialModel& model, int count, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> re(-1.0, 1.0);
  std::uniform_real_distribution<double> im(-0.2, 0.2);
  std::uniform_real_distribution<double> tau_re(-0.5, 0.5);
  std::uniform_real_distribution<double> tau_im(1.2, 2.5);
  const bool elliptic = model.kind() == ModelCase::elliptic;

  std::vector<ChartPoint> points;
  for (int n = 0; n < count; ++n) {
    bool found = false;
    for (int attempt = 0; attempt < kMaxAttempts && !found; ++attempt) {
      ChartPoint p;
      const int coords = elliptic ? model.rank() + 1 : model.rank();
      for (int i = 0; i < coords; ++i) {
        const double x = re(gen);
        const double y = im(gen);
        p.emplace_back(x, y);
      }
      if (elliptic) {
        const double x = tau_re(gen);
        const double y = tau_im(gen);
        p.emplace_back(x, y);
      }
      found = elliptic ? elliptic_point_ok(model, p) : polynomial_point_ok(model, p);
      if (found) points.push_back(std::move(p));
    }
    if (!found) throw DomainError("could not sample a point off the discriminant");
  }
  return points;
}

RunReport run_wdvv_check(const RunConfig& config) {
  config.validate();
  const PrepotentialModel model = config.model();
  const auto points = points_for(config, model, model.kind() == ModelCase::rational ? 20 : 10, "wdvv-check");
  const double tol = config.residual_tolerance > 0.0 ? config.residual_tolerance : default_residual_tolerance(model.kind());
  const WdvvSummary s = wdvv_over_points(model, points, config, tol);

  RunReport r;
  r.json = report_header("wdvv-check", config, model);
  r.json["metric"] = model.kind() == ModelCase::deformed ? "oracle" : "closed_form";
  if (config.flip_metric_sign) r.json["flip_metric_sign"] = true;
  if (config.drop_single_terms) r.json["drop_single_terms"] = true;
  r.json["points"] = s.points;
  r.json["max_relative_residual"] = round15(s.max_relative);
  r.json["tolerance"] = tol;
  if (s.low_rank) r.json["note"] = "low-rank case";
  r.pass = s.max_relative < tol;
  r.json["pass"] = r.pass;
  return r;
}

RunReport run_oracle_compare(const RunConfig& config) {
  config.validate();
  const PrepotentialModel model = config.model();
  const int count = model.kind() == ModelCase::rational ? 5 : 3;
  const auto points = points_for(config, model, count, "oracle-compare");
  const OracleSummary s = oracle_over_points(model, points, config);
  const auto tol = oracle_tolerances(model.kind(), config);

  RunReport r;
  r.json = report_header("oracle-compare", config, model);
  r.json["points"] = s.points;
  Json dev = Json::object();
  r.pass = true;
  for (const auto& [key, t] : tol) {
    const double d = s.deviation.at(key);
    dev[key] = {{"max_deviation", round15(d)}, {"tolerance", t}, {"pass", d < t}};
    r.pass = r.pass && d < t;
  }
  r.json["comparisons"] = dev;
  r.json["pass"] = r.pass;
  return r;
}

Json CheckOutcome::to_json() const {
  Json j;
  j["name"] = name;
  j["module"] = module();
  j["pass"] = pass;
  j["value"] = round15(value);
  j["tolerance"] = tolerance;
  if (!error.empty()) j["error"] = error;
  if (!details.empty()) j["details"] = details;
  return j;
}

std::vector<std::string> suite_check_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : registry()) names.push_back(name);
  return names;
}

CheckOutcome run_check(const std::string& name, const RunConfig& config) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw std::invalid_argument("unknown check '" + name + "'");
  CheckOutcome o;
  try {
    o = it->second(config);
  } catch (const std::exception& e) {
    o = CheckOutcome{};
    o.pass = false;
    o.value = std::numeric_limits<double>::quiet_NaN();
    o.error = e.what();
  }
  o.name = name;
  return o;
}

RunReport run_suite(const RunConfig& config) {
  config.validate();
  RunReport r;
  r.json["command"] = "suite";
  r.json["seed"] = config.seed;
  Json checks = Json::array();
  Json failed = Json::array();
  r.pass = true;
  for (const auto& name : suite_check_names()) {
    const CheckOutcome o = run_check(name, config);
    checks.push_back(o.to_json());
    if (!o.pass) {
      failed.push_back(name);
      r.pass = false;
    }
  }
  r.json["checks"] = checks;
  r.json["failed"] = failed;
  r.json["pass"] = r.pass;
  return r;
}

}  // namespace jwdvv
