#include "jwdvv/prepotentials.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace jwdvv {

namespace {

constexpr double kCoincidence = 1e-12;

// Stencils may move an argument at most this fraction of the way to the
// nearest branch point of its logarithm.
constexpr double kBranchReach = 0.5;

void check_reach(Complex value, Complex anchor, double branch_distance) {
  if (std::abs(value - anchor) > kBranchReach * branch_distance)
    throw SingularityError("derivative disk hits singularity");
}

// x² log x², continued from the anchor argument when one is given.
Complex square_log_square(Complex x, const Complex* anchor) {
  if (anchor == nullptr) return x * x * std::log(x * x);
  check_reach(x, *anchor, std::abs(*anchor));
  return x * x * (std::log(*anchor * *anchor) + 2.0 * std::log(x / *anchor));
}

// Distance from d to the branch points πℤ of Li_N(e^{2id}).
double real_lattice_distance(Complex d) {
  return std::abs(d - kPi * std::round(d.real() / kPi));
}

Complex trilog_term(Complex d, const ModularPoint& m, const SeriesPolicy& policy,
                    const Complex* anchor) {
  if (anchor == nullptr) return elliptic_trilog(d, m, policy);
  check_reach(d, *anchor, real_lattice_distance(*anchor));
  return elliptic_trilog(d, m, policy, *anchor);
}

Complex lambda3_term(Complex d, const ModularPoint& m, const SeriesPolicy& policy,
                     const Complex* anchor) {
  if (anchor == nullptr) return lambdaN(3, d, m, policy);
  check_reach(d, *anchor, real_lattice_distance(*anchor));
  return lambdaN(3, d, m, policy, *anchor);
}

Complex pairwise_rational(const RationalChart& chart, const RationalChart* anchor) {
  chart.validate();
  const auto z = chart.full_coordinates();
  std::vector<Complex> za;
  if (anchor != nullptr) za = anchor->full_coordinates();
  Complex sum{0.0, 0.0};
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = 0; j < z.size(); ++j) {
      if (i == j) continue;
      const Complex d = z[i] - z[j];
      Complex da;
      if (anchor != nullptr) da = za[i] - za[j];
      const double weight = static_cast<double>(chart.multiplicity(static_cast<int>(i))) *
                            chart.multiplicity(static_cast<int>(j));
      sum += weight * square_log_square(d, anchor != nullptr ? &da : nullptr);
    }
  }
  return sum / 8.0;
}

}  // namespace

std::string to_string(ModelCase c) {
  switch (c) {
    case ModelCase::rational: return "rational";
    case ModelCase::deformed: return "deformed";
    case ModelCase::elliptic: return "elliptic";
  }
  return "unknown";
}

ModelCase parse_model_case(const std::string& name) {
  if (name == "rational") return ModelCase::rational;
  if (name == "deformed") return ModelCase::deformed;
  if (name == "elliptic") return ModelCase::elliptic;
  throw std::invalid_argument("unknown case '" + name + "'");
}

int RationalChart::multiplicity(int i) const {
  if (multiplicities.empty()) return 1;
  return multiplicities.at(static_cast<std::size_t>(i));
}

std::vector<Complex> RationalChart::full_coordinates() const {
  std::vector<Complex> z(coords.size() + 1);
  Complex weighted{0.0, 0.0};
  for (std::size_t i = 0; i < coords.size(); ++i) {
    z[i + 1] = coords[i];
    weighted += static_cast<double>(multiplicity(static_cast<int>(i + 1))) * coords[i];
  }
  z[0] = -weighted / static_cast<double>(multiplicity(0));
  return z;
}

void RationalChart::validate() const {
  if (rank < 1) throw std::invalid_argument("rank must be positive");
  if (static_cast<int>(coords.size()) != rank)
    throw std::invalid_argument("chart point dimension does not match rank");
  if (!multiplicities.empty()) {
    if (static_cast<int>(multiplicities.size()) != rank + 1)
      throw std::invalid_argument("need rank + 1 multiplicities");
    for (int k : multiplicities)
      if (k == 0) throw DomainError("invalid multiplicity");
  }
  const auto z = full_coordinates();
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j)
      if (std::abs(z[i] - z[j]) < kCoincidence) throw DomainError("discriminant point");
}

std::vector<Complex> EllipticChart::full_coordinates() const {
  std::vector<Complex> z(coords.size() + 1);
  Complex total{0.0, 0.0};
  for (std::size_t i = 0; i < coords.size(); ++i) {
    z[i + 1] = coords[i];
    total += coords[i];
  }
  z[0] = -total;
  return z;
}

double lattice_distance(Complex z, const ModularPoint& m) {
  const Complex tau_period = kPi * m.tau();
  const double b = std::round(z.imag() / tau_period.imag());
  const Complex shifted = z - b * tau_period;
  const double a = std::round(shifted.real() / kPi);
  const Complex reduced = shifted - a * kPi;
  double best = std::abs(reduced);
  for (int db = -1; db <= 1; ++db)
    for (int da = -1; da <= 1; ++da)
      best = std::min(best, std::abs(reduced + static_cast<double>(da) * kPi +
                                     static_cast<double>(db) * tau_period));
  return best;
}

void EllipticChart::validate() const {
  if (coords.empty()) throw std::invalid_argument("elliptic chart needs rank >= 1");
  const auto z = full_coordinates();
  const double strip = kPi * modular.tau().imag();
  for (const auto& zi : z)
    if (!(std::abs(zi.imag()) < strip)) throw DomainError("outside fundamental strip");
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (lattice_distance(z[i], modular) < kCoincidence) throw DomainError("lattice point");
    for (std::size_t j = i + 1; j < z.size(); ++j)
      if (lattice_distance(z[i] - z[j], modular) < kCoincidence) throw DomainError("discriminant point");
  }
}

Complex rational_dual_F(const RationalChart& chart, const RationalChart* anchor) {
  for (int i = 0; i <= chart.rank; ++i)
    if (!chart.multiplicities.empty() && chart.multiplicity(i) != 1)
      throw std::invalid_argument("rational_dual_F needs all multiplicities equal to 1");
  return pairwise_rational(chart, anchor);
}

Complex deformed_dual_F(const RationalChart& chart, const RationalChart* anchor) {
  return pairwise_rational(chart, anchor);
}

Complex elliptic_F_quantum(const EllipticChart& chart, const ModelOptions& options,
                           const EllipticChart* anchor) {
  const auto z = chart.full_coordinates();
  std::vector<Complex> za;
  if (anchor != nullptr) za = anchor->full_coordinates();
  const ModularPoint& m = chart.modular;
  const Complex at_one = elliptic_trilog(Complex{0.0, 0.0}, m, options.series);
  const double l = chart.rank();

  Complex pairs{0.0, 0.0};
  Complex singles{0.0, 0.0};
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = 0; j < z.size(); ++j) {
      if (i == j) continue;
      Complex da;
      if (anchor != nullptr) da = za[i] - za[j];
      pairs += trilog_term(z[i] - z[j], m, options.series, anchor != nullptr ? &da : nullptr) - at_one;
    }
    if (!options.drop_single_terms)
      singles += trilog_term(z[i], m, options.series, anchor != nullptr ? &za[i] : nullptr) - at_one;
  }
  return -pairs / 8.0 + (l + 1.0) / 4.0 * singles;
}

Complex elliptic_dual_F(const EllipticChart& chart, const ModelOptions& options,
                        const EllipticChart* anchor) {
  chart.validate();
  const auto z = chart.full_coordinates();
  Complex squares{0.0, 0.0};
  for (const auto& zi : z) squares += zi * zi;
  const Complex tau = chart.modular.tau();
  const Complex u = chart.u;
  const Complex polynomial =
      2.0 * kPi * kI * (0.5 * kPi * kPi * tau * u * u - 0.5 * u * squares);
  return polynomial + elliptic_F_quantum(chart, options, anchor);
}

Complex elliptic_F_temp(const EllipticChart& chart, const SeriesPolicy& policy,
                        const EllipticChart* anchor) {
  const auto z = chart.full_coordinates();
  std::vector<Complex> za;
  if (anchor != nullptr) za = anchor->full_coordinates();
  const ModularPoint& m = chart.modular;
  const double l = chart.rank();
  Complex pairs{0.0, 0.0};
  Complex singles{0.0, 0.0};
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = 0; j < z.size(); ++j) {
      if (i == j) continue;
      Complex da;
      if (anchor != nullptr) da = za[i] - za[j];
      pairs += lambda3_term(z[i] - z[j], m, policy, anchor != nullptr ? &da : nullptr);
    }
    singles += lambda3_term(z[i], m, policy, anchor != nullptr ? &za[i] : nullptr);
  }
  return pairs / 8.0 - (l + 1.0) / 4.0 * singles;
}

PrepotentialModel::PrepotentialModel(ModelCase kind, int rank, std::vector<int> multiplicities)
    : kind_(kind), rank_(rank), multiplicities_(std::move(multiplicities)) {}

PrepotentialModel PrepotentialModel::rational(int rank) {
  if (rank < 2) throw std::invalid_argument("rational case needs rank >= 2");
  return PrepotentialModel(ModelCase::rational, rank, std::vector<int>(static_cast<std::size_t>(rank + 1), 1));
}

PrepotentialModel PrepotentialModel::deformed(std::vector<int> multiplicities) {
  if (multiplicities.size() < 3) throw std::invalid_argument("deformed case needs rank >= 2");
  for (int k : multiplicities)
    if (k == 0) throw DomainError("invalid multiplicity");
  const int rank = static_cast<int>(multiplicities.size()) - 1;
  return PrepotentialModel(ModelCase::deformed, rank, std::move(multiplicities));
}

PrepotentialModel PrepotentialModel::elliptic(int rank) {
  if (rank < 1) throw std::invalid_argument("elliptic case needs rank >= 1");
  return PrepotentialModel(ModelCase::elliptic, rank, {});
}

std::vector<std::string> PrepotentialModel::coordinate_names() const {
  std::vector<std::string> names;
  if (kind_ == ModelCase::elliptic) names.emplace_back("u");
  for (int i = 1; i <= rank_; ++i) names.push_back("z" + std::to_string(i));
  if (kind_ == ModelCase::elliptic) names.emplace_back("tau");
  return names;
}

RationalChart PrepotentialModel::rational_chart(std::span<const Complex> point) const {
  if (kind_ == ModelCase::elliptic) throw std::logic_error("not a rational model");
  if (static_cast<int>(point.size()) != rank_)
    throw std::invalid_argument("point dimension does not match rank");
  RationalChart chart;
  chart.rank = rank_;
  chart.coords.assign(point.begin(), point.end());
  chart.multiplicities = multiplicities_;
  return chart;
}

EllipticChart PrepotentialModel::elliptic_chart(std::span<const Complex> point) const {
  if (kind_ != ModelCase::elliptic) throw std::logic_error("not an elliptic model");
  if (static_cast<int>(point.size()) != rank_ + 2)
    throw std::invalid_argument("point dimension does not match rank");
  EllipticChart chart;
  chart.u = point[0];
  chart.coords.assign(point.begin() + 1, point.begin() + 1 + rank_);
  chart.modular = ModularPoint(point[static_cast<std::size_t>(rank_ + 1)]);
  return chart;
}

Complex PrepotentialModel::value(std::span<const Complex> point) const {
  switch (kind_) {
    case ModelCase::rational: return rational_dual_F(rational_chart(point));
    case ModelCase::deformed: return deformed_dual_F(rational_chart(point));
    case ModelCase::elliptic: return elliptic_dual_F(elliptic_chart(point), options);
  }
  throw std::logic_error("unreachable");
}

ScalarField PrepotentialModel::germ(std::span<const Complex> anchor) const {
  if (kind_ == ModelCase::elliptic) {
    auto base = std::make_shared<const EllipticChart>(elliptic_chart(anchor));
    base->validate();
    return [model = *this, base](std::span<const Complex> p) {
      const EllipticChart chart = model.elliptic_chart(p);
      return elliptic_dual_F(chart, model.options, base.get());
    };
  }
  auto base = std::make_shared<const RationalChart>(rational_chart(anchor));
  base->validate();
  return [model = *this, base](std::span<const Complex> p) {
    return pairwise_rational(model.rational_chart(p), base.get());
  };
}

}  // namespace jwdvv
