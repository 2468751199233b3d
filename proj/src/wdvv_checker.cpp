#include "jwdvv/wdvv_checker.hpp"

#include <algorithm>
#include <stdexcept>

namespace jwdvv {

MetricMatrix::MetricMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols())
    throw std::invalid_argument("metric must be square");
  const double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
  if ((entries_ - entries_.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw DomainError("metric is not symmetric");
  Eigen::PartialPivLU<ComplexMatrix> lu(entries_);
  if (!(std::abs(lu.determinant()) > 1e-12)) throw DomainError("degenerate metric");
  inverse_ = lu.inverse();
}

Tensor3::Tensor3(int dimension) : dim_(dimension) {
  if (dimension < 0) throw std::invalid_argument("negative tensor dimension");
  const auto n = static_cast<std::size_t>(dimension);
  data_.assign(n * n * n, Complex{0.0, 0.0});
}

std::size_t Tensor3::offset(int a, int b, int c) const {
  if (a < 0 || b < 0 || c < 0 || a >= dim_ || b >= dim_ || c >= dim_)
    throw std::out_of_range("tensor index");
  std::array<int, 3> s{a, b, c};
  std::sort(s.begin(), s.end());
  const auto n = static_cast<std::size_t>(dim_);
  return (static_cast<std::size_t>(s[0]) * n + static_cast<std::size_t>(s[1])) * n +
         static_cast<std::size_t>(s[2]);
}

double Tensor3::max_abs() const {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

MetricMatrix intersection_metric(ModelCase c, int rank, bool flip_z_block) {
  if (rank < 1) throw std::invalid_argument("rank must be positive");
  const double z_sign = flip_z_block ? -1.0 : 1.0;
  switch (c) {
    case ModelCase::rational: {
      ComplexMatrix g = ComplexMatrix::Constant(rank, rank, Complex{1.0, 0.0});
      g.diagonal().array() += 1.0;
      return MetricMatrix(z_sign * g);
    }
    case ModelCase::deformed:
      throw std::invalid_argument("use oracle metric");
    case ModelCase::elliptic: {
      const int n = rank + 2;
      ComplexMatrix g = ComplexMatrix::Zero(n, n);
      g(0, n - 1) = g(n - 1, 0) = kPi * kPi;
      for (int i = 1; i <= rank; ++i)
        for (int j = 1; j <= rank; ++j) g(i, j) = -z_sign * (i == j ? 2.0 : 1.0);
      return MetricMatrix(g);
    }
  }
  throw std::logic_error("unreachable");
}

Tensor3 structure_tensor(const PrepotentialModel& model, std::span<const Complex> point,
                         const DiffSpec& spec) {
  const int n = model.dimension();
  if (static_cast<int>(point.size()) != n)
    throw std::invalid_argument("point dimension does not match model");
  const ScalarField field = model.germ(point);
  Tensor3 t(n);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      for (int c = b; c < n; ++c) t.set(a, b, c, mixed_partial_3(field, point, {a, b, c}, spec));
  return t;
}

Complex wdvv_component(const Tensor3& tensor, const MetricMatrix& metric, std::array<int, 4> index) {
  const int n = tensor.dimension();
  if (metric.dimension() != n) throw std::invalid_argument("tensor and metric dimensions differ");
  const auto [al, be, ga, de] = index;
  const ComplexMatrix& ginv = metric.inverse();
  Complex r{0.0, 0.0};
  for (int l = 0; l < n; ++l)
    for (int m = 0; m < n; ++m)
      r += tensor(al, be, l) * ginv(l, m) * tensor(m, ga, de) - tensor(de, be, l) * ginv(l, m) * tensor(m, ga, al);
  return r;
}

WDVVReport wdvv_residual(const Tensor3& tensor, const MetricMatrix& metric, double tolerance,
                         std::size_t keep_worst) {
  const int n = tensor.dimension();
  if (metric.dimension() != n) throw std::invalid_argument("tensor and metric dimensions differ");
  const ComplexMatrix& ginv = metric.inverse();

  // h[a][b][μ] = Σ_λ c_abλ G^λμ
  std::vector<Complex> h(static_cast<std::size_t>(n * n * n));
  auto hi = [n](int a, int b, int m) { return static_cast<std::size_t>((a * n + b) * n + m); };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int m = 0; m < n; ++m) {
        Complex s{0.0, 0.0};
        for (int l = 0; l < n; ++l) s += tensor(a, b, l) * ginv(l, m);
        h[hi(a, b, m)] = s;
      }

  WDVVReport report;
  report.tolerance = tolerance;
  report.low_rank = n <= 2;
  std::vector<ResidualEntry> all;
  for (int al = 0; al < n; ++al)
    for (int de = al + 1; de < n; ++de)
      for (int be = 0; be < n; ++be)
        for (int ga = be + 1; ga < n; ++ga) {
          Complex r{0.0, 0.0};
          for (int m = 0; m < n; ++m)
            r += h[hi(al, be, m)] * tensor(m, ga, de) - h[hi(de, be, m)] * tensor(m, ga, al);
          const double v = std::abs(r);
          report.max_abs_residual = std::max(report.max_abs_residual, v);
          all.push_back({{al, be, ga, de}, v});
        }

  double row_sum = 0.0;
  for (int i = 0; i < n; ++i) row_sum = std::max(row_sum, ginv.row(i).cwiseAbs().sum());
  const double cmax = tensor.max_abs();
  report.normalization = cmax * cmax * row_sum;
  report.max_relative_residual =
      report.normalization > 0.0 ? report.max_abs_residual / report.normalization : 0.0;
  report.pass = report.max_relative_residual < tolerance;

  std::stable_sort(all.begin(), all.end(), [](const ResidualEntry& x, const ResidualEntry& y) {
    return x.abs_residual > y.abs_residual;
  });
  if (all.size() > keep_worst) all.resize(keep_worst);
  report.worst = std::move(all);
  return report;
}

}  // namespace jwdvv
