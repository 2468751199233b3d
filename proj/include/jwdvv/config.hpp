#ifndef JWDVV_CONFIG_HPP
#define JWDVV_CONFIG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jwdvv/numeric_core.hpp"
#include "jwdvv/prepotentials.hpp"
#include "jwdvv/superpotential_oracle.hpp"

namespace jwdvv {

struct RunConfig {
  ModelCase model_case = ModelCase::rational;
  int rank = 3;
  std::vector<int> multiplicities;  // deformed only
  ChartPoint point;                 // empty: draw seeded sample points
  std::optional<Complex> tau;       // elliptic: τ for an explicit point
  std::uint64_t seed = 1;
  int samples = 0;                  // number of sample points; 0 picks the per-check default

  SeriesPolicy series;
  DiffSpec diff;
  ResidueBudget budget;
  double residual_tolerance = 0.0;  // 0 picks the per-case default
  double oracle_tolerance = 0.0;    // 0 picks the per-case default

  bool flip_metric_sign = false;    // negative control
  bool drop_single_terms = false;   // negative control
  std::string out;

  // std::invalid_argument on inconsistent settings.
  void validate() const;
  // Chart point for the configured case, τ appended for elliptic.
  ChartPoint chart_point() const;
  PrepotentialModel model() const;
};

// "0.3", "-2i", "0.3+0.1i", "1e-3-2.5e-1i", "i".
Complex parse_complex(const std::string& text);
// Comma separated.
std::vector<Complex> parse_complex_list(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);

// key=value lines; '#' starts a comment; blank lines are skipped.
std::map<std::string, std::string> read_config_file(const std::string& path);

// Applies one setting.  Keys: case, rank, k, point, tau, seed, samples,
// tol-series, max-terms, tol-deriv, deriv-radius, deriv-samples,
// tol-residual, tol-oracle, contour-samples, contour-fraction,
// flip-metric-sign, drop-single-terms, out.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

RunConfig make_config(const std::map<std::string, std::string>& settings);

}  // namespace jwdvv

#endif  // JWDVV_CONFIG_HPP
