#ifndef JWDVV_RUNS_HPP
#define JWDVV_RUNS_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "jwdvv/config.hpp"

namespace jwdvv {

using Json = nlohmann::ordered_json;

// JSON encoding used in every report: doubles rounded to 15 significant
// digits, complex numbers as [re, im].
double round15(double x);
Json to_json(Complex z);
Json to_json(std::span<const Complex> values);
Json to_json(const ComplexMatrix& m);
Json to_json(const Tensor3& t);

// Seeded chart points inside the valid region: coordinates in
// [−1,1] + [−0.2,0.2]i, elliptic τ with Re τ ∈ [−0.5,0.5], Im τ ∈ [1.2,2.5].
// Points whose singular points (z⁰..z^l, plus 0 and lattice images for the
// elliptic case, plus critical points for the polynomial cases) come closer
// than the minimum separation are redrawn, at most 100 times per point.
std::vector<ChartPoint> sample_points(const PrepotentialModel& model, int count, std::uint64_t seed);

struct RunReport {
  Json json;
  bool pass = false;
};

RunReport run_wdvv_check(const RunConfig& config);
RunReport run_oracle_compare(const RunConfig& config);
RunReport run_suite(const RunConfig& config);

struct CheckOutcome {
  std::string name;    // "<module>.<check>"
  bool pass = false;
  double value = 0.0;  // measured deviation or residual
  double tolerance = 0.0;
  std::string error;   // set when the check raised
  Json details = Json::object();

  std::string module() const { return name.substr(0, name.find('.')); }
  Json to_json() const;
};

// Names of every suite check, sorted.
std::vector<std::string> suite_check_names();
// Runs one suite check; exceptions become a failed outcome with error set.
CheckOutcome run_check(const std::string& name, const RunConfig& config);

}  // namespace jwdvv

#endif  // JWDVV_RUNS_HPP
