#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "jwdvv/runs.hpp"

namespace {

using namespace jwdvv;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::string format_complex(Complex z) {
  // no "-0.000"
  if (z.real() == 0.0) z.real(0.0);
  if (z.imag() == 0.0) z.imag(0.0);
  std::ostringstream os;
  os << std::showpoint << std::setprecision(15) << z.real() << (std::signbit(z.imag()) ? '-' : '+')
     << std::abs(z.imag()) << 'i';
  return os.str();
}

// Options shared by the run commands; values are collected as key=value
// settings so flags and config files go through one parser.
struct RunOptions {
  std::string config_path;
  std::map<std::string, std::string> values;
  bool flip = false;
  bool drop = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "key=value configuration file");
    for (const char* key : {"case", "rank", "k", "point", "tau", "seed", "samples", "out", "tol-series",
                            "max-terms", "tol-deriv", "deriv-radius", "deriv-samples", "tol-residual",
                            "tol-oracle", "contour-samples", "contour-fraction"}) {
      const std::string name = std::string("--") + key;
      cmd->add_option_function<std::string>(
          name, [this, k = std::string(key)](const std::string& v) { values[k] = v; }, key);
    }
    cmd->add_flag("--flip-metric-sign", flip, "negate the elliptic metric z block (negative control)");
    cmd->add_flag("--drop-single-terms", drop, "drop the single-z trilog block of F*_quantum (negative control)");
  }

  RunConfig build() const {
    std::map<std::string, std::string> settings;
    if (!config_path.empty()) settings = read_config_file(config_path);
    for (const auto& [k, v] : values) settings[k] = v;
    if (flip) settings["flip-metric-sign"] = "true";
    if (drop) settings["drop-single-terms"] = "true";
    return make_config(settings);
  }
};

int emit(const RunReport& report, const RunConfig& config) {
  const std::string text = report.json.dump(2);
  std::cout << text << '\n';
  if (!config.out.empty()) {
    std::ofstream out(config.out);
    if (!out) throw std::invalid_argument("cannot write '" + config.out + "'");
    out << text << '\n';
  }
  return report.pass ? kExitPass : kExitFail;
}

struct EvalOptions {
  std::string function;
  std::string z = "0";
  std::string tau = "i";
  std::string q;
  std::string zeta;
  int n = 0;
  int d = 0;
  std::string k;
  // prepotential
  std::string model_case = "rational";
  int rank = 2;
  std::string point;
  std::string variant = "dual";
};

Complex eval_prepotential(const EvalOptions& o) {
  std::map<std::string, std::string> settings{{"case", o.model_case}, {"rank", std::to_string(o.rank)}};
  if (!o.point.empty()) settings["point"] = o.point;
  if (!o.k.empty()) settings["k"] = o.k;
  if (o.model_case == "elliptic" && !o.tau.empty() && o.tau != "i") settings["tau"] = o.tau;
  RunConfig config = make_config(settings);
  if (config.point.empty()) throw std::invalid_argument("--point is required");
  const PrepotentialModel model = config.model();
  const ChartPoint p = config.chart_point();
  if (static_cast<int>(p.size()) != model.dimension())
    throw std::invalid_argument("point dimension does not match case and rank");
  if (o.variant == "dual") return model.value(p);
  if (model.kind() != ModelCase::elliptic) throw std::invalid_argument("variant '" + o.variant + "' is elliptic only");
  const EllipticChart chart = model.elliptic_chart(p);
  if (o.variant == "quantum") {
    chart.validate();
    return elliptic_F_quantum(chart, model.options);
  }
  if (o.variant == "temp") {
    chart.validate();
    return elliptic_F_temp(chart, model.options.series);
  }
  throw std::invalid_argument("unknown variant '" + o.variant + "'");
}

Complex evaluate(const EvalOptions& o) {
  const std::string& f = o.function;
  if (f == "prepotential") return eval_prepotential(o);
  const Complex z = parse_complex(o.z);
  if (f == "polylog") return std::abs(z) < 1.0 ? polylog(o.n, z) : polylog_inverted(o.n, z);
  const ModularPoint m(parse_complex(o.tau));
  if (f == "theta1") return theta1(z, m, o.d);
  if (f == "theta1-logder") return theta1_log_derivative(z, m);
  if (f == "lambdaN") return lambdaN(o.n, z, m);
  if (f == "epolylog3") {
    if (!o.q.empty() || !o.zeta.empty()) {
      if (o.q.empty() || o.zeta.empty()) throw std::invalid_argument("--q and --zeta go together");
      return elliptic_polylog(3, parse_complex(o.q), parse_complex(o.zeta));
    }
    return elliptic_trilog(z, m);
  }
  if (f == "eisenstein") return eisenstein(o.k.empty() ? 2 : std::stoi(o.k), m);
  throw std::invalid_argument("unknown function '" + f + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual prepotentials, WDVV residuals and residue oracles"};
  app.require_subcommand(1);

  EvalOptions ev;
  auto* eval = app.add_subcommand("eval", "evaluate a special function or prepotential");
  eval->add_option("function", ev.function,
                   "theta1 | theta1-logder | polylog | lambdaN | epolylog3 | eisenstein | prepotential")
      ->required();
  eval->add_option("--z", ev.z, "argument z");
  eval->add_option("--tau", ev.tau, "modular parameter tau");
  eval->add_option("--n", ev.n, "polylog / lambdaN order");
  eval->add_option("--d", ev.d, "theta1 derivative order");
  eval->add_option("--k", ev.k, "Eisenstein weight, or multiplicities for prepotential");
  eval->add_option("--q", ev.q, "epolylog3 nome argument");
  eval->add_option("--zeta", ev.zeta, "epolylog3 zeta argument");
  eval->add_option("--case", ev.model_case, "prepotential case");
  eval->add_option("--rank", ev.rank, "prepotential rank");
  eval->add_option("--point", ev.point, "prepotential chart point");
  eval->add_option("--variant", ev.variant, "dual | quantum | temp");

  EvalOptions ep;
  auto* eval_prep = app.add_subcommand("eval-prepotential", "evaluate a dual prepotential");
  ep.function = "prepotential";
  ep.tau = "";
  eval_prep->add_option("--case", ep.model_case, "rational | deformed | elliptic");
  eval_prep->add_option("--rank", ep.rank, "rank l");
  eval_prep->add_option("--k", ep.k, "multiplicities k0..kl (deformed)");
  eval_prep->add_option("--point", ep.point, "z1..zl, or u,z1..zl[,tau] for elliptic")->required();
  eval_prep->add_option("--tau", ep.tau, "tau (elliptic, when not last in --point)");
  eval_prep->add_option("--variant", ep.variant, "dual | quantum | temp");

  RunOptions wdvv_opts;
  RunOptions oracle_opts;
  RunOptions suite_opts;
  auto* wdvv = app.add_subcommand("wdvv-check", "WDVV residual of a dual prepotential");
  auto* oracle = app.add_subcommand("oracle-compare", "compare closed forms with the residue oracle");
  auto* suite = app.add_subcommand("suite", "run every verification check");
  wdvv_opts.attach(wdvv);
  oracle_opts.attach(oracle);
  suite_opts.attach(suite);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*eval) {
      std::cout << format_complex(evaluate(ev)) << '\n';
      return kExitPass;
    }
    if (*eval_prep) {
      std::cout << format_complex(eval_prepotential(ep)) << '\n';
      return kExitPass;
    }
    if (*wdvv) {
      const RunConfig config = wdvv_opts.build();
      return emit(run_wdvv_check(config), config);
    }
    if (*oracle) {
      const RunConfig config = oracle_opts.build();
      return emit(run_oracle_compare(config), config);
    }
    if (*suite) {
      const RunConfig config = suite_opts.build();
      return emit(run_suite(config), config);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
