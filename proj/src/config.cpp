#include "jwdvv/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace jwdvv {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) parts.push_back(trim(item));
  return parts;
}

double parse_double(const std::string& text, const std::string& key) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad number for " + key + ": '" + text + "'");
  }
  if (used != text.size()) throw std::invalid_argument("bad number for " + key + ": '" + text + "'");
  return v;
}

int parse_int(const std::string& text, const std::string& key) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad integer for " + key + ": '" + text + "'");
  }
  if (used != text.size()) throw std::invalid_argument("bad integer for " + key + ": '" + text + "'");
  return static_cast<int>(v);
}

bool parse_bool(const std::string& text, const std::string& key) {
  std::string t = text;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "1" || t == "true" || t == "yes" || t == "on") return true;
  if (t == "0" || t == "false" || t == "no" || t == "off") return false;
  throw std::invalid_argument("bad boolean for " + key + ": '" + text + "'");
}

}  // namespace

Complex parse_complex(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty complex number");
  const auto bad = [&]() { return std::invalid_argument("bad complex number '" + raw + "'"); };

  if (s.back() != 'i' && s.back() != 'j') return {parse_double(s, "complex"), 0.0};

  // Imaginary part present: find the sign that starts it (not an exponent sign).
  const std::string body = s.substr(0, s.size() - 1);
  std::size_t split_at = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split_at = k;
      break;
    }
  }
  const auto imag_of = [&](const std::string& t) -> double {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_double(t, "complex");
  };
  try {
    if (split_at == std::string::npos) return {0.0, imag_of(body)};
    return {parse_double(body.substr(0, split_at), "complex"), imag_of(body.substr(split_at))};
  } catch (const std::invalid_argument&) {
    throw bad();
  }
}

std::vector<Complex> parse_complex_list(const std::string& text) {
  std::vector<Complex> out;
  for (const auto& part : split(text, ','))
    if (!part.empty()) out.push_back(parse_complex(part));
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& part : split(text, ','))
    if (!part.empty()) out.push_back(parse_int(part, "list"));
  return out;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::map<std::string, std::string> settings;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(number) + ": expected key=value");
    settings[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return settings;
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "case") c.model_case = parse_model_case(value);
  else if (key == "rank") c.rank = parse_int(value, key);
  else if (key == "k") c.multiplicities = parse_int_list(value);
  else if (key == "point") c.point = parse_complex_list(value);
  else if (key == "tau") c.tau = parse_complex(value);
  else if (key == "seed") c.seed = static_cast<std::uint64_t>(std::stoull(value));
  else if (key == "samples") c.samples = parse_int(value, key);
  else if (key == "tol-series") c.series.tail_tolerance = parse_double(value, key);
  else if (key == "max-terms") c.series.max_terms = parse_int(value, key);
  else if (key == "tol-deriv") c.diff.tolerance = parse_double(value, key);
  else if (key == "deriv-radius") c.diff.radius = parse_double(value, key);
  else if (key == "deriv-samples") c.diff.samples = parse_int(value, key);
  else if (key == "tol-residual") c.residual_tolerance = parse_double(value, key);
  else if (key == "tol-oracle") c.oracle_tolerance = parse_double(value, key);
  else if (key == "contour-samples") c.budget.samples = parse_int(value, key);
  else if (key == "contour-fraction") c.budget.radius_fraction = parse_double(value, key);
  else if (key == "flip-metric-sign") c.flip_metric_sign = parse_bool(value, key);
  else if (key == "drop-single-terms") c.drop_single_terms = parse_bool(value, key);
  else if (key == "out") c.out = value;
  else throw std::invalid_argument("unknown setting '" + key + "'");
}

RunConfig make_config(const std::map<std::string, std::string>& settings) {
  RunConfig c;
  for (const auto& [key, value] : settings) apply_setting(c, key, value);
  c.validate();
  return c;
}

void RunConfig::validate() const {
  series.validate();
  diff.validate();
  budget.validate();
  if (samples < 0) throw std::invalid_argument("samples must be non-negative");
  if (residual_tolerance < 0.0 || oracle_tolerance < 0.0)
    throw std::invalid_argument("tolerances must be positive");
  switch (model_case) {
    case ModelCase::rational:
      if (rank < 2) throw std::invalid_argument("rational case needs rank >= 2");
      break;
    case ModelCase::deformed:
      if (multiplicities.empty()) throw std::invalid_argument("deformed case needs k");
      if (static_cast<int>(multiplicities.size()) != rank + 1)
        throw std::invalid_argument("k must have rank + 1 entries");
      break;
    case ModelCase::elliptic:
      if (rank < 1) throw std::invalid_argument("elliptic case needs rank >= 1");
      break;
  }
  if (!point.empty()) {
    const auto n = static_cast<int>(point.size());
    if (model_case == ModelCase::elliptic) {
      const int expected = tau ? rank + 1 : rank + 2;
      if (n != expected)
        throw std::invalid_argument("elliptic point needs u, z1..zl" + std::string(tau ? "" : ", tau"));
    } else if (n != rank) {
      throw std::invalid_argument("point needs rank coordinates");
    }
  }
}

ChartPoint RunConfig::chart_point() const {
  ChartPoint p = point;
  if (model_case == ModelCase::elliptic && tau) p.push_back(*tau);
  return p;
}

PrepotentialModel RunConfig::model() const {
  PrepotentialModel m = [&] {
    switch (model_case) {
      case ModelCase::rational: return PrepotentialModel::rational(rank);
      case ModelCase::deformed: return PrepotentialModel::deformed(multiplicities);
      case ModelCase::elliptic: return PrepotentialModel::elliptic(rank);
    }
    throw std::logic_error("unreachable");
  }();
  m.options.series = series;
  m.options.drop_single_terms = drop_single_terms;
  return m;
}

}  // namespace jwdvv
