#include "homlab/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace homlab {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::parse_string(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line, section = "global";
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      cfg.sections_[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: expected key = value, got '" + line + "'");
    cfg.sections_[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str());
}

bool Config::has(const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  return s != sections_.end() && s->second.count(key) > 0;
}

std::string Config::get(const std::string& section, const std::string& key,
                        const std::string& fallback) const {
  const auto s = sections_.find(section);
  if (s == sections_.end()) return fallback;
  const auto k = s->second.find(key);
  return k == s->second.end() ? fallback : k->second;
}

double Config::get_double(const std::string& section, const std::string& key,
                          double fallback) const {
  const std::string v = get(section, key);
  return v.empty() ? fallback : std::stod(v);
}

int Config::get_int(const std::string& section, const std::string& key,
                    int fallback) const {
  const std::string v = get(section, key);
  return v.empty() ? fallback : std::stoi(v);
}

bool Config::get_bool(const std::string& section, const std::string& key,
                      bool fallback) const {
  const std::string v = get(section, key);
  if (v.empty()) return fallback;
  return v == "true" || v == "1" || v == "yes" || v == "on";
}

std::vector<double> Config::get_doubles(const std::string& section,
                                        const std::string& key) const {
  std::vector<double> out;
  std::istringstream in(get(section, key));
  double v;
  while (in >> v) out.push_back(v);
  return out;
}

DomainSpec domain_from_config(const Config& cfg) {
  const std::string type = cfg.get("domain", "type", "circle");
  if (type == "circle") return DomainSpec::circle(cfg.get_double("domain", "a", 1.0));
  if (type == "ellipse")
    return DomainSpec::ellipse(cfg.get_double("domain", "a", 2.0),
                               cfg.get_double("domain", "b", 1.0));
  if (type == "superellipse")
    return DomainSpec::superellipse(cfg.get_int("domain", "k", 4),
                                    cfg.get_double("domain", "a", 1.0),
                                    cfg.get_double("domain", "b", 1.0));
  if (type == "fourier") {
    std::vector<double> ac = cfg.get_doubles("domain", "ac");
    std::vector<double> as = cfg.get_doubles("domain", "as");
    return DomainSpec::fourier(cfg.get_double("domain", "r0", 1.0), ac, as);
  }
  throw std::runtime_error("config: unknown domain type '" + type + "'");
}

CoefficientField field_from_config(const Config& cfg) {
  const std::string type = cfg.get("field", "type", "laminate");
  if (type == "constant") {
    std::vector<double> t = cfg.get_doubles("field", "tensor");
    if (t.empty()) t = {1.0, 0.0, 0.0, 1.0};
    if (t.size() != 4) throw std::runtime_error("config: constant tensor needs 4 entries");
    return constant_field(2, 1, t, cfg.get_double("field", "lambda", 0.25));
  }
  if (type == "identity") return identity_field(2);
  if (type == "laminate")
    return laminate_field(2, cfg.get_double("field", "base", 2.0),
                          cfg.get_double("field", "amplitude", 1.0));
  if (type == "trig") {
    // modes = kx ky amp [; kx ky amp]...
    std::vector<TrigMode> modes;
    std::istringstream in(cfg.get("field", "modes", "1 0 0.5"));
    std::string part;
    while (std::getline(in, part, ';')) {
      std::istringstream pin(part);
      TrigMode mo;
      if (pin >> mo.wave[0] >> mo.wave[1] >> mo.amplitude) modes.push_back(mo);
    }
    return trig_field(2, cfg.get_double("field", "base", 2.0), modes);
  }
  throw std::runtime_error("config: unknown field type '" + type + "'");
}

namespace {

std::function<double(const Point2&)> g_from_string(const std::string& name) {
  if (name == "one") return [](const Point2&) { return 1.0; };
  if (name == "x") return [](const Point2& p) { return p[0]; };
  if (name == "y") return [](const Point2& p) { return p[1]; };
  if (name.rfind("affine", 0) == 0) {
    double c0 = 0, cx = 0, cy = 0;
    std::sscanf(name.c_str(), "affine(%lf,%lf,%lf)", &c0, &cx, &cy);
    return [c0, cx, cy](const Point2& p) { return c0 + cx * p[0] + cy * p[1]; };
  }
  throw std::runtime_error("config: unknown g '" + name + "'");
}

}  // namespace

OscillatingData data_from_config(const Config& cfg) {
  const std::string type = cfg.get("data", "type", "trig");
  auto g = g_from_string(cfg.get("data", "g", "one"));
  if (type == "plain") return plain_data(g);
  if (type == "trig") {
    std::vector<double> w = cfg.get_doubles("data", "waves");
    std::vector<double> amps = cfg.get_doubles("data", "amps");
    if (w.size() % 2 != 0) throw std::runtime_error("config: waves need kx ky pairs");
    std::vector<std::array<int, 2>> waves;
    for (std::size_t i = 0; i + 1 < w.size(); i += 2)
      waves.push_back({static_cast<int>(w[i]), static_cast<int>(w[i + 1])});
    if (amps.size() != waves.size())
      throw std::runtime_error("config: amps must match waves");
    return trig_data(g, cfg.get_double("data", "offset", 0.0), waves, amps);
  }
  throw std::runtime_error("config: unknown data type '" + type + "'");
}

std::vector<double> epsilons_from_config(const Config& cfg) {
  std::vector<double> eps = cfg.get_doubles("experiment", "epsilons");
  if (eps.empty())
    eps = {1.0 / 8.0, 1.0 / 12.0, 1.0 / 16.0, 1.0 / 24.0, 1.0 / 32.0};
  return eps;
}

ExperimentOptions experiment_options_from_config(const Config& cfg) {
  ExperimentOptions opts;
  opts.h_interior = cfg.get_double("experiment", "h_interior", 1.0 / 32.0);
  opts.reference_h_factor = cfg.get_double("experiment", "reference_h_factor", 8.0);
  opts.verbose = cfg.get_bool("experiment", "verbose", false);
  opts.fbar.cell_resolution = cfg.get_int("grids", "cell_n", 64);
  opts.fbar.layer_n1 = cfg.get_int("grids", "layer_n1", 64);
  opts.fbar.layer_n2 = cfg.get_int("grids", "layer_n2", 0);
  opts.fbar.layer_ht = cfg.get_double("grids", "layer_ht", 1.0 / 16.0);
  opts.fbar.sample_count = cfg.get_int("grids", "fbar_samples", 0);
  opts.fbar.flag_threshold = cfg.get_double("tolerances", "flag_kappa", 1e-3);
  opts.fbar.rel_tol = cfg.get_double("tolerances", "layer_tol", 1e-8);
  opts.fem.rel_tol = cfg.get_double("tolerances", "fem_tol", 1e-9);
  return opts;
}

}  // namespace homlab
