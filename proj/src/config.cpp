#include "fracwave/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "fracwave/errors.hpp"

namespace fracwave {

namespace {

const std::map<std::string, std::set<std::string>> kSchema = {
    {"medium", {"c", "alpha0", "y"}},
    {"grid", {"n", "h", "boundary"}},
    {"model", {"kind", "eta", "gamma"}},
    {"pulse", {"kind", "f0", "bandwidth", "amplitude", "width_points"}},
    {"experiment",
     {"source", "source_index", "probe1_index", "probe2_index", "duration",
      "omega_min", "omega_max", "omega_count", "snapshot_every", "steps",
      "dt", "dt_refine", "frac_power_r", "sweep_models", "sweep_y",
      "sweep_alpha0"}},
    {"output", {"name"}},
};

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw ConfigError("invalid numeric value for " + key + ": '" + v + "'");
  }
}

std::size_t parse_size(const std::string& key, const std::string& v) {
  const double x = parse_double(key, v);
  if (x < 0.0 || x != std::floor(x))
    throw ConfigError("expected a nonnegative integer for " + key + ": '" + v +
                      "'");
  return static_cast<std::size_t>(x);
}

}  // namespace

ConfigDoc ConfigDoc::parse_text(const std::string& text) {
  ConfigDoc doc;
  std::istringstream in(text);
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw ConfigError("malformed section header '" + t + "'", line_no);
      section = trim(t.substr(1, t.size() - 2));
      if (!kSchema.count(section))
        throw ConfigError("unknown section [" + section + "]", line_no);
      continue;
    }
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected key=value, got '" + t + "'", line_no);
    if (section.empty())
      throw ConfigError("key outside of any [section]: '" + t + "'", line_no);
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (!kSchema.at(section).count(key))
      throw ConfigError("unknown key " + section + "." + key, line_no);
    const std::string full = section + "." + key;
    for (const auto& [k, v] : doc.entries_)
      if (k == full) throw ConfigError("duplicate key " + full, line_no);
    doc.entries_.emplace_back(full, value);
  }
  return doc;
}

ConfigDoc ConfigDoc::parse_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_text(ss.str());
}

bool ConfigDoc::has(const std::string& section, const std::string& key) const {
  const std::string full = section + "." + key;
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const auto& e) { return e.first == full; });
}

std::string ConfigDoc::require(const std::string& section,
                               const std::string& key) const {
  const std::string full = section + "." + key;
  for (const auto& [k, v] : entries_)
    if (k == full) return v;
  throw ConfigError("missing required key " + full);
}

std::string ConfigDoc::get_or(const std::string& section,
                              const std::string& key,
                              const std::string& fallback) const {
  return has(section, key) ? require(section, key) : fallback;
}

double ConfigDoc::require_double(const std::string& section,
                                 const std::string& key) const {
  return parse_double(section + "." + key, require(section, key));
}

double ConfigDoc::get_double_or(const std::string& section,
                                const std::string& key, double fallback) const {
  if (!has(section, key)) return fallback;
  return require_double(section, key);
}

std::size_t ConfigDoc::require_size(const std::string& section,
                                    const std::string& key) const {
  return parse_size(section + "." + key, require(section, key));
}

std::size_t ConfigDoc::get_size_or(const std::string& section,
                                   const std::string& key,
                                   std::size_t fallback) const {
  if (!has(section, key)) return fallback;
  return require_size(section, key);
}

std::vector<double> ConfigDoc::get_double_list(const std::string& section,
                                               const std::string& key) const {
  std::vector<double> out;
  if (!has(section, key)) return out;
  std::stringstream ss(require(section, key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string t = trim(item);
    if (!t.empty()) out.push_back(parse_double(section + "." + key, t));
  }
  return out;
}

std::vector<std::string> ConfigDoc::get_string_list(
    const std::string& section, const std::string& key) const {
  std::vector<std::string> out;
  if (!has(section, key)) return out;
  std::stringstream ss(require(section, key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string t = trim(item);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

MediumParams medium_from_config(const ConfigDoc& doc) {
  try {
    return MediumParams(doc.require_double("medium", "c"),
                        doc.require_double("medium", "alpha0"),
                        doc.require_double("medium", "y"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("medium: ") + e.what());
  }
}

Grid1D grid_from_config(const ConfigDoc& doc) {
  const std::string b = doc.require("grid", "boundary");
  Boundary boundary;
  if (b == "periodic")
    boundary = Boundary::Periodic;
  else if (b == "dirichlet")
    boundary = Boundary::Dirichlet;
  else
    throw ConfigError("grid.boundary must be 'periodic' or 'dirichlet', got '" +
                      b + "'");
  try {
    return Grid1D(doc.require_size("grid", "n"),
                  doc.require_double("grid", "h"), boundary);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
}

ModelChoice model_from_config(const ConfigDoc& doc) {
  const std::string kind = doc.require("model", "kind");
  ModelChoice mc;
  mc.kind_name = kind;
  try {
    if (kind == "lossless") mc.wave = ModelKind::lossless();
    else if (kind == "temporal_real") mc.wave = ModelKind::temporal_real();
    else if (kind == "temporal_complex") mc.wave = ModelKind::temporal_complex();
    else if (kind == "spatial_real") mc.wave = ModelKind::spatial_real();
    else if (kind == "spatial_complex") mc.wave = ModelKind::spatial_complex();
    else if (kind == "structural")
      mc.wave = ModelKind::structural(doc.require_double("model", "eta"));
    else if (kind == "burgers_standard") {
      mc.is_burgers = true;
      mc.burgers = BurgersVariant::Standard;
    } else if (kind == "burgers_frac_real") {
      mc.is_burgers = true;
      mc.burgers = BurgersVariant::FracReal;
    } else if (kind == "burgers_frac_complex") {
      mc.is_burgers = true;
      mc.burgers = BurgersVariant::FracComplex;
    } else if (kind == "burgers_gamma0") {
      mc.is_burgers = true;
      mc.burgers = BurgersVariant::Gamma0;
    } else {
      throw ConfigError("unknown model.kind '" + kind + "'");
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("model: ") + e.what());
  }
  return mc;
}

BurgersParams burgers_params_from_config(const ConfigDoc& doc) {
  try {
    return BurgersParams(doc.require_double("medium", "alpha0"),
                         doc.require_double("model", "gamma"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("model: ") + e.what());
  }
}

PulseSpec pulse_from_config(const ConfigDoc& doc) {
  PulseSpec spec;
  const std::string kind = doc.get_or("pulse", "kind", "gaussian_sine");
  if (kind == "gaussian_sine")
    spec.kind = PulseSpec::Kind::GaussianSine;
  else if (kind == "gaussian_bump")
    spec.kind = PulseSpec::Kind::GaussianBump;
  else
    throw ConfigError("pulse.kind must be 'gaussian_sine' or 'gaussian_bump'");
  spec.f0 = doc.require_double("pulse", "f0");
  spec.bandwidth = doc.require_double("pulse", "bandwidth");
  spec.amplitude = doc.get_double_or("pulse", "amplitude", 1.0);
  if (!(spec.f0 > 0.0)) throw ConfigError("pulse.f0 must be > 0");
  if (!(spec.bandwidth > 0.0 && spec.bandwidth < 2.0))
    throw ConfigError("pulse.bandwidth must lie in (0, 2)");
  return spec;
}

}  // namespace fracwave
