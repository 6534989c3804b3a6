#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracwave/attenuation_lab.hpp"
#include "fracwave/burgers_models.hpp"
#include "fracwave/wave_models.hpp"

namespace fracwave {

/// Parsed key=value document with [section] headers. Unknown sections or
/// keys are rejected with their line number; values are re-validated by the
/// domain-type constructors when resolved.
class ConfigDoc {
 public:
  static ConfigDoc parse_file(const std::string& path);
  static ConfigDoc parse_text(const std::string& text);

  bool has(const std::string& section, const std::string& key) const;
  std::string require(const std::string& section, const std::string& key) const;
  std::string get_or(const std::string& section, const std::string& key,
                     const std::string& fallback) const;

  double require_double(const std::string& section,
                        const std::string& key) const;
  double get_double_or(const std::string& section, const std::string& key,
                       double fallback) const;
  std::size_t require_size(const std::string& section,
                           const std::string& key) const;
  std::size_t get_size_or(const std::string& section, const std::string& key,
                          std::size_t fallback) const;
  std::vector<double> get_double_list(const std::string& section,
                                      const std::string& key) const;
  std::vector<std::string> get_string_list(const std::string& section,
                                           const std::string& key) const;

  /// All entries in file order, as "section.key" / value pairs.
  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;  // "sec.key", val
};

struct ModelChoice {
  bool is_burgers = false;
  ModelKind wave;      // valid when !is_burgers
  BurgersVariant burgers = BurgersVariant::Standard;
  std::string kind_name;
};

MediumParams medium_from_config(const ConfigDoc& doc);
Grid1D grid_from_config(const ConfigDoc& doc);
ModelChoice model_from_config(const ConfigDoc& doc);
BurgersParams burgers_params_from_config(const ConfigDoc& doc);
PulseSpec pulse_from_config(const ConfigDoc& doc);

}  // namespace fracwave
