#pragma once

#include <map>
#include <string>
#include <vector>

#include "homlab/experiments.hpp"
#include "homlab/fbar.hpp"
#include "homlab/field.hpp"
#include "homlab/mesh.hpp"

namespace homlab {

/// Block-structured key-value configuration ([section] lines, key = value,
/// '#' comments). Values keep raw strings; typed getters parse on demand.
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text);

  bool has(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key,
                  const std::string& fallback = "") const;
  double get_double(const std::string& section, const std::string& key,
                    double fallback) const;
  int get_int(const std::string& section, const std::string& key, int fallback) const;
  bool get_bool(const std::string& section, const std::string& key,
                bool fallback) const;
  std::vector<double> get_doubles(const std::string& section,
                                  const std::string& key) const;

  const std::map<std::string, std::map<std::string, std::string>>& sections() const {
    return sections_;
  }

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

DomainSpec domain_from_config(const Config& cfg);
CoefficientField field_from_config(const Config& cfg);
OscillatingData data_from_config(const Config& cfg);
std::vector<double> epsilons_from_config(const Config& cfg);
ExperimentOptions experiment_options_from_config(const Config& cfg);

}  // namespace homlab
