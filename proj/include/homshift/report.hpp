#pragma once

#include <string>

#include "json.hpp"

namespace homshift {

// Named residual with its acceptance tolerance. The context echoes every
// parameter needed to reproduce the measurement in isolation.
struct DefectReport {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  nlohmann::ordered_json context = nlohmann::ordered_json::object();

  // pass is value <= tolerance. NaN never passes.
  static DefectReport make(std::string name, double value, double tolerance,
                           nlohmann::ordered_json context = nlohmann::ordered_json::object());

  // {name, value, tolerance, pass, context{...}}
  nlohmann::ordered_json to_json() const;
};

// Same as DefectReport::make but passes when value >= threshold. Used for
// negative controls, where a large defect is the expected outcome.
DefectReport make_lower_bound_report(std::string name, double value, double threshold,
                                     nlohmann::ordered_json context = nlohmann::ordered_json::object());

}  // namespace homshift
