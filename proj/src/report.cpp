#include "homshift/report.hpp"

namespace homshift {

DefectReport DefectReport::make(std::string name, double value, double tolerance,
                                nlohmann::ordered_json context) {
  DefectReport r;
  r.name = std::move(name);
  r.value = value;
  r.tolerance = tolerance;
  r.pass = value <= tolerance;
  r.context = std::move(context);
  return r;
}

DefectReport make_lower_bound_report(std::string name, double value, double threshold,
                                     nlohmann::ordered_json context) {
  DefectReport r = DefectReport::make(std::move(name), value, threshold, std::move(context));
  r.pass = value >= threshold;
  r.context["bound"] = "lower";
  return r;
}

nlohmann::ordered_json DefectReport::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["value"] = value;
  j["tolerance"] = tolerance;
  j["pass"] = pass;
  j["context"] = context;
  return j;
}

}  // namespace homshift
