#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "stratq/cost.hpp"
#include "stratq/types.hpp"

namespace stratq {

// Cost mini-grammar: "poly:<c_E>:<p>" for c_E * mu^p, "poa:<q>" for mu^q / q.
inline CostFunction parse_cost_spec(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);

  auto number = [&spec](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("cost spec '" + spec + "': '" + s + "' is not a number");
    }
    if (used != s.size())
      throw std::invalid_argument("cost spec '" + spec + "': '" + s + "' is not a number");
    return v;
  };

  if (parts.size() == 3 && parts[0] == "poly")
    return poly_cost(number(parts[1]), number(parts[2]));
  if (parts.size() == 2 && parts[0] == "poa") return normalized_power_cost(number(parts[1]));
  throw std::invalid_argument("cost spec '" + spec +
                              "': expected poly:<c_E>:<p> or poa:<q>");
}

// Optional JSON config file.  Recognized keys:
//   "cost": {"family": "polynomial", "c_E": .., "p": ..}
//           or {"family": "normalized_power", "q": ..}
//   "econ": {"c_S": .., "w": ..}
// Absent keys leave the caller's defaults in place.
struct FileConfig {
  bool has_cost = false;
  CostFunction cost;
  bool has_econ = false;
  double c_S = 1.0;
  double w = 1.0;
};

inline FileConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config '" + path + "': " + e.what());
  }

  FileConfig fc;
  if (j.contains("cost")) {
    const auto& c = j.at("cost");
    const std::string family = c.at("family").get<std::string>();
    if (family == "polynomial")
      fc.cost = poly_cost(c.at("c_E").get<double>(), c.at("p").get<double>());
    else if (family == "normalized_power")
      fc.cost = normalized_power_cost(c.at("q").get<double>());
    else
      throw std::invalid_argument("config '" + path + "': unknown cost family '" + family + "'");
    fc.has_cost = true;
  }
  if (j.contains("econ")) {
    const auto& e = j.at("econ");
    fc.c_S = e.at("c_S").get<double>();
    fc.w = e.at("w").get<double>();
    if (!(fc.c_S > 0.0) || !(fc.w > 0.0))
      throw std::invalid_argument("config '" + path + "': c_S and w must be > 0");
    fc.has_econ = true;
  }
  return fc;
}

// Canonical string form of a cost function, reused by the RunSpec sidecar.
inline std::string cost_spec_string(const CostFunction& cf) {
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::string(buf);
  };
  switch (cf.family) {
    case CostFunction::Family::polynomial:
      return "poly:" + num(cf.c_E) + ":" + num(cf.p);
    case CostFunction::Family::normalized_power:
      return "poa:" + num(cf.q);
    case CostFunction::Family::custom:
    default:
      return "custom";
  }
}

}  // namespace stratq
