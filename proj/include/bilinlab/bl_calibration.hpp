#pragma once

// Frozen calibration constants for the Brascamp-Lieb upper bound.  The
// inequality carries an unspecified constant; each exponent tuple below was
// calibrated once by `tools/calibrate` against a fixed seeded family of 200
// small random weights (max of altmax-lower / ||V||_{l^q0}, times a 1.5
// safety factor) and the results are checked in here.  Tuples without an
// entry report an inapplicable (+inf) bound.
//
// Regenerate with:  bilinlab-calibrate --emit-bl

#include <map>
#include <optional>
#include <string>

#include "bilinlab/rational.hpp"

namespace bilinlab {

inline const std::map<std::string, double>& bl_calibration_table() {
  static const std::map<std::string, double> table = {
      // key: "1/q1|1/q2|1/q3" in lowest terms
  };
  return table;
}

inline std::optional<double> bl_calibration_lookup(const rat& r1, const rat& r2, const rat& r3) {
  const auto& t = bl_calibration_table();
  auto it = t.find(r1.str() + "|" + r2.str() + "|" + r3.str());
  if (it == t.end()) return std::nullopt;
  return it->second;
}

}  // namespace bilinlab
