#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "json.hpp"

namespace dtq {

// One verification line: what was simulated, what the formula says, and how
// far apart they are allowed to be.
struct CheckRow {
  std::string check;
  nlohmann::json inputs = nlohmann::json::object();
  double simulated = 0.0;
  double formula = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// residual = simulated - formula, pass iff |residual| <= tolerance.
CheckRow make_row(std::string check, double simulated, double formula, double tolerance,
                  nlohmann::json inputs = nlohmann::json::object());

// Relative tolerance on the formula value.
CheckRow relative_row(std::string check, double simulated, double formula, double rel,
                      nlohmann::json inputs = nlohmann::json::object());

nlohmann::json to_json(const CheckRow& row);

bool all_pass(const std::vector<CheckRow>& rows);

}  // namespace dtq
