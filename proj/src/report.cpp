#include "dtq/report.hpp"

#include <algorithm>

namespace dtq {

CheckRow make_row(std::string check, double simulated, double formula, double tolerance,
                  nlohmann::json inputs) {
  CheckRow r;
  r.check = std::move(check);
  r.inputs = std::move(inputs);
  r.simulated = simulated;
  r.formula = formula;
  r.residual = simulated - formula;
  r.tolerance = tolerance;
  r.pass = std::isfinite(r.residual) && std::abs(r.residual) <= tolerance;
  return r;
}

CheckRow relative_row(std::string check, double simulated, double formula, double rel,
                      nlohmann::json inputs) {
  return make_row(std::move(check), simulated, formula, rel * std::abs(formula), std::move(inputs));
}

nlohmann::json to_json(const CheckRow& row) {
  return {{"check", row.check},         {"inputs", row.inputs},
          {"simulated", row.simulated}, {"formula", row.formula},
          {"residual", row.residual},   {"tolerance", row.tolerance},
          {"pass", row.pass}};
}

bool all_pass(const std::vector<CheckRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass; });
}

}  // namespace dtq
