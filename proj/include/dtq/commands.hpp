#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dtq/config.hpp"
#include "dtq/report.hpp"
#include "json.hpp"

namespace dtq {

struct Skipped {
  std::string check;
  std::string reason;
};

// Optional tabular payload (dist rows, per-cycle rows, table cells) shown in
// text and CSV output instead of the check rows.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<nlohmann::json>> rows;
};

struct Report {
  std::string command;
  nlohmann::json config = nlohmann::json::object();
  std::vector<CheckRow> rows;
  std::vector<Skipped> skipped;
  nlohmann::json details = nlohmann::json::object();
  std::optional<Table> table;
  bool table_in_text = true;
  bool table_in_json = true;
  bool pass = true;
};

nlohmann::json config_json(const ExperimentConfig& c);

// Runs `body` for replications 0..R-1 (seed + r) on a small thread pool and
// concatenates the rows in replication order.
std::vector<CheckRow> run_replications(
    const ExperimentConfig& c,
    const std::function<std::vector<CheckRow>(const Trace&, int)>& body);

Report cmd_classify(const std::optional<ClassificationTable>& golden = std::nullopt);
Report cmd_verify(const ExperimentConfig& c);
Report cmd_dist(const ExperimentConfig& c);
Report cmd_busy(const ExperimentConfig& c);
Report cmd_pk(const ExperimentConfig& c);
Report cmd_table61(const ExperimentConfig& c);
Report cmd_simulate(const ExperimentConfig& c);

void render(std::ostream& out, const Report& r, const std::string& format);

}  // namespace dtq
