// dtq: discrete-time queue experiments from config files.
//
//   dtq classify [--golden table.json]
//   dtq --config exp.ini verify
//   dtq --config exp.ini --format csv busy > cycles.csv
//
// Exit status: 0 all checks pass, 1 a check failed, 2 usage or config error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dtq/commands.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

std::uint64_t parse_seed(const std::string& s, const char* what) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty() || s.front() == '-')
    throw dtq::ConfigError(std::string(what) + ": not a nonnegative integer: '" + s + "'");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-time queue simulator and verification harness"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, format, out_path, trace_path, golden_path;
  std::optional<std::string> seed;
  app.add_option("--config", config_path, "Experiment config file (default: reference B/Geom/1 setup)")
      ->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "Base seed; overrides DTQ_SEED and the config");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--out", out_path, "Write output here instead of stdout");
  app.add_option("--trace", trace_path, "Also write the replication-0 trace as CSV");

  auto* classify = app.add_subcommand("classify", "Classification tables against the golden copy");
  classify->add_option("--golden", golden_path, "Golden table as JSON rows {rule, epoch, class}")
      ->check(CLI::ExistingFile);
  auto* verify = app.add_subcommand("verify", "Run the configured checks");
  auto* dist = app.add_subcommand("dist", "Analytic vs simulated stationary distribution");
  std::string cls, rule, epoch;
  dist->add_option("--class", cls, "coh, sub or super");
  dist->add_option("--rule", rule, "Scheduling rule");
  dist->add_option("--epoch", epoch, "Observation epoch");
  auto* busy = app.add_subcommand("busy", "Busy cycle statistics");
  auto* pk = app.add_subcommand("pk", "Mean waiting time and workload formulas");
  auto* table61 = app.add_subcommand("table61", "Probability of one or more customers per combo");
  auto* simulate = app.add_subcommand("simulate", "Simulate and print estimates or the trace");
  simulate->add_option("--rule", rule, "Scheduling rule for the estimates");
  simulate->add_option("--epoch", epoch, "Observation epoch for the estimates");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    dtq::ExperimentConfig cfg = config_path.empty() ? dtq::reference_config() : dtq::load_config(config_path);
    if (const char* env = std::getenv("DTQ_SEED"); env && *env) cfg.seed = parse_seed(env, "DTQ_SEED");
    if (seed) cfg.seed = parse_seed(*seed, "--seed");
    if (!format.empty()) cfg.format = format;
    if (!out_path.empty()) cfg.out_path = out_path;
    if (!cls.empty()) cfg.cls = dtq::parse_class(cls);
    if (!rule.empty()) cfg.rule = dtq::parse_rule(rule);
    if (!epoch.empty()) cfg.epoch = dtq::parse_epoch(epoch);

    dtq::Report report;
    if (classify->parsed()) {
      std::optional<dtq::ClassificationTable> golden;
      if (!golden_path.empty()) {
        std::ifstream in(golden_path);
        golden = dtq::table_from_json(nlohmann::json::parse(in));
      }
      report = dtq::cmd_classify(golden);
    } else if (verify->parsed()) {
      report = dtq::cmd_verify(cfg);
    } else if (dist->parsed()) {
      report = dtq::cmd_dist(cfg);
    } else if (busy->parsed()) {
      report = dtq::cmd_busy(cfg);
    } else if (pk->parsed()) {
      report = dtq::cmd_pk(cfg);
    } else if (table61->parsed()) {
      report = dtq::cmd_table61(cfg);
    } else if (simulate->parsed()) {
      report = dtq::cmd_simulate(cfg);
    }

    if (!trace_path.empty()) {
      std::ofstream t(trace_path);
      if (!t) throw dtq::ConfigError("cannot write trace file '" + trace_path + "'");
      dtq::write_trace_csv(t, dtq::simulate(cfg.model, cfg.seed, cfg.horizon));
    }

    if (cfg.out_path.empty()) {
      dtq::render(std::cout, report, cfg.format);
    } else {
      std::ofstream out(cfg.out_path);
      if (!out) throw dtq::ConfigError("cannot write output file '" + cfg.out_path + "'");
      dtq::render(out, report, cfg.format);
    }
    if (!report.pass && classify->parsed()) {
      std::ostringstream diff;
      dtq::render(diff, report, "text");
      if (cfg.format != "text" || !cfg.out_path.empty()) std::cerr << diff.str();
    }
    return report.pass ? kPass : kFail;
  } catch (const dtq::ConfigError& e) {
    std::cerr << "dtq: config error: " << e.what() << '\n';
  } catch (const std::domain_error& e) {
    std::cerr << "dtq: " << e.what() << '\n';
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "dtq: bad JSON: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "dtq: " << e.what() << '\n';
  }
  return kUsage;
}
