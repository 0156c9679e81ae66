#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dtq/coherence.hpp"
#include "dtq/engine.hpp"

namespace dtq {

// Bad config text or values; carries the offending line when known.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ArrivalKind { BERNOULLI, RENEWAL, FINITE, EXPLICIT };

// Experiment file, e.g.
//
//   [model]
//   arrivals = bernoulli
//   alpha = 0.3
//   service = geometric(0.5)
//   discipline = fifo1
//   [sim]
//   T = 1000000
//   warmup = 100000
//   seed = 42
//   [checks]
//   run = little, pk, busy
//   [output]
//   format = json
struct ExperimentConfig {
  ArrivalKind arrival_kind = ArrivalKind::BERNOULLI;
  Model model;
  double alpha = 0.0;  // per-slot arrival probability (per source when finite)
  double beta = 0.0;   // geometric completion probability, 0 when service is not geometric
  int population = 0;
  int servers = 1;

  Slot horizon = 100000;
  Slot warmup = 10000;
  std::uint64_t seed = 1;
  int replications = 1;

  std::vector<std::string> checks;
  std::optional<SchedulingRule> rule;
  std::optional<ObservationEpoch> epoch;
  std::optional<CoherenceClass> cls;

  std::string format = "text";
  std::string out_path;  // empty: stdout

  // B/Geom/1 shape: Bernoulli arrivals, geometric service, one FIFO server.
  bool is_bgeom1() const;
  int server_count() const;  // 0 for infinite server
};

// "geometric(p)", "point(k)", "table(min, p_min, p_min+1, ...)".
DiscreteDist parse_dist(std::string_view text);
std::string to_string(const DiscreteDist& d);

ExperimentConfig parse_config(std::istream& in, const std::string& source = "<config>");
ExperimentConfig load_config(const std::string& path);

// B/Geom/1, alpha 0.3, beta 0.5, T 10^6, warmup 10^5, seed 42, all checks.
ExperimentConfig reference_config();
std::string render_config(const ExperimentConfig& c);

const std::vector<std::string>& registered_checks();

// Throws std::domain_error when the model has no steady state (rho >= 1).
void require_stable(const ExperimentConfig& c);

}  // namespace dtq
