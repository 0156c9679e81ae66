#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dtq/engine.hpp"
#include "dtq/timebase.hpp"
#include "json.hpp"

namespace dtq {

using Count = std::int64_t;

// Which side of the customer interval is closed when counting presence.
enum class Convention {
  LEFT_OPEN,   // 1{A < τ <= D}
  RIGHT_OPEN,  // 1{A <= τ < D}
};

struct Combo {
  SchedulingRule rule;
  ObservationEpoch epoch;
};

// Closed integer range [lo, hi]; empty when hi < lo.
struct SlotRange {
  Slot lo = 1;
  Slot hi = 0;
  Slot length() const { return hi >= lo ? hi - lo + 1 : 0; }
  bool contains(Slot t) const { return lo <= t && t <= hi; }
};

// W_k = D - A, cross-checked against the indicator sum over τ.
Slot actual_wait(Slot arrival, Slot departure);

// Number of τ >= 1 with A' < u(τ) <= D', evaluated point by point on the
// lattice.
Slot observed_wait(SchedulingRule rule, ObservationEpoch epoch, Slot arrival, Slot departure);

// The slots τ at which the customer is seen, in closed form.
SlotRange observed_presence(SchedulingRule rule, ObservationEpoch epoch, Slot arrival,
                            Slot departure);

// Point evaluations (linear in the number of customers).
Count queue_length(const Trace& trace, Slot t, Convention conv = Convention::LEFT_OPEN);
Count queue_length_observed(const Trace& trace, SchedulingRule rule, ObservationEpoch epoch,
                            Slot t);

// Whole paths, index t = 0..T with path[0] = 0.
std::vector<Count> queue_path(const Trace& trace, Convention conv = Convention::LEFT_OPEN);
std::vector<Count> observed_path(const Trace& trace, SchedulingRule rule, ObservationEpoch epoch);

// Fraction of observations in each state, dense up to the largest state seen.
std::vector<double> histogram(const std::vector<Count>& path, Slot first, Slot last);

struct QueueEstimates {
  double lambda = 0.0;
  double W = 0.0;
  double L = 0.0;
  double W_obs = 0.0;
  double L_obs = 0.0;
  std::vector<double> pi;
  std::vector<double> pi_obs;
  Slot horizon = 0;
  Slot warmup = 0;
  Combo combo{};
  std::size_t arrivals = 0;   // in (warmup, T]
  std::size_t completed = 0;  // arrive after warmup and depart by T
  bool insufficient_data = false;
};

QueueEstimates time_averages(const Trace& trace, SchedulingRule rule, ObservationEpoch epoch,
                             Slot warmup, Convention conv = Convention::LEFT_OPEN);

nlohmann::json to_json(const QueueEstimates& e);

struct CycleVisitCounts {
  // U_1..U_{m+1}: arrival slots that find the actual system empty; one more
  // entry than there are complete cycles.
  std::vector<Slot> starts;
  std::vector<std::vector<Count>> actual;    // C_k(n)
  std::vector<std::vector<Count>> observed;  // C'_k(n)
};

// Visits to each state over j in (U_k, U_{k+1}] for every complete cycle.
CycleVisitCounts cycle_visit_counts(const Trace& trace, SchedulingRule rule,
                                    ObservationEpoch epoch);

// Default burn-in: 10% of the horizon.
inline Slot default_warmup(Slot horizon) { return horizon / 10; }

}  // namespace dtq
