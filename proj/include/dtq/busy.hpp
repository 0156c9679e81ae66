#pragma once

#include <iosfwd>
#include <map>
#include <vector>

#include "dtq/dist.hpp"
#include "dtq/engine.hpp"
#include "dtq/observer.hpp"

namespace dtq {

struct Cycle {
  Slot U = 0;  // slot of the arrival that opens the cycle
  Slot V = 0;  // slot of the departure that empties the system
  Slot C = 0;
  Slot B = 0;
  Slot I = 0;
  Count E = 0;  // customers arriving during the cycle

  bool operator==(const Cycle&) const = default;
};

struct BusyMeans {
  double I = 0.0;
  double C = 0.0;
  double B = 0.0;
  double E = 0.0;
};

struct CycleStats {
  std::vector<Cycle> cycles;  // complete cycles only
  BusyMeans means;
};

/// Busy cycles of the actual path L(j). The trace must start empty, which
/// holds for any trace with arrivals at slots >= 1.
CycleStats detect_cycles(const Trace& trace);

/// Same detectors on the observed path L(u(j)) of a rule/epoch pair.
CycleStats detect_cycles(const Trace& trace, SchedulingRule rule, ObservationEpoch epoch);

void write_cycles_csv(std::ostream& out, const CycleStats& stats);

struct StateRates {
  std::vector<double> pi;           // fraction of slots 1..T in state n
  std::map<int, double> alpha;      // arrival instants in state n per slot in state n
  double arrival_rate = 0.0;        // customers per slot
  // Arrival instants that find L = 0, per customer. With batches only the
  // first member of a batch can find the system empty.
  double arrivals_find_empty = 0.0;
};

StateRates state_rates(const Trace& trace);

// Cycle means from pi(0), alpha(0) and the overall arrival rate.
BusyMeans theorem65(double pi0, double alpha0, double alpha);

struct SigmaRoot {
  double sigma = 0.0;
  double sigma_star = 0.0;
};

// Root in (0,1) of sigma = F*(sigma beta + 1 - beta) by bisection.
// Throws std::domain_error when no sign change exists in (0,1).
SigmaRoot sigma_solve(const DiscreteDist& interarrival, double beta);

BusyMeans ggeo1_busy(double alpha, double sigma_star, double rho);

BusyMeans finite_pop_busy(int population, double alpha, double pi0, double L);

}  // namespace dtq
