#include "dtq/busy.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace dtq {

namespace {

// `first_seen` holds, per customer in arrival order, the first slot at which
// the customer appears on the path (customers never seen are skipped).
CycleStats cycles_from_path(const std::vector<Count>& path, const std::vector<Slot>& first_seen) {
  const Slot T = static_cast<Slot>(path.size()) - 1;
  std::vector<Slot> starts, ends;
  for (Slot j = 1; j <= T; ++j) {
    const Count prev = path[static_cast<std::size_t>(j - 1)];
    const Count cur = path[static_cast<std::size_t>(j)];
    if (prev == 0 && cur >= 1) starts.push_back(j);
    if (prev >= 1 && cur == 0) ends.push_back(j);
  }
  CycleStats stats;
  std::size_t next_customer = 0;
  for (std::size_t k = 0; k + 1 < starts.size(); ++k) {
    Cycle c;
    c.U = starts[k] - 1;
    c.V = ends[k] - 1;
    c.C = starts[k + 1] - starts[k];
    c.B = ends[k] - starts[k];
    c.I = starts[k + 1] - ends[k];
    while (next_customer < first_seen.size() && first_seen[next_customer] < starts[k]) ++next_customer;
    while (next_customer < first_seen.size() && first_seen[next_customer] < starts[k + 1]) {
      ++c.E;
      ++next_customer;
    }
    stats.cycles.push_back(c);
  }
  if (!stats.cycles.empty()) {
    const double m = static_cast<double>(stats.cycles.size());
    for (const auto& c : stats.cycles) {
      stats.means.I += static_cast<double>(c.I) / m;
      stats.means.C += static_cast<double>(c.C) / m;
      stats.means.B += static_cast<double>(c.B) / m;
      stats.means.E += static_cast<double>(c.E) / m;
    }
  }
  return stats;
}

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error(std::string(what) + " must be positive");
}

}  // namespace

CycleStats detect_cycles(const Trace& trace) {
  std::vector<Slot> first_seen;
  first_seen.reserve(trace.size());
  for (const auto& c : trace.customers) first_seen.push_back(c.arrival + 1);
  return cycles_from_path(queue_path(trace), first_seen);
}

CycleStats detect_cycles(const Trace& trace, SchedulingRule rule, ObservationEpoch epoch) {
  std::vector<Slot> first_seen;
  first_seen.reserve(trace.size());
  for (const auto& c : trace.customers) {
    const auto r = observed_presence(rule, epoch, c.arrival, c.departure);
    if (r.length() > 0) first_seen.push_back(r.lo);
  }
  return cycles_from_path(observed_path(trace, rule, epoch), first_seen);
}

void write_cycles_csv(std::ostream& out, const CycleStats& stats) {
  out << "k,U,V,C,B,I,E\n";
  for (std::size_t k = 0; k < stats.cycles.size(); ++k) {
    const auto& c = stats.cycles[k];
    out << (k + 1) << ',' << c.U << ',' << c.V << ',' << c.C << ',' << c.B << ',' << c.I << ','
        << c.E << '\n';
  }
}

StateRates state_rates(const Trace& trace) {
  const Slot T = trace.horizon;
  if (T < 1) throw std::invalid_argument("state_rates: empty horizon");
  const auto path = queue_path(trace);
  std::vector<Count> time_in(1, 0), instants(1, 0);
  for (Slot j = 1; j <= T; ++j) {
    const auto n = static_cast<std::size_t>(path[static_cast<std::size_t>(j)]);
    if (n >= time_in.size()) time_in.resize(n + 1, 0);
    ++time_in[n];
  }
  instants.resize(time_in.size(), 0);
  std::size_t customers = 0, find_empty = 0;
  Slot last = 0;
  for (const auto& c : trace.customers) {
    if (c.arrival > T) break;
    ++customers;
    if (c.arrival == last) continue;  // batch members share one arrival instant
    last = c.arrival;
    const auto n = static_cast<std::size_t>(path[static_cast<std::size_t>(c.arrival)]);
    ++instants[n];
    find_empty += n == 0;
  }
  StateRates r;
  r.pi.resize(time_in.size());
  for (std::size_t n = 0; n < time_in.size(); ++n) {
    r.pi[n] = static_cast<double>(time_in[n]) / static_cast<double>(T);
    if (time_in[n] > 0)
      r.alpha[static_cast<int>(n)] = static_cast<double>(instants[n]) / static_cast<double>(time_in[n]);
  }
  r.arrival_rate = static_cast<double>(customers) / static_cast<double>(T);
  if (customers > 0)
    r.arrivals_find_empty = static_cast<double>(find_empty) / static_cast<double>(customers);
  return r;
}

BusyMeans theorem65(double pi0, double alpha0, double alpha) {
  if (!(pi0 > 0.0 && pi0 < 1.0)) throw std::domain_error("theorem65: pi(0) must lie in (0,1)");
  require_positive(alpha0, "alpha(0)");
  const double rate = alpha0 * pi0;  // busy cycles per slot
  return {1.0 / alpha0, 1.0 / rate, (1.0 - pi0) / rate, alpha / rate};
}

SigmaRoot sigma_solve(const DiscreteDist& interarrival, double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw std::domain_error("sigma_solve: beta must lie in (0,1)");
  if (interarrival.support_min() < 1) throw std::domain_error("sigma_solve: inter-arrival times must be >= 1");
  auto g = [&](double s) { return interarrival.pgf(s * beta + 1.0 - beta) - s; };
  // g(0) > 0 and g(1) = 0; for a stable queue g dips below zero just under 1.
  double lo = 0.0, hi = -1.0;
  if (!(g(lo) > 0.0)) throw std::domain_error("sigma_solve: no sign change in (0,1)");
  for (int k = 1; k <= 52; ++k) {
    const double s = 1.0 - std::ldexp(1.0, -k);
    if (g(s) < 0.0) {
      hi = s;
      break;
    }
  }
  if (hi < 0.0) throw std::domain_error("sigma_solve: no sign change in (0,1) (unstable input?)");
  while (hi - lo >= 1e-13) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  SigmaRoot r;
  r.sigma = 0.5 * (lo + hi);
  r.sigma_star = r.sigma / (r.sigma * beta + 1.0 - beta);
  return r;
}

BusyMeans ggeo1_busy(double alpha, double sigma_star, double rho) {
  if (!(sigma_star > 0.0 && sigma_star < 1.0)) throw std::domain_error("ggeo1_busy: sigma* must lie in (0,1)");
  require_positive(alpha, "alpha");
  const double c = 1.0 / (alpha * (1.0 - sigma_star));
  return {(1.0 - rho) * c, c, rho * c, 1.0 / (1.0 - sigma_star)};
}

BusyMeans finite_pop_busy(int population, double alpha, double pi0, double L) {
  if (population < 1) throw std::domain_error("finite_pop_busy: N must be >= 1");
  if (!(pi0 > 0.0 && pi0 < 1.0)) throw std::domain_error("finite_pop_busy: pi(0) must lie in (0,1)");
  require_positive(alpha, "alpha");
  const double n_alpha = population * alpha;
  return {1.0 / n_alpha, 1.0 / (n_alpha * pi0), (1.0 - pi0) / (n_alpha * pi0),
          (population - L) / (population * pi0)};
}

}  // namespace dtq
