#include "dtq/observer.hpp"

#include <algorithm>
#include <stdexcept>

namespace dtq {

namespace {

void check_interval(Slot a, Slot d) {
  if (d < a + 1) throw std::invalid_argument("departure must be at least one slot after arrival");
}

template <class Range>
std::vector<Count> path_from_ranges(Slot horizon, std::size_t n, Range&& range_of) {
  std::vector<Count> diff(static_cast<std::size_t>(horizon) + 2, 0);
  for (std::size_t k = 0; k < n; ++k) {
    SlotRange r = range_of(k);
    r.lo = std::max<Slot>(r.lo, 1);
    r.hi = std::min(r.hi, horizon);
    if (r.hi < r.lo) continue;
    ++diff[static_cast<std::size_t>(r.lo)];
    --diff[static_cast<std::size_t>(r.hi) + 1];
  }
  std::vector<Count> path(static_cast<std::size_t>(horizon) + 1, 0);
  Count run = 0;
  for (Slot t = 1; t <= horizon; ++t) {
    run += diff[static_cast<std::size_t>(t)];
    path[static_cast<std::size_t>(t)] = run;
  }
  return path;
}

SlotRange actual_presence(Slot a, Slot d, Convention conv) {
  return conv == Convention::LEFT_OPEN ? SlotRange{a + 1, d} : SlotRange{a, d - 1};
}

}  // namespace

Slot actual_wait(Slot arrival, Slot departure) {
  check_interval(arrival, departure);
  Slot indicator = 0;
  for (Slot t = arrival; t <= departure; ++t) indicator += (arrival < t && t <= departure);
  const Slot w = departure - arrival;
  if (indicator != w) throw std::logic_error("actual_wait: indicator sum disagrees with D - A");
  return w;
}

Slot observed_wait(SchedulingRule rule, ObservationEpoch epoch, Slot arrival, Slot departure) {
  check_interval(arrival, departure);
  const MicroTime a = shift_arrival(rule, arrival);
  const MicroTime d = shift_departure(rule, departure);
  Slot count = 0;
  // u(τ) stays within one slot of τ, so τ outside [A-1, D+1] never counts.
  for (Slot t = std::max<Slot>(1, arrival - 1); t <= departure + 1; ++t) {
    const MicroTime u = epoch_point(rule, epoch, t);
    if (a < u && u <= d) ++count;
  }
  return count;
}

SlotRange observed_presence(SchedulingRule rule, ObservationEpoch epoch, Slot arrival,
                            Slot departure) {
  check_interval(arrival, departure);
  const MicroTime a = shift_arrival(rule, arrival);
  const MicroTime d = shift_departure(rule, departure);
  const Phase ph = epoch_phase(rule, epoch);
  SlotRange r;
  r.lo = MicroTime{a.slot(), ph} > a ? a.slot() : a.slot() + 1;
  r.hi = MicroTime{d.slot(), ph} <= d ? d.slot() : d.slot() - 1;
  return r;
}

Count queue_length(const Trace& trace, Slot t, Convention conv) {
  Count n = 0;
  for (const auto& c : trace.customers)
    n += actual_presence(c.arrival, c.departure, conv).contains(t);
  return n;
}

Count queue_length_observed(const Trace& trace, SchedulingRule rule, ObservationEpoch epoch,
                            Slot t) {
  const MicroTime u = epoch_point(rule, epoch, t);
  Count n = 0;
  for (const auto& c : trace.customers)
    n += (shift_arrival(rule, c.arrival) < u && u <= shift_departure(rule, c.departure));
  return n;
}

std::vector<Count> queue_path(const Trace& trace, Convention conv) {
  return path_from_ranges(trace.horizon, trace.size(), [&](std::size_t k) {
    const auto& c = trace.customers[k];
    return actual_presence(c.arrival, c.departure, conv);
  });
}

std::vector<Count> observed_path(const Trace& trace, SchedulingRule rule, ObservationEpoch epoch) {
  return path_from_ranges(trace.horizon, trace.size(), [&](std::size_t k) {
    const auto& c = trace.customers[k];
    return observed_presence(rule, epoch, c.arrival, c.departure);
  });
}

std::vector<double> histogram(const std::vector<Count>& path, Slot first, Slot last) {
  std::vector<Count> counts;
  for (Slot t = first; t <= last; ++t) {
    const auto n = static_cast<std::size_t>(path[static_cast<std::size_t>(t)]);
    if (n >= counts.size()) counts.resize(n + 1, 0);
    ++counts[n];
  }
  std::vector<double> pi(counts.size());
  const double total = static_cast<double>(last - first + 1);
  for (std::size_t n = 0; n < counts.size(); ++n) pi[n] = static_cast<double>(counts[n]) / total;
  return pi;
}

QueueEstimates time_averages(const Trace& trace, SchedulingRule rule, ObservationEpoch epoch,
                             Slot warmup, Convention conv) {
  const Slot T = trace.horizon;
  if (warmup < 0 || T <= warmup) throw std::invalid_argument("time_averages: need T > warmup >= 0");
  QueueEstimates e;
  e.horizon = T;
  e.warmup = warmup;
  e.combo = {rule, epoch};

  const auto path = queue_path(trace, conv);
  const auto obs = observed_path(trace, rule, epoch);
  const double window = static_cast<double>(T - warmup);
  double sum_l = 0.0, sum_lo = 0.0;
  for (Slot t = warmup + 1; t <= T; ++t) {
    sum_l += static_cast<double>(path[static_cast<std::size_t>(t)]);
    sum_lo += static_cast<double>(obs[static_cast<std::size_t>(t)]);
  }
  e.L = sum_l / window;
  e.L_obs = sum_lo / window;
  e.pi = histogram(path, warmup + 1, T);
  e.pi_obs = histogram(obs, warmup + 1, T);

  double sum_w = 0.0, sum_wo = 0.0;
  for (const auto& c : trace.customers) {
    if (c.arrival <= warmup || c.arrival > T) continue;
    ++e.arrivals;
    if (c.departure > T) continue;
    ++e.completed;
    sum_w += static_cast<double>(c.departure - c.arrival);
    sum_wo += static_cast<double>(observed_presence(rule, epoch, c.arrival, c.departure).length());
  }
  e.lambda = static_cast<double>(e.arrivals) / window;
  if (e.completed == 0) {
    e.insufficient_data = true;
  } else {
    e.W = sum_w / static_cast<double>(e.completed);
    e.W_obs = sum_wo / static_cast<double>(e.completed);
  }
  return e;
}

nlohmann::json to_json(const QueueEstimates& e) {
  return {
      {"lambda", e.lambda},
      {"L", e.L},
      {"W", e.W},
      {"L_obs", e.L_obs},
      {"W_obs", e.W_obs},
      {"pi", e.pi},
      {"pi_obs", e.pi_obs},
      {"horizon", e.horizon},
      {"warmup", e.warmup},
      {"rule", std::string(to_string(e.combo.rule))},
      {"epoch", std::string(to_string(e.combo.epoch))},
      {"insufficient_data", e.insufficient_data},
  };
}

CycleVisitCounts cycle_visit_counts(const Trace& trace, SchedulingRule rule,
                                    ObservationEpoch epoch) {
  CycleVisitCounts out;
  const auto path = queue_path(trace);
  const auto obs = observed_path(trace, rule, epoch);
  // A cycle opens at an arrival slot that finds the actual system empty.
  for (const auto& c : trace.customers) {
    if (c.arrival > trace.horizon) break;
    if (path[static_cast<std::size_t>(c.arrival)] == 0 &&
        (out.starts.empty() || out.starts.back() != c.arrival))
      out.starts.push_back(c.arrival);
  }
  auto count = [](const std::vector<Count>& p, Slot from, Slot to) {
    std::vector<Count> visits;
    for (Slot j = from; j <= to; ++j) {
      const auto n = static_cast<std::size_t>(p[static_cast<std::size_t>(j)]);
      if (n >= visits.size()) visits.resize(n + 1, 0);
      ++visits[n];
    }
    return visits;
  };
  for (std::size_t k = 0; k + 1 < out.starts.size(); ++k) {
    out.actual.push_back(count(path, out.starts[k] + 1, out.starts[k + 1]));
    out.observed.push_back(count(obs, out.starts[k] + 1, out.starts[k + 1]));
  }
  out.starts.resize(out.actual.size() + (out.actual.empty() ? 0 : 1));
  return out;
}

}  // namespace dtq
