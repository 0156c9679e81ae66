#include "dtq/littles.hpp"

#include <algorithm>
#include <cmath>

namespace dtq {

namespace {

// |(lo, hi] ∩ (from, to]|
Slot overlap(Slot lo, Slot hi, Slot from, Slot to) {
  return std::max<Slot>(0, std::min(hi, to) - std::max(lo, from));
}

struct ActualWindow {
  double L = 0.0;
  double lambda = 0.0;
  double W = 0.0;
  std::size_t completed = 0;
};

ActualWindow actual_window(const Trace& trace, Slot warmup, Convention conv) {
  const Slot T = trace.horizon;
  if (warmup < 0 || T <= warmup) throw std::invalid_argument("need T > warmup >= 0");
  const auto path = queue_path(trace, conv);
  ActualWindow w;
  double area = 0.0;
  for (Slot t = warmup + 1; t <= T; ++t) area += static_cast<double>(path[static_cast<std::size_t>(t)]);
  const double window = static_cast<double>(T - warmup);
  w.L = area / window;
  std::size_t arrivals = 0;
  double sum_w = 0.0;
  for (const auto& c : trace.customers) {
    if (c.arrival <= warmup || c.arrival > T) continue;
    ++arrivals;
    if (c.departure > T) continue;
    ++w.completed;
    sum_w += static_cast<double>(c.departure - c.arrival);
  }
  w.lambda = static_cast<double>(arrivals) / window;
  if (w.completed > 0) w.W = sum_w / static_cast<double>(w.completed);
  return w;
}

}  // namespace

double little_tolerance(double L, double lambda_w, Slot window) {
  return std::max(3.0 * (L + 1.0) / std::sqrt(static_cast<double>(window)), 0.01 * lambda_w);
}

LittleCheck check_little(const Trace& trace, Slot warmup, Convention conv) {
  const auto w = actual_window(trace, warmup, conv);
  LittleCheck r;
  r.L = w.L;
  r.lambda = w.lambda;
  r.W = w.W;
  r.insufficient_data = w.completed == 0;
  r.residual = r.L - r.lambda * r.W;
  r.tolerance = little_tolerance(r.L, r.lambda * r.W, trace.horizon - warmup);
  r.pass = std::abs(r.residual) <= r.tolerance;
  return r;
}

ObservedLittleCheck check_little_observed(const Trace& trace, SchedulingRule rule,
                                          ObservationEpoch epoch, Slot warmup) {
  const auto e = time_averages(trace, rule, epoch, warmup);
  ObservedLittleCheck r;
  r.combo = {rule, epoch};
  r.cls = classify(rule, epoch);
  r.L = e.L;
  r.L_obs = e.L_obs;
  r.lambda = e.lambda;
  r.W = e.W;
  r.W_obs = e.W_obs;
  r.insufficient_data = e.insufficient_data;
  const double off = offset(r.cls);
  r.residual_observed = r.L_obs - r.lambda * r.W_obs;
  r.class_target = r.lambda * (r.W + off);
  r.residual_class = r.L_obs - r.class_target;
  r.residual_shift = (r.L_obs - r.L) - off * r.lambda;
  r.tolerance = little_tolerance(r.L_obs, r.lambda * r.W_obs, trace.horizon - warmup);
  r.pass = std::abs(r.residual_observed) <= r.tolerance && std::abs(r.residual_class) <= r.tolerance &&
           std::abs(r.residual_shift) <= r.tolerance;
  return r;
}

BasicInequality basic_inequality(const Trace& trace, Slot t) {
  BasicInequality b;
  for (const auto& c : trace.customers) {
    const Slot w = c.departure - c.arrival;
    if (c.arrival <= t) b.by_arrival += w;
    if (c.departure <= t) b.by_departure += w;
    b.area += overlap(c.arrival, c.departure, 0, t);
  }
  b.pass = b.by_arrival >= b.area && b.area >= b.by_departure;
  return b;
}

std::optional<Slot> basic_inequality_violation(const Trace& trace, Slot last) {
  const auto n = static_cast<std::size_t>(std::max<Slot>(last, 0)) + 2;
  std::vector<Count> by_arrival(n, 0), by_departure(n, 0), enter(n, 0), leave(n, 0);
  for (const auto& c : trace.customers) {
    const Slot w = c.departure - c.arrival;
    if (c.arrival <= last) {
      by_arrival[static_cast<std::size_t>(c.arrival)] += w;
      ++enter[static_cast<std::size_t>(c.arrival) + 1];
      if (c.departure + 1 <= last) ++leave[static_cast<std::size_t>(c.departure) + 1];
    }
    if (c.departure <= last) by_departure[static_cast<std::size_t>(c.departure)] += w;
  }
  Count up = 0, area = 0, down = 0, present = 0;
  for (Slot t = 0; t <= last; ++t) {
    const auto i = static_cast<std::size_t>(t);
    present += enter[i] - leave[i];
    up += by_arrival[i];
    down += by_departure[i];
    area += t >= 1 ? present : 0;
    if (!(up >= area && area >= down)) return t;
  }
  return std::nullopt;
}

CostFunction indicator_cost() {
  return {"indicator",
          [](const CustomerRecord& c, Slot t) { return (c.arrival < t && t <= c.departure) ? 1.0 : 0.0; },
          [](const CustomerRecord& c) { return c.departure - c.arrival; }};
}

CostFunction remaining_work_cost() {
  return {"remaining-work",
          [](const CustomerRecord& c, Slot t) {
            if (c.arrival < t && t <= c.start) return static_cast<double>(c.service);
            if (c.start < t && t <= c.departure) return static_cast<double>(c.service - (t - c.start));
            return 0.0;
          },
          [](const CustomerRecord& c) { return c.departure - c.arrival; }};
}

CostFunction zero_cost() {
  return {"zero", [](const CustomerRecord&, Slot) { return 0.0; },
          [](const CustomerRecord& c) { return c.departure - c.arrival; }};
}

HLambdaG check_h_lambda_g(const Trace& trace, const CostFunction& cost, Slot warmup) {
  const Slot T = trace.horizon;
  if (warmup < 0 || T <= warmup) throw std::invalid_argument("need T > warmup >= 0");
  std::vector<double> h(static_cast<std::size_t>(T) + 1, 0.0);
  double sum_g = 0.0;
  std::size_t arrivals = 0, completed = 0;
  for (std::size_t k = 0; k < trace.size(); ++k) {
    const auto& c = trace.customers[k];
    const Slot w = cost.support(c);
    if (cost.rate(c, c.arrival) != 0.0 || cost.rate(c, c.arrival + w + 1) != 0.0)
      throw ContractViolation("cost '" + cost.name + "' charges outside (A, A + W] for customer " +
                              std::to_string(k + 1));
    double g = 0.0;
    for (Slot t = c.arrival + 1; t <= c.arrival + w; ++t) {
      const double f = cost.rate(c, t);
      g += f;
      if (t > warmup && t <= T) h[static_cast<std::size_t>(t)] += f;
    }
    if (c.arrival > warmup && c.arrival <= T) {
      ++arrivals;
      if (c.arrival + w <= T) {
        ++completed;
        sum_g += g;
      }
    }
  }
  const double window = static_cast<double>(T - warmup);
  HLambdaG r;
  for (Slot t = warmup + 1; t <= T; ++t) r.H += h[static_cast<std::size_t>(t)];
  r.H /= window;
  r.lambda = static_cast<double>(arrivals) / window;
  r.G = completed ? sum_g / static_cast<double>(completed) : 0.0;
  r.residual = r.H - r.lambda * r.G;
  r.tolerance = little_tolerance(r.H, r.lambda * r.G, T - warmup);
  r.pass = std::abs(r.residual) <= r.tolerance;
  return r;
}

double workload(const Trace& trace, Slot t) {
  const auto cost = remaining_work_cost();
  double v = 0.0;
  for (const auto& c : trace.customers) v += cost.rate(c, t);
  return v;
}

std::vector<double> workload_path(const Trace& trace) {
  // Waiting customers add S on (A, A'']; the one in service adds
  // (S + A'') - τ on (A'', D].
  const auto n = static_cast<std::size_t>(trace.horizon) + 2;
  std::vector<double> level(n, 0.0), slope(n, 0.0);
  auto add = [&](Slot lo, Slot hi, double constant, double per_slot) {
    lo = std::max<Slot>(lo, 0);
    hi = std::min(hi, trace.horizon);
    if (hi <= lo) return;
    level[static_cast<std::size_t>(lo) + 1] += constant;
    level[static_cast<std::size_t>(hi) + 1] -= constant;
    slope[static_cast<std::size_t>(lo) + 1] += per_slot;
    slope[static_cast<std::size_t>(hi) + 1] -= per_slot;
  };
  for (const auto& c : trace.customers) {
    add(c.arrival, c.start, static_cast<double>(c.service), 0.0);
    add(c.start, c.departure, static_cast<double>(c.service + c.start), 1.0);
  }
  std::vector<double> v(static_cast<std::size_t>(trace.horizon) + 1, 0.0);
  double lv = 0.0, sl = 0.0;
  for (Slot t = 1; t <= trace.horizon; ++t) {
    lv += level[static_cast<std::size_t>(t)];
    sl += slope[static_cast<std::size_t>(t)];
    v[static_cast<std::size_t>(t)] = lv - sl * static_cast<double>(t);
  }
  return v;
}

WorkloadMoments workload_moments(const Trace& trace, Slot warmup) {
  const Slot T = trace.horizon;
  if (warmup < 0 || T <= warmup) throw std::invalid_argument("need T > warmup >= 0");
  WorkloadMoments m;
  std::size_t n = 0;
  for (const auto& c : trace.customers) {
    if (c.arrival <= warmup || c.departure > T) continue;
    ++n;
    const double s = static_cast<double>(c.service);
    const double wq = static_cast<double>(c.queue_wait());
    m.ES += s;
    m.ES2 += s * s;
    m.EWq += wq;
    m.ESWq += s * wq;
  }
  if (n > 0) {
    m.ES /= static_cast<double>(n);
    m.ES2 /= static_cast<double>(n);
    m.EWq /= static_cast<double>(n);
    m.ESWq /= static_cast<double>(n);
  }
  const auto v = workload_path(trace);
  for (Slot t = warmup + 1; t <= T; ++t) m.EV += v[static_cast<std::size_t>(t)];
  m.EV /= static_cast<double>(T - warmup);
  return m;
}

PkCheck verify_pk(const Trace& trace, Slot warmup) {
  PkCheck r;
  r.moments = workload_moments(trace, warmup);
  std::size_t arrivals = 0;
  for (const auto& c : trace.customers) arrivals += c.arrival > warmup && c.arrival <= trace.horizon;
  r.lambda = static_cast<double>(arrivals) / static_cast<double>(trace.horizon - warmup);
  const auto& m = r.moments;
  r.rho = r.lambda * m.ES;
  if (r.rho >= 1.0) throw std::domain_error("verify_pk: load lambda*ES >= 1");
  r.EWq_sim = m.EWq;
  r.EWq_formula = r.lambda * (m.ES2 - m.ES) / (2.0 * (1.0 - r.rho));
  r.EV_sim = m.EV;
  r.EV_formula = r.lambda * m.ES * m.EWq + r.lambda * (m.ES2 - m.ES) / 2.0;
  r.correlation_gap = m.ESWq - m.ES * m.EWq;
  r.pass = std::abs(r.EWq_sim - r.EWq_formula) <= 0.02 * r.EWq_formula &&
           std::abs(r.EV_sim - r.EV_formula) <= 0.02 * r.EV_formula;
  return r;
}

Utilization utilization(const Trace& trace, int servers, Slot warmup) {
  const Slot T = trace.horizon;
  if (warmup < 0 || T <= warmup) throw std::invalid_argument("need T > warmup >= 0");
  Utilization u;
  u.per_server.assign(static_cast<std::size_t>(std::max(servers, 0)), 0.0);
  const double window = static_cast<double>(T - warmup);
  for (const auto& c : trace.customers) {
    const double busy = static_cast<double>(overlap(c.start, c.departure, warmup, T)) / window;
    u.total += busy;
    if (c.server >= 0 && c.server < servers) u.per_server[static_cast<std::size_t>(c.server)] += busy;
  }
  return u;
}

}  // namespace dtq
