#include "dtq/engine.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace dtq {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("arrival probability must lie in (0,1)");
}

std::uint64_t sid(Stream s) { return static_cast<std::uint64_t>(s); }

std::vector<Slot> finite_population(const FinitePopulationArrivals& fp, std::uint64_t seed,
                                    Slot horizon) {
  check_alpha(fp.alpha);
  if (fp.population < 1) throw std::invalid_argument("finite population needs N >= 1");
  if (fp.service.support_min() < 1) throw std::invalid_argument("service times must be >= 1");
  if (fp.single_arrival && fp.population * fp.alpha > 1.0)
    throw std::invalid_argument("single-arrival finite population needs N*alpha <= 1");

  Rng arrivals = Rng::stream(seed, sid(Stream::ARRIVALS));
  Rng services = Rng::stream(seed, sid(Stream::SERVICES));
  std::vector<Slot> out;
  std::deque<Slot> present;  // departure slots of customers in system, FIFO order
  Slot last_departure = 0;
  for (Slot t = 1; t <= horizon; ++t) {
    while (!present.empty() && present.front() < t) present.pop_front();
    const int idle = fp.population - static_cast<int>(present.size());
    int arriving = 0;
    if (fp.single_arrival) {
      arriving = arrivals.bernoulli(idle * fp.alpha) ? 1 : 0;
    } else {
      for (int s = 0; s < idle; ++s) arriving += arrivals.bernoulli(fp.alpha) ? 1 : 0;
    }
    for (int i = 0; i < arriving; ++i) {
      const Slot service = fp.service.quantile(services.uniform());
      last_departure = std::max(t, last_departure) + service;
      present.push_back(last_departure);
      out.push_back(t);
    }
  }
  return out;
}

}  // namespace

void Trace::validate() const {
  Slot prev = std::numeric_limits<Slot>::min();
  for (std::size_t k = 0; k < customers.size(); ++k) {
    const auto& c = customers[k];
    const std::string at = " (customer " + std::to_string(k + 1) + ")";
    if (c.arrival < 1) throw std::invalid_argument("arrival slot must be >= 1" + at);
    if (c.arrival < prev) throw std::invalid_argument("arrivals must be nondecreasing" + at);
    if (c.departure < c.arrival + 1) throw std::invalid_argument("departure must be >= arrival + 1" + at);
    if (c.start < c.arrival) throw std::invalid_argument("service starts before arrival" + at);
    if (c.service < 1 || c.start + c.service != c.departure)
      throw std::invalid_argument("departure != start + service" + at);
    prev = c.arrival;
  }
}

std::vector<Slot> gen_arrivals(const ArrivalSpec& spec, std::uint64_t seed, Slot horizon) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  return std::visit(
      overloaded{
          [&](const BernoulliArrivals& b) {
            check_alpha(b.alpha);
            Rng rng = Rng::stream(seed, sid(Stream::ARRIVALS));
            std::vector<Slot> out;
            out.reserve(static_cast<std::size_t>(static_cast<double>(horizon) * b.alpha * 1.1) + 16);
            for (Slot t = 1; t <= horizon; ++t)
              if (rng.bernoulli(b.alpha)) out.push_back(t);
            return out;
          },
          [&](const RenewalArrivals& r) {
            if (r.interarrival.support_min() < 1)
              throw std::invalid_argument("inter-arrival times must be >= 1");
            Rng rng = Rng::stream(seed, sid(Stream::ARRIVALS));
            std::vector<Slot> out;
            for (Slot t = r.interarrival.quantile(rng.uniform()); t <= horizon;
                 t += r.interarrival.quantile(rng.uniform()))
              out.push_back(t);
            return out;
          },
          [&](const FinitePopulationArrivals& fp) { return finite_population(fp, seed, horizon); },
          [&](const ExplicitArrivals& e) {
            for (std::size_t k = 0; k < e.slots.size(); ++k) {
              if (e.slots[k] < 1) throw std::invalid_argument("explicit arrivals must be >= 1");
              if (k > 0 && e.slots[k] < e.slots[k - 1])
                throw std::invalid_argument("explicit arrivals must be nondecreasing");
            }
            std::vector<Slot> out;
            for (Slot a : e.slots)
              if (a <= horizon) out.push_back(a);
            return out;
          },
      },
      spec);
}

std::vector<Slot> sample_services(const DiscreteDist& dist, std::uint64_t seed, std::size_t n) {
  if (dist.support_min() < 1) throw std::invalid_argument("service times must be >= 1");
  Rng rng = Rng::stream(seed, sid(Stream::SERVICES));
  std::vector<Slot> out(n);
  for (auto& s : out) s = dist.quantile(rng.uniform());
  return out;
}

Trace run_discipline(std::span<const Slot> arrivals, std::span<const Slot> services,
                     const DisciplineSpec& discipline, Slot horizon) {
  const bool external = std::holds_alternative<ExternalDepartures>(discipline);
  if (!external && services.size() != arrivals.size())
    throw std::invalid_argument("arrivals and services differ in length");
  for (Slot s : services)
    if (s < 1) throw std::invalid_argument("service times must be >= 1");

  Trace trace;
  trace.horizon = horizon;
  trace.customers.resize(arrivals.size());
  for (std::size_t k = 0; k < arrivals.size(); ++k) trace.customers[k].arrival = arrivals[k];

  std::visit(
      overloaded{
          [&](const Fifo1&) {
            Slot prev = 0;
            for (std::size_t k = 0; k < arrivals.size(); ++k) {
              auto& c = trace.customers[k];
              c.service = services[k];
              c.start = std::max(c.arrival, prev);
              c.departure = c.start + c.service;
              prev = c.departure;
            }
          },
          [&](const FifoC& f) {
            if (f.servers < 1) throw std::invalid_argument("FIFO_C needs c >= 1");
            std::vector<Slot> free_at(static_cast<std::size_t>(f.servers), 0);
            Rng rng = Rng::stream(f.seed, sid(Stream::ASSIGNMENT));
            std::vector<std::size_t> idle;
            for (std::size_t k = 0; k < arrivals.size(); ++k) {
              auto& c = trace.customers[k];
              std::size_t pick = static_cast<std::size_t>(
                  std::min_element(free_at.begin(), free_at.end()) - free_at.begin());
              if (f.random_assignment) {
                idle.clear();
                for (std::size_t i = 0; i < free_at.size(); ++i)
                  if (free_at[i] <= c.arrival) idle.push_back(i);
                if (idle.size() > 1) pick = idle[rng.below(idle.size())];
              }
              c.service = services[k];
              c.start = std::max(c.arrival, free_at[pick]);
              c.departure = c.start + c.service;
              c.server = static_cast<int>(pick);
              free_at[pick] = c.departure;
            }
          },
          [&](const InfiniteServer&) {
            for (std::size_t k = 0; k < arrivals.size(); ++k) {
              auto& c = trace.customers[k];
              c.service = services[k];
              c.start = c.arrival;
              c.departure = c.arrival + c.service;
              c.server = -1;
            }
          },
          [&](const ExternalDepartures& e) {
            if (e.departures.size() != arrivals.size())
              throw std::invalid_argument("external departures differ in length from arrivals");
            for (std::size_t k = 0; k < arrivals.size(); ++k) {
              auto& c = trace.customers[k];
              c.departure = e.departures[k];
              if (c.departure <= c.arrival)
                throw std::invalid_argument("external departure must exceed its arrival");
              c.service = services.empty() ? c.departure - c.arrival : services[k];
              c.start = c.departure - c.service;
              c.server = -1;
            }
          },
      },
      discipline);
  trace.validate();
  return trace;
}

std::vector<ShiftedCustomer> shift_trace(const Trace& trace, SchedulingRule rule) {
  std::vector<ShiftedCustomer> out;
  out.reserve(trace.size());
  for (const auto& c : trace.customers)
    out.push_back({shift_arrival(rule, c.arrival), shift_departure(rule, c.departure)});
  return out;
}

Trace simulate(const Model& model, std::uint64_t seed, Slot horizon) {
  if (std::holds_alternative<FinitePopulationArrivals>(model.arrivals) &&
      !std::holds_alternative<Fifo1>(model.discipline))
    throw std::invalid_argument("finite population model runs a FIFO single server only");
  const DiscreteDist& service = std::holds_alternative<FinitePopulationArrivals>(model.arrivals)
                                    ? std::get<FinitePopulationArrivals>(model.arrivals).service
                                    : model.service;
  const auto arrivals = gen_arrivals(model.arrivals, seed, horizon);
  const auto services = sample_services(service, seed, arrivals.size());
  DisciplineSpec discipline = model.discipline;
  if (auto* f = std::get_if<FifoC>(&discipline)) f->seed = seed;
  return run_discipline(arrivals, services, discipline, horizon);
}

double offered_load(const Model& model) {
  return std::visit(
      overloaded{
          [&](const BernoulliArrivals& b) { return b.alpha * model.service.mean(); },
          [&](const RenewalArrivals& r) { return model.service.mean() / r.interarrival.mean(); },
          [&](const FinitePopulationArrivals& fp) {
            return fp.population * fp.alpha * fp.service.mean();
          },
          [&](const ExplicitArrivals&) { return 0.0; },
      },
      model.arrivals) /
         std::visit(overloaded{
                        [](const FifoC& f) { return static_cast<double>(f.servers); },
                        [](const InfiniteServer&) { return std::numeric_limits<double>::infinity(); },
                        [](const auto&) { return 1.0; },
                    },
                    model.discipline);
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
  out << "k,A,S,Astart,D\n";
  for (std::size_t k = 0; k < trace.size(); ++k) {
    const auto& c = trace.customers[k];
    out << (k + 1) << ',' << c.arrival << ',' << c.service << ',' << c.start << ',' << c.departure
        << '\n';
  }
}

Trace read_trace_csv(std::istream& in, std::optional<Slot> horizon, const DisciplineSpec& recompute) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("trace file is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const bool full = line == "k,A,S,Astart,D";
  if (!full && line != "k,A,S") throw std::invalid_argument("unexpected trace header: " + line);

  std::vector<Slot> a, s, start, d;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<Slot> fields;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        fields.push_back(std::stoll(cell, &used));
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad integer on line " + std::to_string(lineno) + ": " + cell);
      }
    }
    const std::size_t want = full ? 5 : 3;
    if (fields.size() != want) throw std::invalid_argument("wrong column count on line " + std::to_string(lineno));
    a.push_back(fields[1]);
    s.push_back(fields[2]);
    if (full) {
      start.push_back(fields[3]);
      d.push_back(fields[4]);
    }
  }

  Trace trace;
  if (full) {
    trace.customers.resize(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) trace.customers[k] = {a[k], s[k], start[k], d[k], -1};
    trace.horizon = horizon.value_or(d.empty() ? 0 : *std::max_element(d.begin(), d.end()));
    trace.validate();
    return trace;
  }
  Slot h = horizon.value_or(0);
  trace = run_discipline(a, s, recompute, h);
  if (!horizon)
    for (const auto& c : trace.customers) trace.horizon = std::max(trace.horizon, c.departure);
  return trace;
}

}  // namespace dtq
