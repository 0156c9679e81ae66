#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "dtq/dist.hpp"
#include "dtq/timebase.hpp"

namespace dtq {

// ---- input models --------------------------------------------------------

struct BernoulliArrivals {
  double alpha;
};

struct RenewalArrivals {
  DiscreteDist interarrival;  // support >= 1
};

// N sources, each idle source arrives with probability alpha per slot. The
// process depends on the queue, so the service law travels with it and the
// queue is a FIFO single server.
struct FinitePopulationArrivals {
  int population;
  double alpha;
  DiscreteDist service;
  // One arrival per slot with probability (N - n) alpha instead of
  // independent sources (requires N alpha <= 1).
  bool single_arrival = false;
};

struct ExplicitArrivals {
  std::vector<Slot> slots;
};

using ArrivalSpec =
    std::variant<BernoulliArrivals, RenewalArrivals, FinitePopulationArrivals, ExplicitArrivals>;

struct Fifo1 {};
struct FifoC {
  int servers = 1;
  bool random_assignment = false;  // pick uniformly among idle servers
  std::uint64_t seed = 0;
};
struct InfiniteServer {};
struct ExternalDepartures {
  std::vector<Slot> departures;
};

using DisciplineSpec = std::variant<Fifo1, FifoC, InfiniteServer, ExternalDepartures>;

// Substream ids derived from the experiment seed.
enum class Stream : std::uint64_t { ARRIVALS = 1, SERVICES = 2, ASSIGNMENT = 3 };

// ---- sample path ---------------------------------------------------------

struct CustomerRecord {
  Slot arrival = 0;    // A_k
  Slot service = 0;    // S_k
  Slot start = 0;      // A''_k
  Slot departure = 0;  // D_k
  int server = 0;      // -1 when not tracked (infinite server, external)

  Slot wait() const { return departure - arrival; }
  Slot queue_wait() const { return start - arrival; }

  bool operator==(const CustomerRecord&) const = default;
};

/// Actual sample path over the horizon (0, T]. Customers are indexed in
/// arrival order; batches keep customer-index order.
struct Trace {
  std::vector<CustomerRecord> customers;
  Slot horizon = 0;

  std::size_t size() const { return customers.size(); }
  bool empty() const { return customers.empty(); }
  // Throws std::invalid_argument when an invariant is broken.
  void validate() const;

  bool operator==(const Trace&) const = default;
};

struct ShiftedCustomer {
  MicroTime arrival;    // A'_k
  MicroTime departure;  // D'_k
};

std::vector<Slot> gen_arrivals(const ArrivalSpec& spec, std::uint64_t seed, Slot horizon);

std::vector<Slot> sample_services(const DiscreteDist& dist, std::uint64_t seed, std::size_t n);

Trace run_discipline(std::span<const Slot> arrivals, std::span<const Slot> services,
                     const DisciplineSpec& discipline, Slot horizon);

std::vector<ShiftedCustomer> shift_trace(const Trace& trace, SchedulingRule rule);

/// Arrivals, services and discipline in one place.
struct Model {
  ArrivalSpec arrivals;
  DiscreteDist service = DiscreteDist::point(1);
  DisciplineSpec discipline = Fifo1{};
};

Trace simulate(const Model& model, std::uint64_t seed, Slot horizon);

// Traffic intensity alpha * ES / c; infinite server reports 0.
double offered_load(const Model& model);

// ---- trace files ---------------------------------------------------------

// Header "k,A,S,Astart,D", one row per customer (k is 1-based).
void write_trace_csv(std::ostream& out, const Trace& trace);

// Full rows are taken verbatim. Rows with only k,A,S recompute the path with
// `recompute`. Horizon defaults to the largest departure slot.
Trace read_trace_csv(std::istream& in, std::optional<Slot> horizon = std::nullopt,
                     const DisciplineSpec& recompute = Fifo1{});

}  // namespace dtq
