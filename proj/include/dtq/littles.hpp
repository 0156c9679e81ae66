#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dtq/coherence.hpp"
#include "dtq/engine.hpp"
#include "dtq/observer.hpp"

namespace dtq {

// Thrown when a cost function charges outside its declared support.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// max(3 (L+1) / sqrt(T), 0.01 lambda W) with T the window length.
double little_tolerance(double L, double lambda_w, Slot window);

struct LittleCheck {
  double L = 0.0;
  double lambda = 0.0;
  double W = 0.0;
  double residual = 0.0;  // L - lambda W
  double tolerance = 0.0;
  bool insufficient_data = false;
  bool pass = false;
};

LittleCheck check_little(const Trace& trace, Slot warmup, Convention conv = Convention::LEFT_OPEN);

struct ObservedLittleCheck {
  Combo combo{};
  CoherenceClass cls = CoherenceClass::COHERENT;
  double L = 0.0;
  double L_obs = 0.0;
  double lambda = 0.0;
  double W = 0.0;
  double W_obs = 0.0;
  double residual_observed = 0.0;  // L_obs - lambda W_obs
  double class_target = 0.0;       // lambda (W + offset)
  double residual_class = 0.0;     // L_obs - class_target
  double residual_shift = 0.0;     // (L_obs - L) - offset * lambda
  double tolerance = 0.0;
  bool insufficient_data = false;
  bool pass = false;
};

ObservedLittleCheck check_little_observed(const Trace& trace, SchedulingRule rule,
                                          ObservationEpoch epoch, Slot warmup);

struct BasicInequality {
  Count by_arrival = 0;    // sum of W_k over A_k <= τ
  Count area = 0;          // sum of L(j), j = 1..τ
  Count by_departure = 0;  // sum of W_k over D_k <= τ
  bool pass = false;
};

BasicInequality basic_inequality(const Trace& trace, Slot t);

// First τ in [0, last] where the inequality fails, if any.
std::optional<Slot> basic_inequality_violation(const Trace& trace, Slot last);

/// Cost rate f_k(τ) for customer k, charged only on (A_k, A_k + W_k].
struct CostFunction {
  std::string name;
  std::function<double(const CustomerRecord&, Slot)> rate;
  std::function<Slot(const CustomerRecord&)> support;  // W_k
};

CostFunction indicator_cost();       // 1{A < τ <= D}
CostFunction remaining_work_cost();  // work left for the customer at τ
CostFunction zero_cost();

struct HLambdaG {
  double H = 0.0;
  double lambda = 0.0;
  double G = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// Throws ContractViolation if the cost is nonzero at A_k or A_k + W_k + 1.
HLambdaG check_h_lambda_g(const Trace& trace, const CostFunction& cost, Slot warmup);

// V(τ): total remaining work at τ.
double workload(const Trace& trace, Slot t);
std::vector<double> workload_path(const Trace& trace);  // index 0..T

struct WorkloadMoments {
  double ES = 0.0;
  double ES2 = 0.0;
  double EWq = 0.0;
  double ESWq = 0.0;
  double EV = 0.0;
};

WorkloadMoments workload_moments(const Trace& trace, Slot warmup);

struct PkCheck {
  WorkloadMoments moments;
  double lambda = 0.0;
  double rho = 0.0;
  double EWq_sim = 0.0;
  double EWq_formula = 0.0;
  double EV_sim = 0.0;
  double EV_formula = 0.0;
  double correlation_gap = 0.0;  // ESWq - ES * EWq
  bool pass = false;             // both within 2%
};

// FIFO single server, Bernoulli arrivals. Throws std::domain_error when the
// empirical load lambda * ES is >= 1.
PkCheck verify_pk(const Trace& trace, Slot warmup);

struct Utilization {
  double total = 0.0;
  std::vector<double> per_server;
};

// Busy slots per server over (warmup, T] divided by the window length.
Utilization utilization(const Trace& trace, int servers, Slot warmup = 0);

}  // namespace dtq
