#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "dtq/coherence.hpp"

namespace dtq {

// State-dependent Bernoulli queue: arrival probability alpha(n) and service
// completion probability beta(n) in state n.
struct BDParams {
  std::function<double(int)> alpha;
  std::function<double(int)> beta;
  // Largest state kept. 0 picks a truncation adaptively (tail below 1e-13).
  int max_state = 0;
};

// pi(0..N) from the balance equations
//   alpha(n)(1-beta(n)) pi(n) = (1-alpha(n+1)) beta(n+1) pi(n+1),
// renormalized after truncation. Throws std::domain_error when the partial
// sums do not settle (unstable) or a ratio is undefined.
std::vector<double> product_form(const BDParams& params);

struct BGeom1Params {
  double alpha;
  double beta;
  CoherenceClass cls = CoherenceClass::COHERENT;

  double rho() const { return alpha / beta; }
  double gamma() const { return alpha * (1.0 - beta) / (beta * (1.0 - alpha)); }
};

// Class profiles for B/Geom/1: alpha(n) = alpha everywhere, and
//   coherent: beta(0) = 0, beta(n >= 1) = beta
//   sub:      beta(n) = beta
//   super:    beta(0) = 0, beta(1) = beta / (1 + beta), beta(n >= 2) = beta
BDParams bgeom1_profile(const BGeom1Params& p);

// Finite population B/Geom/1//N with coherent service profile and
// alpha(n) = (N - n) alpha, or 1 - (1 - alpha)^(N - n) when `independent`.
BDParams finite_population_profile(int population, double alpha, double beta,
                                   bool independent = false);

// Closed forms per class; `states` entries starting at n = 0.
std::vector<double> bgeom1_pi(const BGeom1Params& p, int states);
double bgeom1_pi_at(const BGeom1Params& p, int n);

// pi(1) = g0 pi(0), pi(n) = g0 g1 g^(n-2) pi(0), with the matching pi(0).
double two_ratio_pi_at(double gamma0, double gamma1, double gamma, int n);

double bgeom1_L(const BGeom1Params& p);

// Probability of one or more customers: rho, gamma or rho + alpha(1 - rho).
double one_or_more(const BGeom1Params& p);

using Table61 = std::array<std::array<double, 6>, 5>;
Table61 table61(double alpha, double beta);
std::string render_table61(double alpha, double beta);

// Throws std::domain_error unless 0 < alpha < beta < 1.
void check_stable(const BGeom1Params& p);

}  // namespace dtq
