#include "dtq/birthdeath.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace dtq {

namespace {

constexpr int kAdaptiveCap = 1'000'000;
constexpr double kTail = 1e-13;

}  // namespace

std::vector<double> product_form(const BDParams& params) {
  const bool adaptive = params.max_state <= 0;
  std::vector<double> terms{1.0};
  double total = 1.0;
  for (int n = 0;; ++n) {
    if (!adaptive && n == params.max_state) {
      const double up = params.alpha(n) * (1.0 - params.beta(n));
      if (up > 0.0 && terms.back() / total > 1e-12)
        throw std::domain_error("product_form: truncation leaves more than 1e-12 of the mass");
      break;
    }
    if (adaptive && n >= kAdaptiveCap) throw std::domain_error("product_form: partial sums do not settle (unstable)");
    const double up = params.alpha(n) * (1.0 - params.beta(n));
    if (up == 0.0) break;  // states above n are unreachable
    const double down = params.beta(n + 1) * (1.0 - params.alpha(n + 1));
    if (down <= 0.0) throw std::domain_error("product_form: gamma(" + std::to_string(n) + ") undefined");
    terms.push_back(terms.back() * up / down);
    total += terms.back();
    if (!std::isfinite(total)) throw std::domain_error("product_form: partial sums diverge (unstable)");
    if (adaptive && n >= 2 && terms.back() / total < kTail) break;
  }
  for (double& t : terms) t /= total;
  return terms;
}

void check_stable(const BGeom1Params& p) {
  if (!(p.alpha > 0.0 && p.beta < 1.0 && p.alpha < p.beta))
    throw std::domain_error("B/Geom/1 needs 0 < alpha < beta < 1 (rho < 1)");
}

BDParams bgeom1_profile(const BGeom1Params& p) {
  const double a = p.alpha, b = p.beta;
  BDParams bd;
  bd.alpha = [a](int) { return a; };
  switch (p.cls) {
    case CoherenceClass::COHERENT:
      bd.beta = [b](int n) { return n == 0 ? 0.0 : b; };
      break;
    case CoherenceClass::SUB_COHERENT:
      bd.beta = [b](int) { return b; };
      break;
    case CoherenceClass::SUPER_COHERENT:
      bd.beta = [b](int n) { return n == 0 ? 0.0 : n == 1 ? b / (1.0 + b) : b; };
      break;
  }
  return bd;
}

BDParams finite_population_profile(int population, double alpha, double beta, bool independent) {
  if (population < 1) throw std::invalid_argument("population must be >= 1");
  BDParams bd;
  bd.alpha = [=](int n) {
    const int idle = population - n;
    if (idle <= 0) return 0.0;
    return independent ? 1.0 - std::pow(1.0 - alpha, idle) : idle * alpha;
  };
  bd.beta = [beta](int n) { return n == 0 ? 0.0 : beta; };
  bd.max_state = population;
  return bd;
}

double bgeom1_pi_at(const BGeom1Params& p, int n) {
  check_stable(p);
  const double rho = p.rho(), g = p.gamma();
  if (n < 0) return 0.0;
  switch (p.cls) {
    case CoherenceClass::COHERENT:
      return n == 0 ? 1.0 - rho : rho * (1.0 - g) * std::pow(g, n - 1);
    case CoherenceClass::SUB_COHERENT:
      return (1.0 - g) * std::pow(g, n);
    case CoherenceClass::SUPER_COHERENT:
      if (n == 0) return (1.0 - p.alpha) * (1.0 - rho);
      if (n == 1) return (p.alpha + rho) * (1.0 - rho);
      return rho * rho * (1.0 - g) * std::pow(g, n - 2);
  }
  return 0.0;
}

std::vector<double> bgeom1_pi(const BGeom1Params& p, int states) {
  std::vector<double> pi(static_cast<std::size_t>(std::max(states, 0)));
  for (int n = 0; n < states; ++n) pi[static_cast<std::size_t>(n)] = bgeom1_pi_at(p, n);
  return pi;
}

double two_ratio_pi_at(double gamma0, double gamma1, double gamma, int n) {
  const double pi0 = (1.0 - gamma) / (1.0 - gamma + gamma0 - gamma0 * gamma + gamma0 * gamma1);
  if (n == 0) return pi0;
  if (n == 1) return gamma0 * pi0;
  return gamma0 * gamma1 * std::pow(gamma, n - 2) * pi0;
}

double bgeom1_L(const BGeom1Params& p) {
  check_stable(p);
  const double a = p.alpha, b = p.beta, rho = p.rho(), g = p.gamma();
  switch (p.cls) {
    case CoherenceClass::COHERENT: return a * (1.0 - a) / (b - a);
    case CoherenceClass::SUB_COHERENT: return a * (1.0 - b) / (b - a);
    case CoherenceClass::SUPER_COHERENT:
      // pi(1) + sum_{n>=2} n rho^2 (1-g) g^(n-2)
      return (a + rho) * (1.0 - rho) + rho * rho * (g / (1.0 - g) + 2.0);
  }
  return 0.0;
}

double one_or_more(const BGeom1Params& p) {
  check_stable(p);
  switch (p.cls) {
    case CoherenceClass::COHERENT: return p.rho();
    case CoherenceClass::SUB_COHERENT: return p.gamma();
    case CoherenceClass::SUPER_COHERENT: return p.rho() + p.alpha * (1.0 - p.rho());
  }
  return 0.0;
}

Table61 table61(double alpha, double beta) {
  const auto classes = classification_table();
  Table61 t{};
  for (std::size_t r = 0; r < 5; ++r)
    for (std::size_t e = 0; e < 6; ++e) t[r][e] = one_or_more({alpha, beta, classes[r][e]});
  return t;
}

std::string render_table61(double alpha, double beta) {
  const auto classes = classification_table();
  const auto values = table61(alpha, beta);
  auto symbol = [](CoherenceClass c) {
    switch (c) {
      case CoherenceClass::COHERENT: return "rho";
      case CoherenceClass::SUB_COHERENT: return "gamma";
      case CoherenceClass::SUPER_COHERENT: return "rho+a(1-rho)";
    }
    return "?";
  };
  std::ostringstream out;
  out << std::left << std::setw(8) << "";
  for (auto e : kAllEpochs) out << std::setw(22) << to_string(e);
  out << '\n';
  for (auto r : kAllRules) {
    const auto i = static_cast<std::size_t>(r);
    out << std::setw(8) << to_string(r);
    for (auto e : kAllEpochs) {
      const auto j = static_cast<std::size_t>(e);
      std::ostringstream cell;
      cell << symbol(classes[i][j]) << '=' << std::fixed << std::setprecision(4) << values[i][j];
      out << std::setw(22) << cell.str();
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace dtq
