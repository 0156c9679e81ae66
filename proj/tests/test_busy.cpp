#include <cmath>
#include <sstream>

#include "doctest.h"
#include "dtq/birthdeath.hpp"
#include "dtq/busy.hpp"

using namespace dtq;

namespace {

// A = (1, 3), S = (5, 4), repeated every 10 slots.
Trace periodic(int periods) {
  std::vector<Slot> a, s;
  for (int k = 0; k < periods; ++k) {
    a.insert(a.end(), {10 * k + 1, 10 * k + 3});
    s.insert(s.end(), {5, 4});
  }
  return run_discipline(a, s, Fifo1{}, 10 * periods);
}

const Trace& reference() {
  static const Trace t = simulate({BernoulliArrivals{0.3}, DiscreteDist::geometric(0.5), Fifo1{}}, 42, 1'000'000);
  return t;
}

bool close(double got, double want, double rel) { return std::abs(got - want) <= rel * std::abs(want); }

}  // namespace

TEST_CASE("cycles of the two-customer example") {
  const auto cs = detect_cycles(periodic(3));
  REQUIRE(cs.cycles.size() == 2);
  for (const auto& c : cs.cycles) {
    CHECK(c.B == 9);
    CHECK(c.I == 1);
    CHECK(c.C == 10);
    CHECK(c.E == 2);
  }
  CHECK(cs.cycles[0].U == 1);
  CHECK(cs.cycles[0].V == 10);
  CHECK(cs.cycles[1].U == 11);
  CHECK(detect_cycles(Trace{{}, 20}).cycles.empty());
}

TEST_CASE("cycle CSV") {
  std::ostringstream out;
  write_cycles_csv(out, detect_cycles(periodic(3)));
  CHECK(out.str() == "k,U,V,C,B,I,E\n1,1,10,10,9,1,2\n2,11,20,10,9,1,2\n");
}

TEST_CASE("state rates of the periodic trace are exact") {
  const auto r = state_rates(periodic(10));
  REQUIRE(r.pi.size() == 3);
  CHECK(r.pi[0] == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(r.pi[1] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(r.pi[2] == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(r.alpha.at(0) == 1.0);
  CHECK(r.alpha.at(1) == doctest::Approx(1.0 / 6));
  CHECK(r.alpha.at(2) == 0.0);
  CHECK_FALSE(r.alpha.contains(3));
}

TEST_CASE("cycle means from rates") {
  const auto m = theorem65(0.4, 0.3, 0.3);
  CHECK(m.I == doctest::Approx(10.0 / 3));
  CHECK(m.C == doctest::Approx(25.0 / 3));
  CHECK(m.B == doctest::Approx(5.0));
  CHECK(m.E == doctest::Approx(2.5));
  for (double p0 : {0.1, 0.5, 0.9})
    for (double a0 : {0.05, 0.5, 1.0}) {
      const auto x = theorem65(p0, a0, 0.3);
      CHECK(x.C == doctest::Approx(x.B + x.I).epsilon(1e-14));
    }
  CHECK_THROWS_AS(theorem65(0.0, 0.3, 0.3), std::domain_error);
  CHECK_THROWS_AS(theorem65(0.4, 0.0, 0.3), std::domain_error);
}

TEST_CASE("sigma solver") {
  const auto g = sigma_solve(DiscreteDist::geometric(0.3), 0.5);
  CHECK(std::abs(g.sigma - 3.0 / 7) < 1e-10);
  CHECK(std::abs(g.sigma_star - 0.6) < 1e-10);

  // sigma = (0.9 sigma + 0.1)^2, smaller root of 0.81 s^2 - 0.82 s + 0.01
  const auto d = sigma_solve(DiscreteDist::point(2), 0.9);
  const double root = (0.82 - std::sqrt(0.82 * 0.82 - 4 * 0.81 * 0.01)) / (2 * 0.81);
  CHECK(std::abs(d.sigma - root) < 1e-10);
  CHECK(std::abs(d.sigma - 1.0 / 81) < 1e-10);

  CHECK_THROWS_AS(sigma_solve(DiscreteDist::geometric(0.6), 0.5), std::domain_error);
  CHECK_THROWS_AS(sigma_solve(DiscreteDist::geometric(0.3), 1.0), std::domain_error);
}

TEST_CASE("Bernoulli arrivals reduce the G/Geo/1 means to the rate form") {
  const auto g = sigma_solve(DiscreteDist::geometric(0.3), 0.5);
  const auto a = ggeo1_busy(0.3, g.sigma_star, 0.6);
  const auto b = theorem65(0.4, 0.3, 0.3);
  CHECK(std::abs(a.I - b.I) < 1e-10);
  CHECK(std::abs(a.C - b.C) < 1e-10);
  CHECK(std::abs(a.B - b.B) < 1e-10);
  CHECK(std::abs(a.E - b.E) < 1e-10);
  CHECK(a.E >= 1.0);
  CHECK_THROWS_AS(ggeo1_busy(0.3, 1.0, 0.6), std::domain_error);
}

TEST_CASE("B/Geom/1 cycles") {
  const auto& t = reference();
  const auto cs = detect_cycles(t);
  CHECK(close(cs.means.I, 10.0 / 3, 0.02));
  CHECK(close(cs.means.C, 25.0 / 3, 0.02));
  CHECK(close(cs.means.B, 5.0, 0.02));
  CHECK(close(cs.means.E, 2.5, 0.02));
  for (const auto& c : cs.cycles) {
    REQUIRE(c.C == c.B + c.I);
    REQUIRE(c.U < c.V);
    REQUIRE(c.E >= 1);
  }
  for (std::size_t k = 1; k < cs.cycles.size(); ++k) REQUIRE(cs.cycles[k - 1].V < cs.cycles[k].U);

  const auto r = state_rates(t);
  CHECK(std::abs(r.alpha.at(0) - 0.3) < 0.006);
  const auto m = theorem65(r.pi[0], r.alpha.at(0), r.arrival_rate);
  CHECK(close(cs.means.I, m.I, 0.01));
  CHECK(close(cs.means.C, m.C, 0.01));
  CHECK(close(cs.means.B, m.B, 0.01));
  CHECK(close(cs.means.E, m.E, 0.01));
}

TEST_CASE("coherent observed paths give the same cycles") {
  const auto& t = reference();
  const auto actual = detect_cycles(t);
  for (auto rule : kAllRules)
    for (auto epoch : kAllEpochs) {
      if (classify(rule, epoch) != CoherenceClass::COHERENT) continue;
      const auto seen = detect_cycles(t, rule, epoch);
      const auto n = std::min(seen.cycles.size(), actual.cycles.size());
      CHECK(std::max(seen.cycles.size(), actual.cycles.size()) - n <= 1);
      std::size_t differ = 0;
      for (std::size_t k = 0; k < n; ++k) {
        const auto& a = actual.cycles[k];
        const auto& b = seen.cycles[k];
        differ += a.B != b.B || a.C != b.C || a.I != b.I || a.E != b.E;
      }
      CHECK(differ == 0);
    }
}

TEST_CASE("G/Geo/1 with a two-point inter-arrival law") {
  const auto f = DiscreteDist::table(1, {0.5, 0.0, 0.5});
  const double beta = 0.8, alpha = 0.5;
  const auto root = sigma_solve(f, beta);
  CHECK(std::abs(root.sigma - 0.20753) < 1e-5);
  CHECK(std::abs(root.sigma_star - 0.56699) < 1e-5);
  const auto want = ggeo1_busy(alpha, root.sigma_star, alpha / beta);
  CHECK(std::abs(want.C - 4.6188) < 1e-4);

  const auto t = simulate({RenewalArrivals{f}, DiscreteDist::geometric(beta), Fifo1{}}, 42, 1'000'000);
  const auto cs = detect_cycles(t);
  CHECK(close(cs.means.I, want.I, 0.02));
  CHECK(close(cs.means.C, want.C, 0.02));
  CHECK(close(cs.means.B, want.B, 0.02));
  CHECK(close(cs.means.E, want.E, 0.02));

  // alpha(0) pi(0) = alpha pi^A(0)
  const auto r = state_rates(t);
  CHECK(r.alpha.at(0) * r.pi[0] == doctest::Approx(r.arrival_rate * r.arrivals_find_empty).epsilon(1e-12));
}

TEST_CASE("finite population cycles") {
  const int N = 5;
  const double a = 0.05, b = 0.5;
  const FinitePopulationArrivals fp{N, a, DiscreteDist::geometric(b), true};
  const auto t = simulate({fp, fp.service, Fifo1{}}, 42, 1'000'000);
  const auto pi = product_form(finite_population_profile(N, a, b));
  double L = 0;
  for (std::size_t n = 0; n < pi.size(); ++n) L += static_cast<double>(n) * pi[n];
  const auto want = finite_pop_busy(N, a, pi[0], L);
  CHECK(want.C == doctest::Approx(want.B + want.I));
  const auto cs = detect_cycles(t);
  CHECK(close(cs.means.I, want.I, 0.03));
  CHECK(close(cs.means.C, want.C, 0.03));
  CHECK(close(cs.means.B, want.B, 0.03));
  CHECK(close(cs.means.E, want.E, 0.03));
  CHECK(close(state_rates(t).alpha.at(0), N * a, 0.03));

  // a single on/off source
  const auto one = finite_pop_busy(1, 0.2, 0.5, 0.5);
  CHECK(one.E == doctest::Approx((1 - 0.5) / 0.5));
  CHECK_THROWS_AS(finite_pop_busy(0, 0.2, 0.5, 0.5), std::domain_error);
}
