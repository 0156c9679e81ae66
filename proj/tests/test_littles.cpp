#include <cmath>

#include "doctest.h"
#include "dtq/littles.hpp"

using namespace dtq;

namespace {

Trace example4() {
  return run_discipline(std::vector<Slot>{1, 2, 5}, std::vector<Slot>{3, 3, 2}, ExternalDepartures{{4, 5, 7}}, 7);
}

Trace bgeom1(std::uint64_t seed, Slot T, double alpha = 0.3, double beta = 0.5) {
  return simulate({BernoulliArrivals{alpha}, DiscreteDist::geometric(beta), Fifo1{}}, seed, T);
}

const Trace& reference() {
  static const Trace t = bgeom1(42, 1'000'000);
  return t;
}

}  // namespace

TEST_CASE("Little's law on the worked example") {
  for (auto conv : {Convention::LEFT_OPEN, Convention::RIGHT_OPEN}) {
    const auto l = check_little(example4(), 0, conv);
    CHECK(l.L == doctest::Approx(8.0 / 7));
    CHECK(l.lambda == doctest::Approx(3.0 / 7));
    CHECK(l.W == doctest::Approx(8.0 / 3));
    CHECK(std::abs(l.residual) < 1e-15);
    CHECK(l.pass);
  }
}

TEST_CASE("empty trace") {
  const auto l = check_little(Trace{{}, 50}, 0);
  CHECK(l.L == 0.0);
  CHECK(l.lambda == 0.0);
  CHECK(l.residual == 0.0);
  CHECK(l.insufficient_data);
}

TEST_CASE("Little's law on B/Geom/1") {
  const auto l = check_little(reference(), 100'000);
  CHECK(std::abs(l.L - 1.05) < 0.0105);
  CHECK(l.pass);
}

TEST_CASE("observed Little's law per class") {
  const auto& t = reference();
  const auto sub = check_little_observed(t, SchedulingRule::EAS, ObservationEpoch::RANDOM_OBSERVER, 100'000);
  CHECK(std::abs(sub.L_obs - 0.75) < 0.0075);
  CHECK(sub.pass);
  CHECK(std::abs(sub.residual_shift) <= sub.tolerance);
  const auto super = check_little_observed(t, SchedulingRule::LAS_DA, ObservationEpoch::RANDOM_OBSERVER, 100'000);
  CHECK(std::abs(super.L_obs - 1.35) < 0.0135);
  CHECK(super.pass);
  for (auto r : kAllRules)
    for (auto e : kAllEpochs) {
      const auto o = check_little_observed(t, r, e, 100'000);
      CHECK(o.pass);
      const double want = 0.3 * (3.5 + offset(classify(r, e)));
      CHECK(std::abs(o.L_obs - want) < 0.01 * want);
    }
}

TEST_CASE("Little residual shrinks with the horizon") {
  int better = 0;
  for (std::uint64_t s = 1; s <= 10; ++s) {
    const double small = std::abs(check_little(bgeom1(s, 10'000), 1'000).residual);
    const double large = std::abs(check_little(bgeom1(s, 1'000'000), 100'000).residual);
    better += large < small;
  }
  CHECK(better > 5);
}

TEST_CASE("basic inequality on the worked example") {
  const auto b = basic_inequality(example4(), 5);
  CHECK(b.by_arrival == 8);
  CHECK(b.area == 6);
  CHECK(b.by_departure == 6);
  CHECK(b.pass);
  const auto z = basic_inequality(example4(), 0);
  CHECK(z.by_arrival == 0);
  CHECK(z.area == 0);
  CHECK(z.by_departure == 0);
  CHECK(z.pass);
}

TEST_CASE("basic inequality holds at every slot of random traces") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto t = bgeom1(100 + s, 10'000, 0.45, 0.5);
    CHECK_FALSE(basic_inequality_violation(t, 10'000).has_value());
    for (Slot tau = 0; tau <= 10'000; tau += 997) CHECK(basic_inequality(t, tau).pass);
  }
}

TEST_CASE("H = lambda G with the indicator cost is Little's law") {
  const auto t = example4();
  const auto h = check_h_lambda_g(t, indicator_cost(), 0);
  const auto l = check_little(t, 0);
  CHECK(h.H == doctest::Approx(l.L).epsilon(1e-15));
  CHECK(h.lambda == doctest::Approx(l.lambda).epsilon(1e-15));
  CHECK(h.G == doctest::Approx(l.W).epsilon(1e-15));
  const auto z = check_h_lambda_g(t, zero_cost(), 0);
  CHECK(z.H == 0.0);
  CHECK(z.G == 0.0);
}

TEST_CASE("costs outside the support are a contract violation") {
  CostFunction leaky{"leaky", [](const CustomerRecord&, Slot) { return 1.0; },
                     [](const CustomerRecord& c) { return c.departure - c.arrival; }};
  CHECK_THROWS_AS(check_h_lambda_g(example4(), leaky, 0), ContractViolation);
}

TEST_CASE("remaining-work cost gives the mean workload") {
  const auto h = check_h_lambda_g(reference(), remaining_work_cost(), 100'000);
  CHECK(std::abs(h.H - 1.5) < 0.03);
  CHECK(h.pass);
}

TEST_CASE("workload of a single customer") {
  const auto t = run_discipline(std::vector<Slot>{1}, std::vector<Slot>{3}, Fifo1{}, 8);
  CHECK(workload(t, 1) == 0.0);
  CHECK(workload(t, 2) == 2.0);
  CHECK(workload(t, 3) == 1.0);
  CHECK(workload(t, 4) == 0.0);
  CHECK(workload(t, 5) == 0.0);
}

TEST_CASE("workload path follows the Lindley workload recursion") {
  const auto t = bgeom1(77, 20'000, 0.4, 0.5);
  const auto v = workload_path(t);
  std::vector<double> work_in(static_cast<std::size_t>(t.horizon) + 1, 0.0);
  for (const auto& c : t.customers) work_in[static_cast<std::size_t>(c.arrival)] += static_cast<double>(c.service);
  double oracle = 0.0;  // V(1)
  for (Slot tau = 1; tau <= t.horizon; ++tau) {
    REQUIRE(v[static_cast<std::size_t>(tau)] == oracle);
    REQUIRE(workload(t, tau) == oracle);
    oracle = std::max(oracle + work_in[static_cast<std::size_t>(tau)] - 1.0, 0.0);
  }
}

TEST_CASE("mean waiting time and workload formulas") {
  const auto p = verify_pk(reference(), 100'000);
  CHECK(std::abs(p.EWq_sim - 1.5) < 0.03);
  CHECK(std::abs(p.EV_sim - 1.5) < 0.03);
  CHECK(p.pass);
  // geometric service: queueing time formula from the closed form
  CHECK(std::abs(p.EWq_sim - 0.6 * 0.5 / 0.2) < 0.03);

  const auto d1 = verify_pk(simulate({BernoulliArrivals{0.7}, DiscreteDist::point(1), Fifo1{}}, 3, 100'000), 0);
  CHECK(d1.EWq_sim == 0.0);
  CHECK(d1.EWq_formula == 0.0);

  CHECK_THROWS_AS(verify_pk(bgeom1(5, 20'000, 0.6, 0.5), 0), std::domain_error);
}

TEST_CASE("W = Wq + ES") {
  const auto m = workload_moments(reference(), 100'000);
  double w = 0;
  std::size_t n = 0;
  for (const auto& c : reference().customers)
    if (c.arrival > 100'000 && c.departure <= reference().horizon) {
      w += static_cast<double>(c.wait());
      ++n;
    }
  w /= static_cast<double>(n);
  CHECK(std::abs(w - (m.EWq + m.ES)) < 0.01 * w);
}

TEST_CASE("utilization") {
  const auto u1 = utilization(reference(), 1, 100'000);
  CHECK(std::abs(u1.total - 0.6) < 0.006);
  const auto h = histogram(queue_path(reference()), 100'001, reference().horizon);
  CHECK(std::abs(1.0 - h[0] - 0.6) < 0.006);

  const Model gi2{RenewalArrivals{DiscreteDist::table(1, {2.0 / 3, 0.0, 1.0 / 3})},
                  DiscreteDist::table(1, {0.5, 0.0, 0.5}), FifoC{2}};
  const auto t = simulate(gi2, 9, 1'000'000);
  const auto u2 = utilization(t, 2, 100'000);
  CHECK(std::abs(u2.total - 1.2) < 0.024);
  CHECK(u2.per_server.size() == 2);
  CHECK(u2.per_server[0] + u2.per_server[1] == doctest::Approx(u2.total));

  CHECK(utilization(Trace{{}, 10}, 1).total == 0.0);
}
