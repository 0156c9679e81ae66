#include <cmath>
#include <sstream>

#include "doctest.h"
#include "dtq/engine.hpp"

using namespace dtq;

namespace {

// Trace files carry no server column.
bool same_path(Trace a, Trace b) {
  for (auto* t : {&a, &b})
    for (auto& c : t->customers) c.server = 0;
  return a == b;
}

Trace fifo1(std::vector<Slot> a, std::vector<Slot> s, Slot horizon = 30) {
  return run_discipline(a, s, Fifo1{}, horizon);
}

}  // namespace

TEST_CASE("explicit arrivals pass through") {
  CHECK(gen_arrivals(ExplicitArrivals{{1, 3}}, 99, 12) == std::vector<Slot>{1, 3});
  CHECK(gen_arrivals(ExplicitArrivals{{1, 3, 20}}, 99, 12) == std::vector<Slot>{1, 3});
}

TEST_CASE("Bernoulli arrival rate obeys the law of large numbers") {
  const double alpha = 0.3;
  const Slot T = 1'000'000;
  const auto a = gen_arrivals(BernoulliArrivals{alpha}, 7, T);
  for (std::size_t i = 1; i < a.size(); ++i) REQUIRE(a[i - 1] < a[i]);
  const double rate = static_cast<double>(a.size()) / static_cast<double>(T);
  const double se = std::sqrt(alpha * (1 - alpha) / static_cast<double>(T));
  CHECK(std::abs(rate - alpha) < 3 * se);
}

TEST_CASE("generation is deterministic per seed") {
  CHECK(gen_arrivals(BernoulliArrivals{0.4}, 5, 5000) == gen_arrivals(BernoulliArrivals{0.4}, 5, 5000));
  CHECK(gen_arrivals(BernoulliArrivals{0.4}, 5, 5000) != gen_arrivals(BernoulliArrivals{0.4}, 6, 5000));
  const Model m{BernoulliArrivals{0.3}, DiscreteDist::geometric(0.5), Fifo1{}};
  std::ostringstream x, y;
  write_trace_csv(x, simulate(m, 11, 20000));
  write_trace_csv(y, simulate(m, 11, 20000));
  CHECK(x.str() == y.str());
}

TEST_CASE("arrival parameters are validated") {
  CHECK_THROWS_AS(gen_arrivals(BernoulliArrivals{0.0}, 1, 10), std::invalid_argument);
  CHECK_THROWS_AS(gen_arrivals(BernoulliArrivals{1.0}, 1, 10), std::invalid_argument);
  CHECK_THROWS_AS(gen_arrivals(BernoulliArrivals{0.5}, 1, 0), std::invalid_argument);
}

TEST_CASE("service sampling") {
  const auto s = sample_services(DiscreteDist::geometric(0.5), 3, 1'000'000);
  double mean = 0;
  for (auto x : s) mean += static_cast<double>(x);
  mean /= static_cast<double>(s.size());
  CHECK(std::abs(mean - 2.0) < 0.02);
  for (auto x : sample_services(DiscreteDist::point(3), 3, 1000)) CHECK(x == 3);
  for (auto x : sample_services(DiscreteDist::geometric(1.0), 3, 1000)) CHECK(x == 1);
  CHECK_THROWS_AS(sample_services(DiscreteDist::point(0), 3, 5), std::invalid_argument);
}

TEST_CASE("inverse-CDF sampling of a table matches its pmf") {
  const auto d = DiscreteDist::table(1, {0.5, 0.0, 0.5});
  const auto s = sample_services(d, 21, 200000);
  double ones = 0;
  for (auto x : s) {
    REQUIRE((x == 1 || x == 3));
    ones += x == 1;
  }
  CHECK(std::abs(ones / 200000 - 0.5) < 0.005);
}

TEST_CASE("FIFO single server") {
  const auto t = fifo1({1, 3}, {5, 4});
  REQUIRE(t.size() == 2);
  CHECK(t.customers[0].departure == 6);
  CHECK(t.customers[1].departure == 10);
  CHECK(t.customers[1].start == 6);
  // busy from the first arrival to the last departure
  CHECK(t.customers[1].departure - t.customers[0].arrival == 9);
  t.validate();
}

TEST_CASE("FIFO single server matches the Lindley recursion") {
  const Model m{BernoulliArrivals{0.4}, DiscreteDist::geometric(0.5), Fifo1{}};
  const auto t = simulate(m, 17, 50000);
  Slot prev = 0;
  for (const auto& c : t.customers) {
    const Slot start = std::max(c.arrival, prev);
    CHECK(c.start == start);
    CHECK(c.departure == start + c.service);
    prev = c.departure;
  }
}

TEST_CASE("FIFO with c servers picks the earliest free server") {
  const auto t = run_discipline(std::vector<Slot>{1, 1, 2, 3}, std::vector<Slot>{4, 2, 1, 1}, FifoC{2}, 20);
  CHECK(t.customers[0].server == 0);
  CHECK(t.customers[0].departure == 5);
  CHECK(t.customers[1].server == 1);
  CHECK(t.customers[1].departure == 3);
  CHECK(t.customers[2].start == 3);  // waits for server 1
  CHECK(t.customers[2].server == 1);
  CHECK(t.customers[3].start == 4);
  CHECK(t.customers[3].server == 1);
  t.validate();
}

TEST_CASE("FIFO with one server equals FIFO single server") {
  const auto a = gen_arrivals(BernoulliArrivals{0.35}, 2, 20000);
  const auto s = sample_services(DiscreteDist::geometric(0.5), 3, a.size());
  auto x = run_discipline(a, s, Fifo1{}, 20000);
  auto y = run_discipline(a, s, FifoC{1}, 20000);
  for (auto& c : x.customers) c.server = 0;
  for (auto& c : y.customers) c.server = 0;
  CHECK(x == y);
}

TEST_CASE("infinite server and external departures") {
  const auto t = run_discipline(std::vector<Slot>{1}, std::vector<Slot>{7}, InfiniteServer{}, 20);
  CHECK(t.customers[0].departure == 8);
  CHECK(t.customers[0].wait() == 7);
  const auto e = run_discipline(std::vector<Slot>{1, 2, 5}, std::vector<Slot>{3, 3, 2},
                                ExternalDepartures{{4, 5, 7}}, 7);
  CHECK(e.customers[0].departure == 4);
  CHECK(e.customers[1].departure == 5);
  CHECK(e.customers[2].departure == 7);
  CHECK_THROWS_AS(run_discipline(std::vector<Slot>{3}, std::vector<Slot>{1}, ExternalDepartures{{3}}, 7),
                  std::invalid_argument);
}

TEST_CASE("run_discipline rejects bad input") {
  CHECK_THROWS_AS(run_discipline(std::vector<Slot>{1, 2}, std::vector<Slot>{1}, Fifo1{}, 9), std::invalid_argument);
  CHECK_THROWS_AS(run_discipline(std::vector<Slot>{1}, std::vector<Slot>{0}, Fifo1{}, 9), std::invalid_argument);
}

TEST_CASE("shift_trace") {
  const auto t = fifo1({5}, {1});
  auto check = [&](SchedulingRule r, MicroTime a, MicroTime d) {
    const auto s = shift_trace(t, r).at(0);
    CHECK(s.arrival.slot() == a.slot());
    CHECK(s.arrival.phase() == a.phase());
    CHECK(s.departure.slot() == d.slot());
    CHECK(s.departure.phase() == d.phase());
  };
  check(SchedulingRule::EAS, {5, Phase::P}, {6, Phase::M});
  check(SchedulingRule::LAS_IA, {5, Phase::M}, {5, Phase::P});
  check(SchedulingRule::LA_DF, {5, Phase::M}, {6, Phase::MM});
}

TEST_CASE("pgf") {
  const auto g = DiscreteDist::geometric(0.3);
  CHECK(pgf_eval(g, 0.5) == doctest::Approx(0.15 / 0.65).epsilon(1e-14));
  // independent series summation
  double series = 0, term = 0.3 * 0.5;
  for (int n = 1; n < 200; ++n, term *= 0.7 * 0.5) series += term;
  CHECK(std::abs(pgf_eval(g, 0.5) - series) < 1e-14);
  CHECK(pgf_eval(DiscreteDist::point(3), 0.5) == doctest::Approx(0.125));
  for (const auto& d : {g, DiscreteDist::point(4), DiscreteDist::table(1, {0.25, 0.25, 0.5})})
    CHECK(pgf_eval(d, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(pgf_eval(g, 1.5), std::invalid_argument);
}

TEST_CASE("distribution moments") {
  const auto g = DiscreteDist::geometric(0.5);
  CHECK(g.mean() == doctest::Approx(2.0));
  CHECK(g.second_moment() == doctest::Approx(6.0));
  const auto t = DiscreteDist::table(1, {0.5, 0.0, 0.5});
  CHECK(t.mean() == doctest::Approx(2.0));
  CHECK(t.second_moment() == doctest::Approx(5.0));
  CHECK_THROWS_AS(DiscreteDist::table(1, {0.5, 0.4}), std::invalid_argument);
}

TEST_CASE("trace CSV round trip") {
  const Model m{BernoulliArrivals{0.3}, DiscreteDist::geometric(0.5), Fifo1{}};
  const auto t = simulate(m, 4, 3000);
  std::stringstream io;
  write_trace_csv(io, t);
  CHECK(io.str().rfind("k,A,S,Astart,D\n", 0) == 0);
  const auto back = read_trace_csv(io, t.horizon);
  CHECK(same_path(back, t));
  std::istringstream partial("k,A,S\n1,1,5\n2,3,4\n");
  const auto p = read_trace_csv(partial);
  CHECK(p.customers[1].departure == 10);
  CHECK(p.horizon == 10);
}

TEST_CASE("finite population stays within N") {
  const FinitePopulationArrivals fp{3, 0.2, DiscreteDist::geometric(0.4)};
  const Model m{fp, fp.service, Fifo1{}};
  const auto t = simulate(m, 8, 20000);
  t.validate();
  // at most N customers can be in the system at any slot
  std::vector<int> in(20002, 0);
  for (const auto& c : t.customers)
    for (Slot s = c.arrival; s < c.departure && s <= 20000; ++s) ++in[static_cast<std::size_t>(s)];
  for (int x : in) CHECK(x <= 3);
}
