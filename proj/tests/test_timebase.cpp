#include <algorithm>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "dtq/timebase.hpp"

using namespace dtq;

namespace {

// Real-valued position of a mark, for cross-checking the order. Minus
// phases sit at τ - 1/3 and τ - 1/6, plus phases at τ + 1/6 and τ + 1/3.
double position(Slot s, Phase p) {
  switch (p) {
    case Phase::CENTER: return s - 0.5;
    case Phase::MM: return s - 1.0 / 3;
    case Phase::M: return s - 1.0 / 6;
    case Phase::EDGE: return static_cast<double>(s);
    case Phase::P: return s + 1.0 / 6;
    case Phase::PP: return s + 1.0 / 3;
  }
  return 0;
}

const std::vector<Phase> kPhases{Phase::CENTER, Phase::MM, Phase::M, Phase::EDGE, Phase::P, Phase::PP};

}  // namespace

TEST_CASE("phase ranks are strictly increasing") {
  for (std::size_t i = 1; i < kPhases.size(); ++i) CHECK(rank(kPhases[i - 1]) < rank(kPhases[i]));
}

TEST_CASE("compare examples") {
  CHECK(compare({5, Phase::M}, {5, Phase::EDGE}) == std::strong_ordering::less);
  CHECK(compare({5, Phase::P}, {6, Phase::CENTER}) == std::strong_ordering::less);
  CHECK(compare({7, Phase::EDGE}, {7, Phase::EDGE}) == std::strong_ordering::equal);
  CHECK(MicroTime{5, Phase::P} < MicroTime{6, Phase::CENTER});
  CHECK(MicroTime{6, Phase::CENTER} < MicroTime{6, Phase::MM});
}

TEST_CASE("mark order agrees with real positions") {
  std::vector<MicroTime> marks;
  for (Slot s = 0; s < 4; ++s)
    for (auto p : kPhases) marks.emplace_back(s, p);
  for (const auto& a : marks)
    for (const auto& b : marks) {
      const double pa = position(a.slot(), a.phase()), pb = position(b.slot(), b.phase());
      CHECK((a < b) == (pa < pb));
      CHECK((a == b) == (pa == pb));
    }
}

TEST_CASE("order is antisymmetric and transitive including nudged points") {
  std::vector<MicroTime> pts;
  for (Slot s = 0; s < 3; ++s)
    for (auto p : kPhases)
      for (auto n : {Nudge::BEFORE, Nudge::AT, Nudge::AFTER}) pts.emplace_back(s, p, n);
  for (const auto& a : pts)
    for (const auto& b : pts) {
      CHECK((a < b) == (b > a));
      CHECK(((a < b) + (a == b) + (a > b)) == 1);
    }
  auto sorted = pts;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 2; i < sorted.size(); ++i) CHECK(sorted[i - 2] < sorted[i]);
}

TEST_CASE("shift_arrival") {
  CHECK(shift_arrival(SchedulingRule::EAS, 5).slot() == 5);
  CHECK(shift_arrival(SchedulingRule::EAS, 5).phase() == Phase::P);
  CHECK(shift_arrival(SchedulingRule::LA_AF, 5).phase() == Phase::MM);
  CHECK(shift_arrival(SchedulingRule::LAS_IA, 0).slot() == 0);
  CHECK(shift_arrival(SchedulingRule::LAS_IA, 0).phase() == Phase::M);
  CHECK(shift_arrival(SchedulingRule::LAS_DA, 3).phase() == Phase::M);
  CHECK(shift_arrival(SchedulingRule::LA_DF, 3).phase() == Phase::M);
  for (auto r : kAllRules) CHECK_FALSE(shift_arrival(r, 4).is_mark());
}

TEST_CASE("shift_departure") {
  CHECK(shift_departure(SchedulingRule::EAS, 6).slot() == 6);
  CHECK(shift_departure(SchedulingRule::EAS, 6).phase() == Phase::M);
  CHECK(shift_departure(SchedulingRule::LA_AF, 6).phase() == Phase::M);
  CHECK(shift_departure(SchedulingRule::LA_DF, 6).phase() == Phase::MM);
  CHECK(shift_departure(SchedulingRule::LAS_IA, 6).slot() == 5);
  CHECK(shift_departure(SchedulingRule::LAS_IA, 6).phase() == Phase::P);
  CHECK(shift_departure(SchedulingRule::LAS_DA, 6).slot() == 6);
  CHECK(shift_departure(SchedulingRule::LAS_DA, 6).phase() == Phase::P);
  CHECK_THROWS_AS(shift_departure(SchedulingRule::LAS_IA, 0), std::invalid_argument);
}

TEST_CASE("shifted arrival precedes shifted departure whenever D > A") {
  for (auto r : kAllRules)
    for (Slot a = 0; a < 6; ++a)
      for (Slot d = std::max<Slot>(a + 1, 1); d < 9; ++d) CHECK(shift_arrival(r, a) < shift_departure(r, d));
}

TEST_CASE("epoch table") {
  using E = ObservationEpoch;
  using R = SchedulingRule;
  CHECK(epoch_point(R::EAS, E::OUTSIDE_OBSERVER, 7) == MicroTime{7, Phase::CENTER});
  CHECK(epoch_point(R::LA_AF, E::POT_PRE_ARRIVAL, 7) == MicroTime{7, Phase::MM});
  CHECK(epoch_point(R::LAS_IA, E::POT_POST_DEPARTURE, 7) == MicroTime{7, Phase::P});
  CHECK(epoch_point(R::LA_DF, E::POT_PRE_DEPARTURE, 3) == MicroTime{3, Phase::MM});
  CHECK(epoch_point(R::EAS, E::POT_POST_ARRIVAL, 3) == MicroTime{3, Phase::P});
  CHECK(epoch_point(R::LAS_DA, E::POT_POST_DEPARTURE, 3) == MicroTime{3, Phase::P});
  for (auto r : kAllRules) {
    CHECK(epoch_phase(r, E::RANDOM_OBSERVER) == Phase::EDGE);
    CHECK(epoch_phase(r, E::OUTSIDE_OBSERVER) == Phase::CENTER);
  }
  const Phase C = Phase::CENTER, MM = Phase::MM, M = Phase::M, ED = Phase::EDGE, P = Phase::P;
  const Phase want[5][6] = {
      {ED, C, ED, P, M, ED},   // EAS
      {ED, C, M, ED, ED, P},   // LAS-IA
      {ED, C, M, ED, ED, P},   // LAS-DA
      {ED, C, MM, M, M, ED},   // LA-AF
      {ED, C, M, ED, MM, M},   // LA-DF
  };
  for (auto r : kAllRules)
    for (auto e : kAllEpochs) {
      const auto got = epoch_point(r, e, 11);
      CHECK(got.slot() == 11);
      CHECK(got.is_mark());
      CHECK(got.phase() == want[static_cast<int>(r)][static_cast<int>(e)]);
    }
}

TEST_CASE("observation marks never coincide with shifted events") {
  for (auto r : kAllRules)
    for (auto e : kAllEpochs)
      for (Slot t = 0; t < 5; ++t)
        for (Slot s = 1; s < 5; ++s) {
          CHECK(epoch_point(r, e, t) != shift_arrival(r, s));
          CHECK(epoch_point(r, e, t) != shift_departure(r, s));
        }
}

TEST_CASE("names round-trip") {
  for (auto r : kAllRules) CHECK(parse_rule(to_string(r)) == r);
  for (auto e : kAllEpochs) CHECK(parse_epoch(to_string(e)) == e);
  CHECK(parse_rule("LAS_IA") == SchedulingRule::LAS_IA);
  CHECK(parse_rule("la-df") == SchedulingRule::LA_DF);
  CHECK_THROWS_AS(parse_rule("FIFO"), std::invalid_argument);
  CHECK(to_string(MicroTime{5, Phase::CENTER}) == "5-0.5");
  CHECK(to_string(MicroTime{5, Phase::PP}) == "5++");
  CHECK(to_string(shift_arrival(SchedulingRule::EAS, 5)) == "~5+");
}
