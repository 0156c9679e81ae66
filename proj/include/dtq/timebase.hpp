#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace dtq {

using Slot = std::int64_t;

// Marks around the slot edge τ. CENTER is τ - 0.5, the middle of (τ-1, τ].
enum class Phase : std::uint8_t { CENTER = 0, MM = 1, M = 2, EDGE = 3, P = 4, PP = 5 };

// Events never coincide with an observation mark: an event tagged τ- or τ--
// happens just after that mark, an event tagged τ+ just before it.
enum class Nudge : std::int8_t { BEFORE = -1, AT = 0, AFTER = 1 };

enum class SchedulingRule : std::uint8_t { EAS, LAS_IA, LAS_DA, LA_AF, LA_DF };

enum class ObservationEpoch : std::uint8_t {
  RANDOM_OBSERVER,
  OUTSIDE_OBSERVER,
  POT_PRE_ARRIVAL,
  POT_POST_ARRIVAL,
  POT_PRE_DEPARTURE,
  POT_POST_DEPARTURE,
};

inline constexpr std::array<SchedulingRule, 5> kAllRules{
    SchedulingRule::EAS, SchedulingRule::LAS_IA, SchedulingRule::LAS_DA,
    SchedulingRule::LA_AF, SchedulingRule::LA_DF};

inline constexpr std::array<ObservationEpoch, 6> kAllEpochs{
    ObservationEpoch::RANDOM_OBSERVER,   ObservationEpoch::OUTSIDE_OBSERVER,
    ObservationEpoch::POT_PRE_ARRIVAL,   ObservationEpoch::POT_POST_ARRIVAL,
    ObservationEpoch::POT_PRE_DEPARTURE, ObservationEpoch::POT_POST_DEPARTURE};

constexpr int rank(Phase p) { return static_cast<int>(p); }

/// A point on the refined time lattice. Ordered lexicographically by
/// (slot, phase rank, nudge).
class MicroTime {
 public:
  constexpr MicroTime() = default;
  constexpr MicroTime(Slot slot, Phase phase, Nudge nudge = Nudge::AT)
      : slot_{slot}, phase_{phase}, nudge_{nudge} {}

  constexpr Slot slot() const { return slot_; }
  constexpr Phase phase() const { return phase_; }
  constexpr Nudge nudge() const { return nudge_; }
  constexpr bool is_mark() const { return nudge_ == Nudge::AT; }

  constexpr auto operator<=>(const MicroTime& o) const {
    if (auto c = slot_ <=> o.slot_; c != 0) return c;
    if (auto c = rank(phase_) <=> rank(o.phase_); c != 0) return c;
    return static_cast<int>(nudge_) <=> static_cast<int>(o.nudge_);
  }
  constexpr bool operator==(const MicroTime&) const = default;

 private:
  Slot slot_ = 0;
  Phase phase_ = Phase::EDGE;
  Nudge nudge_ = Nudge::AT;
};

std::strong_ordering compare(const MicroTime& a, const MicroTime& b);

// Scheduled arrival A'_k for an actual arrival at slot a.
MicroTime shift_arrival(SchedulingRule rule, Slot a);

// Scheduled departure D'_k for an actual departure at slot d. Throws
// std::invalid_argument for d < 1 under LAS_IA.
MicroTime shift_departure(SchedulingRule rule, Slot d);

// Observation point u(t) (one cell of the rule x epoch table).
MicroTime epoch_point(SchedulingRule rule, ObservationEpoch epoch, Slot t);

Phase epoch_phase(SchedulingRule rule, ObservationEpoch epoch);

// Marks render as "5", "5-0.5", "5--", "5-", "5+", "5++". Event points carry
// a '~' on the side of the mark they hug: "~5+" is just before 5+, "5-~" just
// after 5-.
std::string to_string(const MicroTime& t);

std::string_view to_string(SchedulingRule r);
std::string_view to_string(ObservationEpoch e);
std::string_view to_string(Phase p);

// Accepts the canonical names above plus the hyphenated forms (LAS-IA, ...).
SchedulingRule parse_rule(std::string_view s);
ObservationEpoch parse_epoch(std::string_view s);

}  // namespace dtq
