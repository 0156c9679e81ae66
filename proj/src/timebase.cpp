#include "dtq/timebase.hpp"

#include <cctype>
#include <stdexcept>
#include <string>

namespace dtq {

std::strong_ordering compare(const MicroTime& a, const MicroTime& b) {
  return a <=> b;
}

MicroTime shift_arrival(SchedulingRule rule, Slot a) {
  switch (rule) {
    case SchedulingRule::EAS:
      return {a, Phase::P, Nudge::BEFORE};
    case SchedulingRule::LA_AF:
      return {a, Phase::MM, Nudge::AFTER};
    case SchedulingRule::LAS_IA:
    case SchedulingRule::LAS_DA:
    case SchedulingRule::LA_DF:
      return {a, Phase::M, Nudge::AFTER};
  }
  throw std::logic_error("shift_arrival: bad rule");
}

MicroTime shift_departure(SchedulingRule rule, Slot d) {
  switch (rule) {
    case SchedulingRule::EAS:
    case SchedulingRule::LA_AF:
      return {d, Phase::M, Nudge::AFTER};
    case SchedulingRule::LA_DF:
      return {d, Phase::MM, Nudge::AFTER};
    case SchedulingRule::LAS_DA:
      return {d, Phase::P, Nudge::BEFORE};
    case SchedulingRule::LAS_IA:
      if (d < 1) throw std::invalid_argument("shift_departure: LAS-IA needs d >= 1");
      return {d - 1, Phase::P, Nudge::BEFORE};
  }
  throw std::logic_error("shift_departure: bad rule");
}

namespace {

using enum Phase;

// Rows: EAS, LAS-IA, LAS-DA, LA-AF, LA-DF.
// Columns: random, outside, pre-arrival, post-arrival, pre-departure,
// post-departure.
constexpr Phase kEpochTable[5][6] = {
    {EDGE, CENTER, EDGE, P, M, EDGE},
    {EDGE, CENTER, M, EDGE, EDGE, P},
    {EDGE, CENTER, M, EDGE, EDGE, P},
    {EDGE, CENTER, MM, M, M, EDGE},
    {EDGE, CENTER, M, EDGE, MM, M},
};

}  // namespace

Phase epoch_phase(SchedulingRule rule, ObservationEpoch epoch) {
  return kEpochTable[static_cast<int>(rule)][static_cast<int>(epoch)];
}

MicroTime epoch_point(SchedulingRule rule, ObservationEpoch epoch, Slot t) {
  return {t, epoch_phase(rule, epoch)};
}

std::string_view to_string(Phase p) {
  switch (p) {
    case CENTER: return "-0.5";
    case MM: return "--";
    case M: return "-";
    case EDGE: return "";
    case P: return "+";
    case PP: return "++";
  }
  return "?";
}

std::string to_string(const MicroTime& t) {
  std::string s = std::to_string(t.slot());
  s += to_string(t.phase());
  if (t.nudge() == Nudge::BEFORE) s.insert(s.begin(), '~');
  if (t.nudge() == Nudge::AFTER) s.push_back('~');
  return s;
}

std::string_view to_string(SchedulingRule r) {
  switch (r) {
    case SchedulingRule::EAS: return "EAS";
    case SchedulingRule::LAS_IA: return "LAS-IA";
    case SchedulingRule::LAS_DA: return "LAS-DA";
    case SchedulingRule::LA_AF: return "LA-AF";
    case SchedulingRule::LA_DF: return "LA-DF";
  }
  return "?";
}

std::string_view to_string(ObservationEpoch e) {
  switch (e) {
    case ObservationEpoch::RANDOM_OBSERVER: return "random";
    case ObservationEpoch::OUTSIDE_OBSERVER: return "outside";
    case ObservationEpoch::POT_PRE_ARRIVAL: return "pre-arrival";
    case ObservationEpoch::POT_POST_ARRIVAL: return "post-arrival";
    case ObservationEpoch::POT_PRE_DEPARTURE: return "pre-departure";
    case ObservationEpoch::POT_POST_DEPARTURE: return "post-departure";
  }
  return "?";
}

namespace {

std::string normalize(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '_' || c == ' ') c = '-';
    out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  return out;
}

}  // namespace

SchedulingRule parse_rule(std::string_view s) {
  const std::string n = normalize(s);
  for (auto r : kAllRules)
    if (normalize(to_string(r)) == n) return r;
  throw std::invalid_argument("unknown scheduling rule: " + std::string(s));
}

ObservationEpoch parse_epoch(std::string_view s) {
  std::string n = normalize(s);
  if (n == "RANDOM-OBSERVER" || n == "EDGE") n = "RANDOM";
  if (n == "OUTSIDE-OBSERVER" || n == "CENTER") n = "OUTSIDE";
  if (n.rfind("POT-", 0) == 0) n = n.substr(4);
  for (auto e : kAllEpochs)
    if (normalize(to_string(e)) == n) return e;
  throw std::invalid_argument("unknown observation epoch: " + std::string(s));
}

}  // namespace dtq
