#include "dtq/coherence.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "dtq/observer.hpp"

namespace dtq {

int offset(CoherenceClass c) {
  switch (c) {
    case CoherenceClass::COHERENT: return 0;
    case CoherenceClass::SUB_COHERENT: return -1;
    case CoherenceClass::SUPER_COHERENT: return 1;
  }
  return 0;
}

std::string_view to_string(CoherenceClass c) {
  switch (c) {
    case CoherenceClass::COHERENT: return "coh";
    case CoherenceClass::SUB_COHERENT: return "sub";
    case CoherenceClass::SUPER_COHERENT: return "super";
  }
  return "?";
}

CoherenceClass parse_class(std::string_view s) {
  if (s == "coh" || s == "coherent") return CoherenceClass::COHERENT;
  if (s == "sub" || s == "sub-coherent") return CoherenceClass::SUB_COHERENT;
  if (s == "super" || s == "super-coherent") return CoherenceClass::SUPER_COHERENT;
  throw std::invalid_argument("unknown coherence class: " + std::string(s));
}

CoherenceClass classify(SchedulingRule rule, ObservationEpoch epoch) {
  constexpr Slot probe_arrival = 10;
  constexpr Slot probe_departure = 12;
  const Slot diff = observed_wait(rule, epoch, probe_arrival, probe_departure) -
                    actual_wait(probe_arrival, probe_departure);
  switch (diff) {
    case 0: return CoherenceClass::COHERENT;
    case -1: return CoherenceClass::SUB_COHERENT;
    case 1: return CoherenceClass::SUPER_COHERENT;
    default:
      throw std::logic_error("observed - actual wait offset " + std::to_string(diff) + " for " +
                             std::string(to_string(rule)) + "/" + std::string(to_string(epoch)));
  }
}

ClassificationTable classification_table() {
  ClassificationTable t{};
  for (auto r : kAllRules)
    for (auto e : kAllEpochs) t[static_cast<int>(r)][static_cast<int>(e)] = classify(r, e);
  return t;
}

const ClassificationTable& reference_table() {
  using enum CoherenceClass;
  static const ClassificationTable table{{
      {SUB_COHERENT, COHERENT, SUB_COHERENT, COHERENT, COHERENT, SUB_COHERENT},        // EAS
      {COHERENT, SUB_COHERENT, SUB_COHERENT, COHERENT, COHERENT, SUB_COHERENT},        // LAS-IA
      {SUPER_COHERENT, COHERENT, COHERENT, SUPER_COHERENT, SUPER_COHERENT, COHERENT},  // LAS-DA
      {COHERENT, COHERENT, COHERENT, SUPER_COHERENT, SUPER_COHERENT, COHERENT},        // LA-AF
      {COHERENT, COHERENT, SUB_COHERENT, COHERENT, COHERENT, SUB_COHERENT},            // LA-DF
  }};
  return table;
}

int coherent_count(const ClassificationTable& t) {
  int n = 0;
  for (const auto& row : t)
    for (auto c : row) n += c == CoherenceClass::COHERENT;
  return n;
}

bool counts_actual_wait(const ClassificationTable& t, SchedulingRule rule, ObservationEpoch epoch) {
  return t[static_cast<int>(rule)][static_cast<int>(epoch)] == CoherenceClass::COHERENT;
}

OffsetReport verify_on_trace(const Trace& trace, SchedulingRule rule, ObservationEpoch epoch) {
  OffsetReport rep{rule, epoch, offset(classify(rule, epoch)), {}, true};
  for (const auto& c : trace.customers) {
    const long long d = observed_wait(rule, epoch, c.arrival, c.departure) - (c.departure - c.arrival);
    ++rep.offsets[d];
    if (d != rep.expected_offset) rep.pass = false;
  }
  return rep;
}

std::string render_table(const ClassificationTable& t) {
  std::ostringstream out;
  out << std::left << std::setw(8) << "";
  for (auto e : kAllEpochs) out << std::setw(16) << to_string(e);
  out << '\n';
  for (auto r : kAllRules) {
    out << std::setw(8) << to_string(r);
    for (auto e : kAllEpochs) out << std::setw(16) << to_string(t[static_cast<int>(r)][static_cast<int>(e)]);
    out << '\n';
  }
  return out.str();
}

nlohmann::json table_json(const ClassificationTable& t) {
  auto rows = nlohmann::json::array();
  for (auto r : kAllRules)
    for (auto e : kAllEpochs)
      rows.push_back({{"rule", to_string(r)},
                      {"epoch", to_string(e)},
                      {"class", to_string(t[static_cast<int>(r)][static_cast<int>(e)])}});
  return rows;
}

ClassificationTable table_from_json(const nlohmann::json& rows) {
  ClassificationTable t{};
  std::array<std::array<bool, 6>, 5> seen{};
  for (const auto& row : rows) {
    const auto r = parse_rule(row.at("rule").get<std::string>());
    const auto e = parse_epoch(row.at("epoch").get<std::string>());
    t[static_cast<int>(r)][static_cast<int>(e)] = parse_class(row.at("class").get<std::string>());
    seen[static_cast<int>(r)][static_cast<int>(e)] = true;
  }
  for (const auto& row : seen)
    for (bool s : row)
      if (!s) throw std::invalid_argument("classification table is missing cells");
  return t;
}

std::vector<CellDiff> diff_tables(const ClassificationTable& got, const ClassificationTable& want) {
  std::vector<CellDiff> out;
  for (auto r : kAllRules)
    for (auto e : kAllEpochs) {
      const auto g = got[static_cast<int>(r)][static_cast<int>(e)];
      const auto w = want[static_cast<int>(r)][static_cast<int>(e)];
      if (g != w) out.push_back({r, e, g, w});
    }
  return out;
}

}  // namespace dtq
