#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>

#include "dtq/engine.hpp"
#include "dtq/timebase.hpp"
#include "json.hpp"

namespace dtq {

enum class CoherenceClass { COHERENT, SUB_COHERENT, SUPER_COHERENT };

// Uniform W^o - W offset of each class: 0, -1, +1.
int offset(CoherenceClass c);
std::string_view to_string(CoherenceClass c);  // "coh", "sub", "super"
CoherenceClass parse_class(std::string_view s);

/// Classify a rule/epoch pair from one probe customer (A = 10, D = 12).
/// Throws std::logic_error if the offset is not in {-1, 0, +1}.
CoherenceClass classify(SchedulingRule rule, ObservationEpoch epoch);

using ClassificationTable = std::array<std::array<CoherenceClass, 6>, 5>;

ClassificationTable classification_table();

// The published rule x epoch table, for golden comparison.
const ClassificationTable& reference_table();

int coherent_count(const ClassificationTable& t);

// Counting at slot edges (random observer) and slot centres (outside
// observer) gives the actual waiting time iff the cell is coherent.
bool counts_actual_wait(const ClassificationTable& t, SchedulingRule rule, ObservationEpoch epoch);

struct OffsetReport {
  SchedulingRule rule;
  ObservationEpoch epoch;
  int expected_offset = 0;
  std::map<long long, std::size_t> offsets;  // W^o - W -> number of customers
  bool pass = true;
};

OffsetReport verify_on_trace(const Trace& trace, SchedulingRule rule, ObservationEpoch epoch);

// Aligned text with one row per rule.
std::string render_table(const ClassificationTable& t);
// Rows {"rule", "epoch", "class"}.
nlohmann::json table_json(const ClassificationTable& t);
ClassificationTable table_from_json(const nlohmann::json& rows);

struct CellDiff {
  SchedulingRule rule;
  ObservationEpoch epoch;
  CoherenceClass got;
  CoherenceClass want;
};
std::vector<CellDiff> diff_tables(const ClassificationTable& got, const ClassificationTable& want);

}  // namespace dtq
