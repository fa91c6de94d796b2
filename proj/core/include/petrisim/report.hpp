#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "petrisim/types.hpp"

namespace petrisim {

/// One reporting row: the clock value plus the counts of every user token,
/// labeled `place.token`. Labels are identical across the rows of one run:
/// place registration order, then token insertion order within each place.
/// The infinite place is excluded; its count is a sentinel, not data.
struct SimulationRecord {
  double clock = 0;
  std::vector<std::string> labels;
  std::vector<double> values;
};

/// Column labels for a set of places, skipping infinite ones.
std::vector<std::string> column_labels(const std::vector<Place>& places);

/// Converts one captured frame into a reporting row.
SimulationRecord report_frame(const Frame& frame);

/// Converts a whole simulation history. Throws EmptyHistory when empty.
std::vector<SimulationRecord> report_tokens(const std::vector<Frame>& history);

/// Shortest decimal rendering that parses back to the identical double.
std::string format_double(double value);

// CSV: header line `timestep,<label>,...`, one line per record, every line
// newline-terminated. JSON: a compact array of
// {"timestep": clock, "tokens": {label: value, ...}} objects in label order.
// Row-level writers exist so streaming output renders byte-identically to
// stored output.

void write_csv(const std::vector<SimulationRecord>& records, std::ostream& out);
void write_json(const std::vector<SimulationRecord>& records,
                std::ostream& out);

void write_csv_header(const std::vector<std::string>& labels,
                      std::ostream& out);
void write_csv_row(const SimulationRecord& record, std::ostream& out);
std::string json_record(const SimulationRecord& record);

}  // namespace petrisim
