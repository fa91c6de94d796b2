#include "petrisim/report.hpp"

#include <charconv>
#include <cstdio>

#include "petrisim/errors.hpp"

namespace petrisim {

namespace {

void require_rows(bool non_empty) {
  if (!non_empty) {
    throw Error(ErrorCode::EmptyHistory,
                "refusing to write a report with no rows");
  }
}

void check_sink(const std::ostream& out) {
  if (!out) {
    throw Error(ErrorCode::IoError, "failed writing to the output sink");
  }
}

std::string json_escape(const std::string& text) {
  std::string escaped;
  escaped.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '"': escaped += "\\\""; break;
      case '\\': escaped += "\\\\"; break;
      case '\n': escaped += "\\n"; break;
      case '\r': escaped += "\\r"; break;
      case '\t': escaped += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          escaped += buf;
        } else {
          escaped += c;
        }
    }
  }
  return escaped;
}

}  // namespace

std::vector<std::string> column_labels(const std::vector<Place>& places) {
  std::vector<std::string> labels;
  for (const Place& place : places) {
    if (place.infinite) continue;
    for (const auto& [token, count] : place.store.entries()) {
      labels.push_back(place.name + "." + token);
    }
  }
  return labels;
}

SimulationRecord report_frame(const Frame& frame) {
  SimulationRecord record;
  record.clock = frame.clock;
  record.labels = column_labels(frame.places);
  record.values.reserve(record.labels.size());
  for (const Place& place : frame.places) {
    if (place.infinite) continue;
    for (const auto& [token, count] : place.store.entries()) {
      record.values.push_back(count);
    }
  }
  return record;
}

std::vector<SimulationRecord> report_tokens(
    const std::vector<Frame>& history) {
  require_rows(!history.empty());
  std::vector<SimulationRecord> records;
  records.reserve(history.size());
  for (const Frame& frame : history) {
    records.push_back(report_frame(frame));
  }
  return records;
}

std::string format_double(double value) {
  if (value == 0) return "0";  // rules out "-0"
  char buf[32];
  auto result = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, result.ptr);
}

void write_csv_header(const std::vector<std::string>& labels,
                      std::ostream& out) {
  out << "timestep";
  for (const std::string& label : labels) out << ',' << label;
  out << '\n';
}

void write_csv_row(const SimulationRecord& record, std::ostream& out) {
  out << format_double(record.clock);
  for (double value : record.values) out << ',' << format_double(value);
  out << '\n';
}

void write_csv(const std::vector<SimulationRecord>& records,
               std::ostream& out) {
  require_rows(!records.empty());
  write_csv_header(records.front().labels, out);
  for (const SimulationRecord& record : records) write_csv_row(record, out);
  out.flush();
  check_sink(out);
}

std::string json_record(const SimulationRecord& record) {
  std::string row = "{\"timestep\":" + format_double(record.clock) +
                    ",\"tokens\":{";
  for (std::size_t i = 0; i < record.labels.size(); ++i) {
    if (i > 0) row += ',';
    row += '"' + json_escape(record.labels[i]) +
           "\":" + format_double(record.values[i]);
  }
  row += "}}";
  return row;
}

void write_json(const std::vector<SimulationRecord>& records,
                std::ostream& out) {
  require_rows(!records.empty());
  out << '[';
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (i > 0) out << ',';
    out << json_record(records[i]);
  }
  out << "]\n";
  out.flush();
  check_sink(out);
}

}  // namespace petrisim
