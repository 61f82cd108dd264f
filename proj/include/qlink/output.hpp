#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qlink::output {

inline constexpr std::string_view kToolVersion = "qlink 1.0.0";

using Value = std::variant<double, std::int64_t, std::uint64_t, bool, std::string>;

struct Field {
  std::string name;
  Value value;
  std::string unit;  // required for numeric values; "1" marks a dimensionless quantity
};

using Row = std::vector<Field>;

struct OutputRecord {
  std::string command;
  Row parameters;
  std::vector<Row> results;
  std::vector<std::string> notes;
  std::string tool_version{kToolVersion};
};

enum class Format { Table, Json, Csv };

/// Shortest decimal string that parses back to exactly `v`; "nan", "inf", "-inf" otherwise.
std::string format_number(double v);

// JSON schema:
//   {"command": str, "tool_version": str,
//    "parameters": {name: value, ...},
//    "results": [{name: value, ...}, ...],
//    "units": {name: unit, ...},
//    "notes": [str, ...]}
// Non-finite numbers serialize as null.
void write_json(std::ostream& os, const OutputRecord& record);

// Header row of result field names, then one line per result row. Parameters and
// notes are not part of the CSV stream.
void write_csv(std::ostream& os, const OutputRecord& record);

void write_table(std::ostream& os, const OutputRecord& record);

void write(std::ostream& os, const OutputRecord& record, Format format);

}  // namespace qlink::output
