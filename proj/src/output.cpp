#include "qlink/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace qlink::output {

namespace {

bool is_numeric(const Value& v) {
  return std::holds_alternative<double>(v) || std::holds_alternative<std::int64_t>(v) ||
         std::holds_alternative<std::uint64_t>(v);
}

nlohmann::ordered_json to_json(const Value& v) {
  return std::visit(
      [](const auto& x) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(x)) return nullptr;
          return x;
        } else {
          return x;
        }
      },
      v);
}

std::string to_text(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_number(x);
        } else if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else if constexpr (std::is_integral_v<T>) {
          return std::to_string(x);
        } else {
          return x;
        }
      },
      v);
}

std::string to_display(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", *d);
    return buf;
  }
  return to_text(v);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

void write_json(std::ostream& os, const OutputRecord& record) {
  nlohmann::ordered_json j;
  j["command"] = record.command;
  j["tool_version"] = record.tool_version;
  j["parameters"] = nlohmann::ordered_json::object();
  for (const auto& f : record.parameters) j["parameters"][f.name] = to_json(f.value);
  j["results"] = nlohmann::ordered_json::array();
  nlohmann::ordered_json units = nlohmann::ordered_json::object();
  for (const auto& row : record.results) {
    nlohmann::ordered_json r = nlohmann::ordered_json::object();
    for (const auto& f : row) {
      r[f.name] = to_json(f.value);
      if (is_numeric(f.value) && !units.contains(f.name)) units[f.name] = f.unit;
    }
    j["results"].push_back(std::move(r));
  }
  j["units"] = std::move(units);
  j["notes"] = record.notes;
  os << j.dump(2) << '\n';
}

void write_csv(std::ostream& os, const OutputRecord& record) {
  if (record.results.empty()) return;
  const Row& header = record.results.front();
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << csv_escape(header[i].name);
  os << '\n';
  for (const auto& row : record.results) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_escape(to_text(row[i].value));
    os << '\n';
  }
}

void write_table(std::ostream& os, const OutputRecord& record) {
  auto emit_vertical = [&os](const Row& row) {
    std::size_t width = 0;
    for (const auto& f : row) width = std::max(width, f.name.size());
    for (const auto& f : row) {
      os << "  " << f.name << std::string(width - f.name.size() + 2, ' ') << to_display(f.value);
      if (!f.unit.empty() && f.unit != "1") os << ' ' << f.unit;
      os << '\n';
    }
  };

  os << record.command << " (" << record.tool_version << ")\n";
  if (!record.parameters.empty()) {
    os << "parameters:\n";
    emit_vertical(record.parameters);
  }
  os << "results:\n";
  if (record.results.size() == 1) {
    emit_vertical(record.results.front());
  } else if (!record.results.empty()) {
    const Row& header = record.results.front();
    std::vector<std::string> titles;
    std::vector<std::size_t> widths;
    for (const auto& f : header) {
      std::string t = f.name;
      if (!f.unit.empty() && f.unit != "1") t += " [" + f.unit + "]";
      widths.push_back(std::max<std::size_t>(t.size(), 12));
      titles.push_back(std::move(t));
    }
    for (std::size_t i = 0; i < titles.size(); ++i) {
      os << "  " << titles[i] << std::string(widths[i] - titles[i].size(), ' ');
    }
    os << '\n';
    for (const auto& row : record.results) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        const std::string cell = to_display(row[i].value);
        os << "  " << cell << std::string(widths[i] > cell.size() ? widths[i] - cell.size() : 0, ' ');
      }
      os << '\n';
    }
  }
  for (const auto& note : record.notes) os << "note: " << note << '\n';
}

void write(std::ostream& os, const OutputRecord& record, Format format) {
  switch (format) {
    case Format::Table: write_table(os, record); break;
    case Format::Json: write_json(os, record); break;
    case Format::Csv: write_csv(os, record); break;
  }
}

}  // namespace qlink::output
