#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "lindley/cli.hpp"

namespace lindley::cli {

std::optional<Format> parse_format(std::string_view name) {
  if (name == "json") return Format::kJson;
  if (name == "csv") return Format::kCsv;
  if (name == "table") return Format::kTable;
  return std::nullopt;
}

std::string NumberFormat::format(double value) const {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", std::clamp(digits, 1, 17), value);
  return buf;
}

double NumberFormat::round(double value) const {
  if (!std::isfinite(value)) return value;
  return std::strtod(format(value).c_str(), nullptr);
}

Json NumberFormat::round_all(const Json& j) const {
  if (j.is_number_float()) {
    const double v = j.get<double>();
    // JSON has no inf/nan; those are emitted as strings.
    if (!std::isfinite(v)) return format(v);
    return round(v);
  }
  if (j.is_object()) {
    Json out = Json::object();
    for (const auto& [k, v] : j.items()) out[k] = round_all(v);
    return out;
  }
  if (j.is_array()) {
    Json out = Json::array();
    for (const auto& v : j) out.push_back(round_all(v));
    return out;
  }
  return j;
}

void Table::add_row(std::vector<Json> row) {
  if (row.size() != columns.size()) throw std::logic_error("table row width mismatch");
  rows.push_back(std::move(row));
}

OutputEnvelope::OutputEnvelope(std::string command) : command_(std::move(command)) {}

OutputEnvelope& OutputEnvelope::input(const std::string& key, Json value) {
  inputs_[key] = std::move(value);
  return *this;
}

OutputEnvelope& OutputEnvelope::result(const std::string& key, Json value, std::string source) {
  results_[key] = std::move(value);
  if (!source.empty()) provenance_.push_back({key, std::move(source)});
  return *this;
}

OutputEnvelope& OutputEnvelope::note(std::string text) {
  notes_.push_back(std::move(text));
  return *this;
}

OutputEnvelope& OutputEnvelope::table(Table t) {
  table_ = std::move(t);
  return *this;
}

Json OutputEnvelope::to_json(const NumberFormat& fmt) const {
  Json j = Json::object();
  j["format_version"] = kFormatVersion;
  j["command"] = command_;
  j["inputs"] = fmt.round_all(inputs_);
  j["results"] = fmt.round_all(results_);
  if (table_) {
    Json rows = Json::array();
    for (const auto& row : table_->rows) {
      Json obj = Json::object();
      for (std::size_t i = 0; i < row.size(); ++i) obj[table_->columns[i]] = fmt.round_all(row[i]);
      rows.push_back(std::move(obj));
    }
    j["rows"] = std::move(rows);
  }
  Json prov = Json::array();
  for (const auto& p : provenance_) prov.push_back(Json{{"value", p.value}, {"source", p.source}});
  j["provenance"] = std::move(prov);
  if (!notes_.empty()) j["notes"] = notes_;
  return j;
}

std::string render_cell(const Json& cell, const NumberFormat& fmt) {
  if (cell.is_number_float()) return fmt.format(cell.get<double>());
  if (cell.is_number_integer()) return std::to_string(cell.get<std::int64_t>());
  if (cell.is_number_unsigned()) return std::to_string(cell.get<std::uint64_t>());
  if (cell.is_boolean()) return cell.get<bool>() ? "true" : "false";
  if (cell.is_string()) return cell.get<std::string>();
  if (cell.is_null()) return "";
  return cell.dump();
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string compact(const Json& j, const NumberFormat& fmt) {
  if (j.is_object() || j.is_array()) return fmt.round_all(j).dump();
  return render_cell(j, fmt);
}

std::string render_text_table(const Table& t, const NumberFormat& fmt) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back(t.columns);
  for (const auto& row : t.rows) {
    std::vector<std::string> r;
    for (const auto& c : row) r.push_back(render_cell(c, fmt));
    cells.push_back(std::move(r));
  }
  std::vector<std::size_t> width(t.columns.size(), 0);
  for (const auto& r : cells) {
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  std::ostringstream os;
  for (const auto& r : cells) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i > 0) os << "  ";
      os << r[i];
      if (i + 1 < r.size()) os << std::string(width[i] - r[i].size(), ' ');
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace

std::string render_csv(const Table& table, const NumberFormat& fmt) {
  std::ostringstream os;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i > 0) os << ',';
    os << csv_escape(table.columns[i]);
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) os << ',';
      os << csv_escape(render_cell(row[i], fmt));
    }
    os << '\n';
  }
  return os.str();
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> cells;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (quoted) {
        if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else if (c == '"') {
          quoted = false;
        } else {
          cur += c;
        }
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        cells.push_back(std::move(cur));
        cur.clear();
      } else {
        cur += c;
      }
    }
    cells.push_back(std::move(cur));
    out.push_back(std::move(cells));
  }
  return out;
}

std::string OutputEnvelope::render(Format format, const NumberFormat& fmt) const {
  if (format == Format::kJson) return to_json(fmt).dump(2) + "\n";

  std::ostringstream os;
  if (format == Format::kCsv) {
    os << "# format_version=" << kFormatVersion << " command=" << command_ << '\n';
    if (!inputs_.empty()) {
      os << "# inputs:";
      for (const auto& [k, v] : inputs_.items()) os << ' ' << k << '=' << compact(v, fmt);
      os << '\n';
    }
    if (!results_.empty()) {
      os << "# results:";
      for (const auto& [k, v] : results_.items()) os << ' ' << k << '=' << compact(v, fmt);
      os << '\n';
    }
    for (const auto& n : notes_) os << "# note: " << n << '\n';
    if (table_) {
      os << render_csv(*table_, fmt);
    } else {
      Table kv{{"key", "value"}, {}};
      for (const auto& [k, v] : results_.items()) kv.add_row({k, compact(v, fmt)});
      os << render_csv(kv, fmt);
    }
    return os.str();
  }

  os << command_ << " (format " << kFormatVersion << ")\n";
  for (const auto& [k, v] : inputs_.items()) os << "  input  " << k << " = " << compact(v, fmt) << '\n';
  for (const auto& [k, v] : results_.items()) {
    os << "  result " << k << " = " << compact(v, fmt);
    for (const auto& p : provenance_) {
      if (p.value == k) os << "  [" << p.source << ']';
    }
    os << '\n';
  }
  for (const auto& n : notes_) os << "  note: " << n << '\n';
  if (table_) os << render_text_table(*table_, fmt);
  return os.str();
}

}  // namespace lindley::cli
