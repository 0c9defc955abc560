#pragma once

// Command-line surface: output envelope, CSV/JSON/table writers, the
// reference-value check and the command dispatcher used by tools/lindley.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace lindley::cli {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kFormatVersion = "1.0";

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2 };

enum class Format { kJson, kCsv, kTable };

std::optional<Format> parse_format(std::string_view name);

/// Significant-digit formatting shared by every writer.
struct NumberFormat {
  int digits = 6;

  std::string format(double value) const;
  /// value rounded to `digits` significant digits.
  double round(double value) const;
  /// Copy of j with every floating-point leaf rounded.
  Json round_all(const Json& j) const;
};

/// Rows of named columns; each cell is a JSON scalar.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;

  void add_row(std::vector<Json> row);
};

struct Provenance {
  std::string value;
  std::string source;
};

class OutputEnvelope {
 public:
  explicit OutputEnvelope(std::string command);

  OutputEnvelope& input(const std::string& key, Json value);
  OutputEnvelope& result(const std::string& key, Json value, std::string source = {});
  OutputEnvelope& note(std::string text);
  OutputEnvelope& table(Table t);

  const std::string& command() const { return command_; }
  const Json& inputs() const { return inputs_; }
  const Json& results() const { return results_; }
  const std::vector<Provenance>& provenance() const { return provenance_; }
  const std::optional<Table>& rows() const { return table_; }

  Json to_json(const NumberFormat& fmt) const;
  std::string render(Format format, const NumberFormat& fmt) const;

 private:
  std::string command_;
  Json inputs_ = Json::object();
  Json results_ = Json::object();
  std::vector<Provenance> provenance_;
  std::vector<std::string> notes_;
  std::optional<Table> table_;
};

/// CSV: header row, ',' separator, '.' decimal, LF line endings. Strings
/// containing separators or quotes are quoted.
std::string render_csv(const Table& table, const NumberFormat& fmt);

/// Parses CSV produced by render_csv, skipping '#' comment lines. Returns
/// header + rows of raw cell text.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

std::string render_cell(const Json& cell, const NumberFormat& fmt);

// ---------------------------------------------------------------------------
// Reference values

struct Anchor {
  std::string id;
  std::string description;
  double expected;
  double tolerance;
  double observed;
  bool passed;
};

struct AnchorOptions {
  /// Anchor ids whose tolerance is forced to zero (failure demonstration).
  std::vector<std::string> zero_tolerance;
};

/// Evaluates every published reference value the library reproduces.
std::vector<Anchor> evaluate_anchors(const AnchorOptions& options = {});

/// Ids of all anchors, in evaluation order.
std::vector<std::string> anchor_ids();

// ---------------------------------------------------------------------------

/// Runs one command line (args excludes the program name). Writes the
/// emission to `out` (or to --out PATH) and diagnostics to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace lindley::cli
