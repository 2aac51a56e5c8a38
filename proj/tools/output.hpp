#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace zseries::cli {

enum class OutputFormat { table, csv, json };

OutputFormat parse_format(std::string_view text);

/// A named block of string-valued rows. Every cell is already formatted, so
/// the three renderings carry identical digits.
struct Section {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

using Document = std::vector<Section>;

/// Aligned text columns, one block per section.
std::string render_table(const Document& doc);
/// ';'-separated; each section starts with a "# name" line and a header row.
std::string render_csv(const Document& doc);
/// Object keyed by section name; each section is an array of objects whose
/// values are all JSON strings.
std::string render_json(const Document& doc);

std::string render(const Document& doc, OutputFormat format);

}  // namespace zseries::cli
