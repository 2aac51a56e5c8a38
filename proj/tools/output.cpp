#include "output.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"
#include "zseries/errors.hpp"

namespace zseries::cli {

OutputFormat parse_format(std::string_view text) {
  if (text == "table") return OutputFormat::table;
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  throw ParseError("unknown output format '" + std::string(text) + "'", 0, 1);
}

std::string render_table(const Document& doc) {
  std::string out;
  for (std::size_t s = 0; s < doc.size(); ++s) {
    const Section& sec = doc[s];
    if (s > 0) out += '\n';
    out += "[" + sec.name + "]\n";
    std::vector<std::size_t> width(sec.columns.size());
    for (std::size_t c = 0; c < sec.columns.size(); ++c) width[c] = sec.columns[c].size();
    for (const auto& row : sec.rows) {
      for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    auto emit = [&](const std::vector<std::string>& cells) {
      std::string line;
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (c > 0) line += "  ";
        line += cells[c];
        if (c + 1 < cells.size()) line.append(width[c] - cells[c].size(), ' ');
      }
      out += line + '\n';
    };
    emit(sec.columns);
    for (const auto& row : sec.rows) emit(row);
  }
  return out;
}

std::string render_csv(const Document& doc) {
  std::string out;
  auto join = [](const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c > 0) line += ';';
      line += cells[c];
    }
    return line;
  };
  for (std::size_t s = 0; s < doc.size(); ++s) {
    if (s > 0) out += '\n';
    out += "# " + doc[s].name + '\n';
    out += join(doc[s].columns) + '\n';
    for (const auto& row : doc[s].rows) out += join(row) + '\n';
  }
  return out;
}

std::string render_json(const Document& doc) {
  nlohmann::ordered_json root = nlohmann::ordered_json::object();
  for (const auto& sec : doc) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : sec.rows) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (std::size_t c = 0; c < sec.columns.size(); ++c) obj[sec.columns[c]] = c < row.size() ? row[c] : "";
      rows.push_back(std::move(obj));
    }
    root[sec.name] = std::move(rows);
  }
  return root.dump(2) + '\n';
}

std::string render(const Document& doc, OutputFormat format) {
  switch (format) {
    case OutputFormat::csv:
      return render_csv(doc);
    case OutputFormat::json:
      return render_json(doc);
    case OutputFormat::table:
      break;
  }
  return render_table(doc);
}

}  // namespace zseries::cli
