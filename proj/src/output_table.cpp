// Copyright 2026 The nlshare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nlshare/output_table.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "nlshare/errors.hpp"

namespace nlshare {
namespace {

bool needs_quotes(std::string_view field) {
  if (field.empty()) return true;  // keeps "" distinct from a missing value
  if (field.front() == ' ' || field.back() == ' ') return true;
  return field.find_first_of(",\"\r\n") != std::string_view::npos;
}

std::string csv_field(std::string_view field) {
  if (!needs_quotes(field)) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_cell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return {};
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else {
          return csv_field(v);
        }
      },
      cell);
}

nlohmann::ordered_json json_cell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else {
          return v;
        }
      },
      cell);
}

Cell cell_from_json(const nlohmann::ordered_json& v) {
  switch (v.type()) {
    case nlohmann::ordered_json::value_t::null: return std::monostate{};
    case nlohmann::ordered_json::value_t::boolean: return v.get<bool>();
    case nlohmann::ordered_json::value_t::number_integer:
    case nlohmann::ordered_json::value_t::number_unsigned:
      return v.get<std::int64_t>();
    case nlohmann::ordered_json::value_t::number_float: return v.get<double>();
    case nlohmann::ordered_json::value_t::string: return v.get<std::string>();
    default:
      throw StructureError("table cells must be scalars");
  }
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  if (name == "svg") return Format::svg;
  throw ConfigError("unknown output format '" + std::string(name) + "'");
}

const char* to_string(Format format) {
  switch (format) {
    case Format::csv: return "csv";
    case Format::json: return "json";
    case Format::svg: return "svg";
  }
  return "csv";
}

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

OutputTable::OutputTable(std::vector<std::string> columns)
    : columns_(std::move(columns)) {
  std::set<std::string> seen;
  for (const auto& c : columns_) {
    if (!seen.insert(c).second) {
      throw StructureError("duplicate column name '" + c + "'");
    }
  }
}

void OutputTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) {
    throw StructureError("row has " + std::to_string(row.size()) +
                         " cells, table has " +
                         std::to_string(columns_.size()) + " columns");
  }
  for (const Cell& cell : row) {
    if (const double* d = std::get_if<double>(&cell); d && !std::isfinite(*d)) {
      throw StructureError("non-finite value in table row");
    }
  }
  rows_.push_back(std::move(row));
}

std::string OutputTable::to_csv() const {
  std::string out;
  for (const auto& [key, value] : metadata_.items()) {
    out += "# " + key + ": " + value.dump() + "\n";
  }
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (c) out += ',';
    out += csv_field(columns_[c]);
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += csv_cell(row[c]);
    }
    out += '\n';
  }
  return out;
}

std::string OutputTable::to_json() const {
  nlohmann::ordered_json doc;
  doc["metadata"] = metadata_;
  doc["columns"] = columns_;
  nlohmann::ordered_json data = nlohmann::ordered_json::object();
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    nlohmann::ordered_json column = nlohmann::ordered_json::array();
    for (const auto& row : rows_) column.push_back(json_cell(row[c]));
    data[columns_[c]] = std::move(column);
  }
  doc["data"] = std::move(data);
  return doc.dump(2) + "\n";
}

OutputTable OutputTable::from_json(std::string_view text) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw StructureError(std::string("invalid table JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("columns") || !doc.contains("data")) {
    throw StructureError("table JSON needs 'columns' and 'data'");
  }
  OutputTable table(doc.at("columns").get<std::vector<std::string>>());
  if (doc.contains("metadata")) table.metadata_ = doc.at("metadata");

  const auto& data = doc.at("data");
  std::size_t rows = 0;
  for (std::size_t c = 0; c < table.columns_.size(); ++c) {
    const auto& column = data.at(table.columns_[c]);
    if (c == 0) rows = column.size();
    if (column.size() != rows) throw StructureError("ragged table columns");
  }
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<Cell> row;
    row.reserve(table.columns_.size());
    for (const auto& name : table.columns_) {
      row.push_back(cell_from_json(data.at(name).at(r)));
    }
    table.add_row(std::move(row));
  }
  return table;
}

bool operator==(const OutputTable& a, const OutputTable& b) {
  return a.columns_ == b.columns_ && a.rows_ == b.rows_ &&
         a.metadata_ == b.metadata_;
}

std::string render_table(const OutputTable& table, Format format) {
  switch (format) {
    case Format::csv: return table.to_csv();
    case Format::json: return table.to_json();
    case Format::svg: break;
  }
  throw ConfigError("svg output is only available for sweep grids");
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void emit_table(const OutputTable& table, Format format,
                const std::filesystem::path& path) {
  write_text_file(path, render_table(table, format));
}

}  // namespace nlshare
