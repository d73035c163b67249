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

#ifndef NLSHARE_OUTPUT_TABLE_HPP
#define NLSHARE_OUTPUT_TABLE_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

namespace nlshare {

/// Empty cells (monostate) serialize as an empty CSV field / JSON null.
using Cell = std::variant<std::monostate, bool, std::int64_t, double,
                          std::string>;

enum class Format { csv, json, svg };

Format parse_format(std::string_view name);
const char* to_string(Format format);

/// Rectangular table of scalars plus a metadata object describing how it
/// was produced.
class OutputTable {
 public:
  using Metadata = nlohmann::ordered_json;

  OutputTable() = default;
  explicit OutputTable(std::vector<std::string> columns);

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }
  std::size_t row_count() const { return rows_.size(); }

  /// Throws StructureError when the row width differs from the header.
  void add_row(std::vector<Cell> row);

  Metadata& metadata() { return metadata_; }
  const Metadata& metadata() const { return metadata_; }

  /// Metadata as '# key: <json>' lines, then an RFC 4180 header and rows.
  /// Doubles use 17 significant digits.
  std::string to_csv() const;

  /// {"metadata": {...}, "columns": [names], "data": {name: [values]}}
  std::string to_json() const;
  static OutputTable from_json(std::string_view text);

  friend bool operator==(const OutputTable& a, const OutputTable& b);

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
  Metadata metadata_ = Metadata::object();
};

std::string format_double(double value);

/// Renders to csv or json and writes the file; IoError on failure.
void emit_table(const OutputTable& table, Format format,
                const std::filesystem::path& path);

std::string render_table(const OutputTable& table, Format format);

void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace nlshare

#endif  // NLSHARE_OUTPUT_TABLE_HPP
