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
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "doctest.h"
#include "nlshare/errors.hpp"

using namespace nlshare;

namespace {

OutputTable sample_table() {
  OutputTable t({"name", "count", "value", "flag", "maybe"});
  t.metadata()["seed"] = 42;
  t.metadata()["note"] = "demo";
  t.add_row({std::string("plain"), std::int64_t{3}, 0.1, true,
             std::monostate{}});
  t.add_row({std::string("with,comma"), std::int64_t{-7}, 2.0, false, 1e-300});
  t.add_row({std::string("say \"hi\""), std::int64_t{0}, -0.0, true,
             std::string("")});
  return t;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("nlshare_test_" + name);
}

}  // namespace

TEST_CASE("csv layout and quoting") {
  const std::string csv = sample_table().to_csv();
  const std::string expected =
      "# seed: 42\n"
      "# note: \"demo\"\n"
      "name,count,value,flag,maybe\n"
      "plain,3,0.10000000000000001,true,\n"
      "\"with,comma\",-7,2,false,1e-300\n"
      "\"say \"\"hi\"\"\",0,-0,true,\"\"\n";
  CHECK(csv == expected);
}

TEST_CASE("empty table keeps header and metadata") {
  OutputTable t({"a", "b"});
  t.metadata()["k"] = 1;
  CHECK(t.to_csv() == "# k: 1\na,b\n");
  const OutputTable back = OutputTable::from_json(t.to_json());
  CHECK(back == t);
  CHECK(back.row_count() == 0);
}

TEST_CASE("json mirrors columns as arrays") {
  const auto doc = nlohmann::ordered_json::parse(sample_table().to_json());
  CHECK(doc["metadata"]["seed"] == 42);
  CHECK(doc["columns"].size() == 5);
  CHECK(doc["data"]["count"][1] == -7);
  CHECK(doc["data"]["maybe"][0].is_null());
  CHECK(doc["data"]["flag"][2] == true);
}

TEST_CASE("json round trip") {
  const OutputTable t = sample_table();
  const OutputTable back = OutputTable::from_json(t.to_json());
  CHECK(back == t);
  CHECK(back.to_json() == t.to_json());
  CHECK_THROWS_AS(OutputTable::from_json("{"), StructureError);
  CHECK_THROWS_AS(OutputTable::from_json("{\"columns\": [\"a\"]}"),
                  StructureError);
  CHECK_THROWS_AS(OutputTable::from_json(
                      R"({"columns":["a","b"],"data":{"a":[1],"b":[]}})"),
                  StructureError);
}

TEST_CASE("doubles survive serialization exactly") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::uint64_t> bits;
  OutputTable t({"x"});
  std::vector<double> values;
  while (values.size() < 2000) {
    const std::uint64_t b = bits(rng);
    double v;
    std::memcpy(&v, &b, sizeof v);
    if (!std::isfinite(v)) continue;
    values.push_back(v);
  }
  values.insert(values.end(), {0.1, 1.0 / 3, 2.0000000000000004,
                               std::numeric_limits<double>::denorm_min(),
                               std::numeric_limits<double>::max()});
  for (double v : values) {
    CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
    t.add_row({v});
  }
  const OutputTable back = OutputTable::from_json(t.to_json());
  for (std::size_t i = 0; i < values.size(); ++i) {
    CHECK(std::get<double>(back.rows()[i][0]) == values[i]);
  }
}

TEST_CASE("shape errors") {
  CHECK_THROWS_AS(OutputTable({"a", "a"}), StructureError);
  OutputTable t({"a", "b"});
  CHECK_THROWS_AS(t.add_row({1.0}), StructureError);
  CHECK_THROWS_AS(t.add_row({1.0, std::numeric_limits<double>::infinity()}),
                  StructureError);
  CHECK_THROWS_AS(t.add_row({1.0, std::nan("")}), StructureError);
}

TEST_CASE("formats and files") {
  CHECK(parse_format("csv") == Format::csv);
  CHECK(parse_format("json") == Format::json);
  CHECK(std::string(to_string(Format::svg)) == "svg");
  CHECK_THROWS_AS(parse_format("xml"), ConfigError);
  CHECK_THROWS_AS(render_table(sample_table(), Format::svg), ConfigError);

  const auto a = temp_path("a.csv");
  const auto b = temp_path("b.csv");
  emit_table(sample_table(), Format::csv, a);
  emit_table(sample_table(), Format::csv, b);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a) == sample_table().to_csv());
  emit_table(sample_table(), Format::json, a);
  CHECK(OutputTable::from_json(slurp(a)) == sample_table());
  std::filesystem::remove(a);
  std::filesystem::remove(b);

  CHECK_THROWS_AS(emit_table(sample_table(), Format::csv,
                             "/nonexistent-dir/for/sure/out.csv"),
                  IoError);
}
