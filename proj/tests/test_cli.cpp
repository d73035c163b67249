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

#include "cli_app.hpp"

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlshare::cli::kExitOk;
using nlshare::cli::kExitRuntime;
using nlshare::cli::kExitUsage;
using nlshare::cli::run_cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path tmp(const std::string& name) {
  const fs::path dir(NLSHARE_TEST_TMPDIR);
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<std::string> data_lines(const std::string& csv) {
  std::vector<std::string> lines;
  std::istringstream in(csv);
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) continue;
    if (!header) {
      header = true;
      continue;
    }
    lines.push_back(line);
  }
  return lines;
}

}  // namespace

TEST_CASE("threshold") {
  const Run r = run({"threshold", "--k", "3"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("0.96824583655185426") != std::string::npos);
  CHECK(r.out.find("# command: \"threshold\"") != std::string::npos);

  const Run c = run({"threshold", "--concurrence", "1"});
  REQUIRE(c.code == kExitOk);
  CHECK(c.out.find("unbounded") != std::string::npos);

  CHECK(run({"threshold"}).code == kExitUsage);
  CHECK(run({"threshold", "--k", "2", "--concurrence", "0.5"}).code ==
        kExitUsage);
  CHECK(run({"threshold", "--k", "0"}).code == kExitUsage);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"bogus"}).code == kExitUsage);
  CHECK(run({"threshold", "--k", "2", "--nope"}).code == kExitUsage);
  CHECK(run({"threshold", "--k", "2", "--format", "xml"}).code == kExitUsage);
  CHECK(run({"threshold", "--k", "2", "--format", "svg"}).code == kExitUsage);
  CHECK(run({"sweep", "--format", "svg"}).code == kExitUsage);
  CHECK(run({"sweep", "--both-conventions"}).code == kExitUsage);
  CHECK(run({"sequence", "--theta", "pi/"}).code == kExitUsage);
  CHECK(run({"max-rounds", "--theta", "0.5", "--concurrence", "0.9"}).code ==
        kExitUsage);
  const Run help = run({"--help"});
  CHECK(help.code == kExitOk);
  CHECK(help.out.find("sweep") != std::string::npos);
}

TEST_CASE("sequence and svalue") {
  const Run s = run({"sequence", "--theta", "pi/4", "--delta", "0.2",
                     "--epsilon", "0", "--alpha1", "0.15", "--k", "2",
                     "--format", "json"});
  REQUIRE(s.code == kExitOk);
  const auto doc = nlohmann::json::parse(s.out);
  CHECK(doc["data"]["P"][1].get<double>() == doctest::Approx(0.925));

  const Run v = run({"svalue", "--theta", "pi/4", "--delta", "pi/6", "--n",
                     "3", "--m", "3", "--j", "1", "--alphas", "0.5",
                     "--oracle"});
  REQUIRE(v.code == kExitOk);
  CHECK(v.out.find("S_oracle") != std::string::npos);

  CHECK(run({"svalue", "--theta", "0.5", "--n", "2", "--m", "3"}).code ==
        kExitUsage);
  CHECK(run({"svalue", "--theta", "0.5", "--alphas", "0.5,x"}).code ==
        kExitUsage);
}

TEST_CASE("max-rounds") {
  for (auto [c, expected] : {std::pair{"0.87", "2"}, std::pair{"0.97", "3"},
                             std::pair{"0.99", "3"}}) {
    const Run r = run({"max-rounds", "--concurrence", c, "--format", "json"});
    REQUIRE(r.code == kExitOk);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(std::to_string(doc["data"]["max_rounds"][0].get<int>()) ==
          expected);
  }
}

TEST_CASE("default sweep writes one row per grid cell") {
  const fs::path csv = tmp("angles.csv");
  const Run r = run({"sweep", "--out", csv.string()});
  REQUIRE(r.code == kExitOk);
  const std::string text = slurp(csv);
  CHECK(data_lines(text).size() == 181u * 181u);
  CHECK(text.find("theta,delta,max_rounds,S_1") != std::string::npos);

  const fs::path svg = tmp("angles.svg");
  REQUIRE(run({"sweep", "--format", "svg", "--out", svg.string()}).code ==
          kExitOk);
  const std::string image = slurp(svg);
  CHECK(image.rfind("<?xml", 0) == 0);
  CHECK(image.find("</svg>") != std::string::npos);
}

TEST_CASE("rerunning from output metadata reproduces the file") {
  const fs::path first = tmp("first.csv");
  const fs::path second = tmp("second.csv");
  const fs::path third = tmp("third.json");
  const fs::path fourth = tmp("fourth.json");
  REQUIRE(run({"sweep", "--preset", "depolarizing", "--axis1",
               "theta:0:pi/4:7", "--axis2", "p:0:0.1:3", "--cap", "5",
               "--out", first.string()})
              .code == kExitOk);
  REQUIRE(run({"sweep", "--config", first.string(), "--out", second.string()})
              .code == kExitOk);
  CHECK(slurp(first) == slurp(second));

  REQUIRE(run({"compare", "--k", "4", "--format", "json", "--out",
               third.string()})
              .code == kExitOk);
  REQUIRE(run({"--config", third.string(), "--out", fourth.string()}).code ==
          kExitOk);
  CHECK(slurp(third) == slurp(fourth));
}

TEST_CASE("command line overrides the config file") {
  const fs::path cfg = tmp("cfg.json");
  {
    std::ofstream f(cfg);
    f << R"({"command": "max-rounds", "options": {"concurrence": "0.99", "cap": "2"}})";
  }
  const Run capped = run({"--config", cfg.string(), "--format", "json"});
  REQUIRE(capped.code == kExitOk);
  CHECK(nlohmann::json::parse(capped.out)["data"]["max_rounds"][0] == 2);
  const Run wide =
      run({"--config", cfg.string(), "--cap", "10", "--format", "json"});
  REQUIRE(wide.code == kExitOk);
  CHECK(nlohmann::json::parse(wide.out)["data"]["max_rounds"][0] == 3);

  const fs::path broken = tmp("broken.json");
  {
    std::ofstream f(broken);
    f << "{not json";
  }
  CHECK(run({"--config", broken.string()}).code == kExitUsage);
  CHECK(run({"--config", tmp("missing.json").string()}).code == kExitUsage);
}

TEST_CASE("both conventions") {
  const fs::path stem = tmp("conv.csv");
  REQUIRE(run({"sweep", "--axis1", "theta:0:pi/4:5", "--axis2",
               "epsilon:1e-10:1e-2:2", "--both-conventions", "--out",
               stem.string()})
              .code == kExitOk);
  const std::string pi2 = slurp(tmp("conv_pi2.csv"));
  const std::string pi4 = slurp(tmp("conv_pi4.csv"));
  CHECK(pi2.find("\"pi2\"") != std::string::npos);
  CHECK(pi4.find("\"pi4\"") != std::string::npos);
  CHECK(data_lines(pi2).size() == 10);
  CHECK(data_lines(pi4).size() == 10);
}

TEST_CASE("runtime failures") {
  CHECK(run({"threshold", "--k", "2", "--out", "/nonexistent-dir/x.csv"})
            .code == kExitRuntime);
}

TEST_CASE("verify and tradeoff") {
  const Run v = run({"verify", "--samples", "30"});
  CHECK(v.code == kExitOk);
  CHECK(v.out.find("passed") != std::string::npos);
  const Run t = run({"tradeoff", "--n-max", "4", "--k-max", "3"});
  CHECK(t.code == kExitOk);
  CHECK(run({"tradeoff", "--n-max", "9"}).code == kExitUsage);
}
