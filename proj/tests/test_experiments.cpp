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

#include "nlshare/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "nlshare/errors.hpp"

using namespace nlshare;

namespace {

bool same_records(const SweepRecord& a, const SweepRecord& b) {
  auto same_vec = [](const std::vector<double>& x,
                     const std::vector<double>& y) {
    return x.size() == y.size() &&
           std::equal(x.begin(), x.end(), y.begin(), [](double p, double q) {
             return p == q || (std::isnan(p) && std::isnan(q));
           });
  };
  return a.index1 == b.index1 && a.index2 == b.index2 &&
         a.max_rounds == b.max_rounds && same_vec(a.s_per_round, b.s_per_round) &&
         same_vec(a.excess_per_round, b.excess_per_round) && a.note == b.note;
}

SweepSpec small_noise_sweep(NoiseModel::Kind kind) {
  SweepSpec spec = default_noise_sweep(kind);
  spec.axis1.points = 46;
  spec.axis2->points = 21;
  return spec;
}

}  // namespace

TEST_CASE("axis parsing") {
  const Axis a = parse_axis("theta:0.3:pi/4:181");
  CHECK(a.parameter == SweepParameter::theta);
  CHECK(a.lo == 0.3);
  CHECK(a.hi == kPi / 4);
  CHECK(a.points == 181);
  CHECK(a.value(0) == 0.3);
  CHECK(a.value(180) == kPi / 4);
  CHECK(a.value(90) == doctest::Approx((0.3 + kPi / 4) / 2));
  CHECK(parse_axis("p:0:0.1:1").value(0) == 0.0);
  CHECK(parse_sweep_parameter("alpha1") == SweepParameter::alpha1);
  CHECK(std::string(to_string(SweepParameter::noise_p)) == "p");
  CHECK_THROWS_AS(parse_axis("gamma:0:1:3"), ConfigError);
  CHECK_THROWS_AS(parse_axis("theta:0:1"), ConfigError);
  CHECK_THROWS_AS(parse_axis("theta:0:1:2.5"), ConfigError);
  CHECK_THROWS_AS(parse_axis("theta:0:1:0"), ConfigError);
}

TEST_CASE("sweep spec validation") {
  SweepSpec spec;
  spec.axis1 = {SweepParameter::theta, 0.5, 0.2, 5};
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  spec.axis1 = {SweepParameter::theta, 0.2, 0.5, 5};
  CHECK_NOTHROW(spec.validate());
  spec.axis2 = Axis{SweepParameter::theta, 0.1, 0.2, 3};
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  spec.axis2 = Axis{SweepParameter::delta, 0.1, 0.2, 3};
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  spec.delta_mode = DeltaMode::explicit_value;
  CHECK_NOTHROW(spec.validate());
  spec.axis2 = Axis{SweepParameter::noise_p, 0.0, 0.1, 3};
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  spec.fixed.noise.kind = NoiseModel::Kind::depolarizing;
  CHECK_NOTHROW(spec.validate());
  spec.round_cap = 0;
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  CHECK_THROWS_AS(sweep_max_rounds(spec), ConfigError);
}

TEST_CASE("cell evaluation") {
  SweepSpec spec;
  spec.axis1 = {SweepParameter::theta, std::asin(0.99) / 2, 0.7, 2};
  spec.round_cap = 8;
  const SweepRecord r = evaluate_cell(spec, 0, 0);
  CHECK(r.max_rounds == 3);
  CHECK(r.s_per_round.size() >= 3);
  CHECK(r.excess_per_round.size() == r.s_per_round.size());
  CHECK_FALSE(r.note.empty());  // sequence stops before the cap

  // theta = 0 is outside the model: reported, not thrown.
  spec.axis1 = {SweepParameter::theta, 0.0, 0.7, 2};
  const SweepRecord bad = evaluate_cell(spec, 0, 0);
  CHECK(bad.max_rounds == 0);
  CHECK(bad.s_per_round.empty());
  CHECK_FALSE(bad.note.empty());
}

TEST_CASE("record invariants over the angle sweep") {
  SweepSpec spec = default_angle_sweep();
  spec.axis1.points = 61;
  spec.axis2->points = 61;
  const auto records = sweep_max_rounds(spec, 4);
  CHECK(records.size() == 61u * 61u);
  for (const auto& r : records) {
    REQUIRE(static_cast<int>(r.s_per_round.size()) >= r.max_rounds);
    for (int j = 0; j < r.max_rounds; ++j) {
      // S itself rounds to 2 for margins below 1e-16; the excess keeps the sign.
      CHECK(r.excess_per_round[j] > 0.0);
      CHECK(r.s_per_round[j] >= 2.0);
    }
  }
}

TEST_CASE("cells on the canonical line reach the supported depth") {
  // Grid theta_i = i pi/720, delta_k = k pi/360: 2 theta + delta = pi/2 on
  // i + k = 180. In the last three cells (delta < 0.03) alpha1 = 1e-10 is
  // too coarse for the sixth and seventh rounds; they still reach four.
  const SweepSpec spec = default_angle_sweep();
  for (int i = 1; i < 180; ++i) {
    const SweepRecord r = evaluate_cell(spec, i, 180 - i);
    const double c = std::sin(2 * r.value1);
    const int supported = *max_supported_rounds(c);
    CAPTURE(i);
    CAPTURE(c);
    if (i <= 176) {
      CHECK(r.max_rounds >= std::min(supported, spec.round_cap));
    } else {
      CHECK(r.max_rounds >= 4);
      CHECK(r.max_rounds < supported);
    }
  }
}

TEST_CASE("noise sweeps") {
  for (auto kind :
       {NoiseModel::Kind::depolarizing, NoiseModel::Kind::amplitude_damping}) {
    CAPTURE(to_string(kind));
    const SweepSpec spec = small_noise_sweep(kind);
    const auto records = sweep_max_rounds(spec, 3);
    const int cols = spec.cols();

    SweepSpec clean;
    clean.axis1 = spec.axis1;
    clean.delta_mode = spec.delta_mode;
    const auto reference = sweep_max_rounds(clean);

    for (int i = 0; i < spec.rows(); ++i) {
      const SweepRecord& zero = records[static_cast<std::size_t>(i) * cols];
      CHECK(zero.value2 == 0.0);
      CHECK(zero.max_rounds == reference[i].max_rounds);
      CHECK(zero.s_per_round == reference[i].s_per_round);
      for (int k = 1; k < cols; ++k) {
        CHECK(records[static_cast<std::size_t>(i) * cols + k].max_rounds <=
              records[static_cast<std::size_t>(i) * cols + k - 1].max_rounds);
      }
    }
  }
  CHECK(default_noise_sweep(NoiseModel::Kind::depolarizing).axis2->hi == 0.1);
  CHECK(default_noise_sweep(NoiseModel::Kind::amplitude_damping).axis2->hi ==
        0.3);
  CHECK(default_noise_sweep(NoiseModel::Kind::depolarizing).axis2->points == 51);
  CHECK(default_angle_sweep().axis1.points == 181);
}

TEST_CASE("sweeps are deterministic and order independent") {
  const SweepSpec spec = small_noise_sweep(NoiseModel::Kind::amplitude_damping);
  const auto serial = sweep_max_rounds(spec, 1);
  const auto parallel = sweep_max_rounds(spec, 7);
  REQUIRE(serial.size() == parallel.size());

  std::vector<std::size_t> order(serial.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), std::mt19937_64(12));
  for (std::size_t idx : order) {
    const SweepRecord r =
        evaluate_cell(spec, static_cast<int>(idx / spec.cols()),
                      static_cast<int>(idx % spec.cols()));
    CHECK(same_records(r, serial[idx]));
    CHECK(same_records(parallel[idx], serial[idx]));
  }
  CHECK(sweep_table(spec, serial).to_csv() ==
        sweep_table(spec, parallel).to_csv());
}

TEST_CASE("quarter-pi convention") {
  SweepSpec spec;
  spec.axis1 = {SweepParameter::theta, 0.01, kPi / 8 - 0.01, 30};
  spec.delta_mode = DeltaMode::quarter_pi;
  const auto records = sweep_max_rounds(spec);
  for (const auto& r : records) {
    CHECK(r.note.find("sequence") != std::string::npos);
    CHECK(r.max_rounds == 0);
  }
  spec.axis1 = {SweepParameter::theta, 0.5, 0.6, 2};
  for (const auto& r : sweep_max_rounds(spec)) {
    CHECK(r.note.find("pi/4 convention") != std::string::npos);
  }
}

TEST_CASE("sweep table layout") {
  SweepSpec spec;
  spec.axis1 = {SweepParameter::theta, 0.3, 0.7, 3};
  spec.axis2 = Axis{SweepParameter::epsilon, 1e-10, 1e-2, 2};
  spec.round_cap = 4;
  const OutputTable t = sweep_table(spec, sweep_max_rounds(spec));
  const std::vector<std::string> expected{
      "theta",    "epsilon",  "max_rounds", "S_1",      "S_2",
      "S_3",      "S_4",      "excess_1",   "excess_2", "excess_3",
      "excess_4", "note"};
  CHECK(t.columns() == expected);
  CHECK(t.row_count() == 6);
  CHECK(t.metadata()["round_cap"] == 4);
  CHECK(t.metadata()["convention"] == "pi2");
  CHECK(t.metadata()["axis2"]["name"] == "epsilon");
  // theta = 0.3 supports one round only: later rounds are empty cells.
  CHECK(std::holds_alternative<std::monostate>(t.rows()[0][5]));
}

TEST_CASE("protocol comparison") {
  const double theta = kPi / 4 - 0.01;
  const double omega = kPi / 4 * 1e-7;
  SUBCASE("published setting") {
    const Comparison c = compare_protocols(theta, 1e-2, 1e-10, omega, 5);
    REQUIRE(c.records.size() == 5);
    CHECK(c.note.empty());
    for (const auto& r : c.records) {
      CHECK(r.ppm_violates);
      CHECK(r.unsharp_violates);
      CHECK(r.s_ppm >= r.s_unsharp);
      CHECK(r.excess_ppm >= r.excess_unsharp);
      CHECK(r.ppm_violates == (r.excess_ppm > 0));
      CHECK(r.unsharp_violates == (r.excess_unsharp > 0));
    }
  }
  SUBCASE("no slack saturates round one") {
    const Comparison c = compare_protocols(theta, 0.0, 1e-10, omega, 1);
    REQUIRE(c.records.size() == 1);
    CHECK(std::abs(c.records[0].s_ppm - 2) < 1e-9);
    CHECK(std::abs(c.records[0].s_unsharp - 2) < 1e-9);
  }
  SUBCASE("truncation") {
    const Comparison c = compare_protocols(theta, 1e-2, 1e-10, omega, 12);
    CHECK(c.records.size() < 12);
    CHECK(static_cast<int>(c.records.size()) ==
          std::min(c.ppm_feasible, c.unsharp_feasible));
    CHECK_FALSE(c.note.empty());
    const OutputTable t = comparison_table(c);
    CHECK(t.row_count() == c.records.size());
    CHECK(t.metadata()["note"] == c.note);
  }
}

TEST_CASE("verification report") {
  const VerificationReport r = verify_closed_forms(42, 200);
  CHECK(r.passed);
  REQUIRE(r.rows.size() == 3);
  CHECK(r.rows[0].noise == NoiseModel::Kind::none);
  CHECK(r.rows[1].noise == NoiseModel::Kind::depolarizing);
  CHECK(r.rows[2].noise == NoiseModel::Kind::amplitude_damping);
  for (const auto& row : r.rows) {
    CHECK(row.samples == 200);
    CHECK(row.tensor_samples > 0);
    CHECK(row.max_closed_vs_oracle < 1e-9);
    CHECK(row.max_oracle_vs_tensor < 1e-11);
  }
  const OutputTable t1 = verification_table(r);
  const OutputTable t2 = verification_table(verify_closed_forms(42, 200));
  CHECK(t1.to_csv() == t2.to_csv());
  CHECK(t1.to_csv() != verification_table(verify_closed_forms(43, 200)).to_csv());
  CHECK_THROWS_AS(verify_closed_forms(1, 0), ConfigError);
}

TEST_CASE("trade-off report") {
  const TradeoffReport r = tradeoff_report(2, 6, 2, 5, 1e-10, 1e-8);
  CHECK(r.frontier_ok);
  int boundary = 0;
  for (const auto& row : r.rows) {
    if (!row.on_boundary) continue;
    ++boundary;
    CHECK(row.cell.m + row.cell.j == row.n + row.k - 1);
  }
  CHECK(boundary > 0);

  const TradeoffReport small = tradeoff_report(3, 3, 2, 2, 1e-10, 1e-8);
  const auto cells = tradeoff_frontier(3, 2, 1e-10, 1e-8);
  REQUIRE(small.rows.size() == cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    CHECK(small.rows[i].cell.achievable == cells[i].achievable);
    CHECK(small.rows[i].cell.s == cells[i].s);
  }
  CHECK(tradeoff_table(small).row_count() == 6);
  CHECK_THROWS_AS(tradeoff_report(2, 7, 2, 3, 1e-10, 1e-8), ConfigError);
  CHECK_THROWS_AS(tradeoff_report(2, 3, 1, 3, 1e-10, 1e-8), ConfigError);
}
