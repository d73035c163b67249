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

#ifndef NLSHARE_EXPERIMENTS_HPP
#define NLSHARE_EXPERIMENTS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nlshare/core_model.hpp"
#include "nlshare/output_table.hpp"

namespace nlshare {

enum class SweepParameter { theta, delta, noise_p, epsilon, alpha1 };

SweepParameter parse_sweep_parameter(std::string_view name);
const char* to_string(SweepParameter parameter);

struct Axis {
  SweepParameter parameter = SweepParameter::theta;
  double lo = 0.0;
  double hi = 0.0;
  int points = 1;

  /// Evenly spaced, both ends included; a single point sits at lo.
  double value(int index) const;
};

/// Parses "name:lo:hi:points", e.g. "theta:0.3:pi/4:181".
Axis parse_axis(std::string_view text);

enum class DeltaMode { half_pi, quarter_pi, explicit_value };

struct SweepSpec {
  Axis axis1;
  std::optional<Axis> axis2;
  ProtocolConfig fixed;  // n, m and k are unused
  DeltaMode delta_mode = DeltaMode::half_pi;
  int round_cap = 8;
  double tolerance = kViolationTolerance;

  /// Throws ConfigError for empty ranges, repeated axes, a delta axis with a
  /// canonical convention, or a noise axis without a noise model.
  void validate() const;
  int rows() const { return axis1.points; }
  int cols() const { return axis2 ? axis2->points : 1; }
};

struct SweepRecord {
  int index1 = 0;
  int index2 = 0;
  double value1 = 0.0;
  double value2 = 0.0;
  int max_rounds = 0;
  // One entry per constructed round; rounds past the construction are absent.
  std::vector<double> s_per_round;
  std::vector<double> excess_per_round;
  std::string note;
};

SweepRecord evaluate_cell(const SweepSpec& spec, int index1, int index2);

/// Row-major over (axis1, axis2). Cells are independent; `threads` > 1
/// splits them across worker threads without changing the result.
std::vector<SweepRecord> sweep_max_rounds(const SweepSpec& spec,
                                          int threads = 1);

OutputTable sweep_table(const SweepSpec& spec,
                        const std::vector<SweepRecord>& records);

SweepSpec default_angle_sweep();
SweepSpec default_noise_sweep(NoiseModel::Kind kind);

struct ComparisonRecord {
  int j = 0;
  double s_ppm = 0.0;
  double s_unsharp = 0.0;
  double excess_ppm = 0.0;
  double excess_unsharp = 0.0;
  bool ppm_violates = false;
  bool unsharp_violates = false;
};

struct Comparison {
  std::vector<ComparisonRecord> records;
  int ppm_feasible = 0;
  int unsharp_feasible = 0;
  std::string note;
};

/// Per-round Bell values of the probabilistic projective protocol
/// (canonical delta) and the unsharp protocol at Bob angle omega, truncated
/// to the rounds both constructions reach.
Comparison compare_protocols(double theta, double epsilon, double alpha1,
                             double omega, int k,
                             double tol = kViolationTolerance);

OutputTable comparison_table(const Comparison& comparison);

struct VerificationRow {
  NoiseModel::Kind noise = NoiseModel::Kind::none;
  int samples = 0;
  int in_regime = 0;
  double max_closed_vs_oracle = 0.0;
  int tensor_samples = 0;
  double max_oracle_vs_tensor = 0.0;
  bool passed = false;
};

struct VerificationReport {
  std::uint64_t seed = 0;
  int samples = 0;
  double closed_tolerance = 1e-9;
  double tensor_tolerance = 1e-11;
  std::vector<VerificationRow> rows;
  bool passed = false;
};

VerificationReport verify_closed_forms(std::uint64_t seed, int samples);
OutputTable verification_table(const VerificationReport& report);

struct TradeoffRow {
  int n = 0;
  int k = 0;
  FrontierCell cell;
  bool on_boundary = false;
};

struct TradeoffReport {
  std::vector<TradeoffRow> rows;
  // Every boundary pair satisfies m + j = n + k - 1 and (n, k) is not
  // achievable, for every (n, k) in range.
  bool frontier_ok = false;
};

TradeoffReport tradeoff_report(int n_lo, int n_hi, int k_lo, int k_hi,
                               double epsilon, double alpha1,
                               double tol = kViolationTolerance);
OutputTable tradeoff_table(const TradeoffReport& report);

}  // namespace nlshare

#endif  // NLSHARE_EXPERIMENTS_HPP
