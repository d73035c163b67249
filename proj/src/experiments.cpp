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
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <thread>

#include "nlshare/angle.hpp"
#include "nlshare/errors.hpp"
#include "nlshare/oracle_sim.hpp"

namespace nlshare {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

nlohmann::ordered_json axis_json(const Axis& axis) {
  return {{"name", to_string(axis.parameter)},
          {"lo", axis.lo},
          {"hi", axis.hi},
          {"points", axis.points}};
}

const char* to_string(DeltaMode mode) {
  switch (mode) {
    case DeltaMode::half_pi: return "pi2";
    case DeltaMode::quarter_pi: return "pi4";
    case DeltaMode::explicit_value: return "explicit";
  }
  return "unknown";
}

void apply(SweepParameter parameter, double value, double& theta,
           double& delta, ProtocolConfig& cfg) {
  switch (parameter) {
    case SweepParameter::theta: theta = value; break;
    case SweepParameter::delta: delta = value; break;
    case SweepParameter::noise_p: cfg.noise.p = value; break;
    case SweepParameter::epsilon: cfg.epsilon = value; break;
    case SweepParameter::alpha1: cfg.alpha1 = value; break;
  }
}

// Uniform double in [0, 1) from the top 53 bits.
double uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Open interval (lo, hi); the zero draw is rejected.
double open_uniform(std::mt19937_64& rng, double lo, double hi) {
  double u = 0.0;
  while (u == 0.0) u = uniform(rng);
  return lo + (hi - lo) * u;
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(uniform(rng) * (hi - lo + 1));
}

}  // namespace

SweepParameter parse_sweep_parameter(std::string_view name) {
  if (name == "theta") return SweepParameter::theta;
  if (name == "delta") return SweepParameter::delta;
  if (name == "p") return SweepParameter::noise_p;
  if (name == "epsilon") return SweepParameter::epsilon;
  if (name == "alpha1") return SweepParameter::alpha1;
  throw ConfigError("unknown sweep parameter '" + std::string(name) +
                    "' (expected theta, delta, p, epsilon or alpha1)");
}

const char* to_string(SweepParameter parameter) {
  switch (parameter) {
    case SweepParameter::theta: return "theta";
    case SweepParameter::delta: return "delta";
    case SweepParameter::noise_p: return "p";
    case SweepParameter::epsilon: return "epsilon";
    case SweepParameter::alpha1: return "alpha1";
  }
  return "unknown";
}

double Axis::value(int index) const {
  if (points <= 1) return lo;
  if (index == points - 1) return hi;
  return lo + (hi - lo) * index / (points - 1);
}

Axis parse_axis(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = text.find(':', start);
    parts.push_back(text.substr(start, colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 4) {
    throw ConfigError("axis must look like name:lo:hi:points, got '" +
                      std::string(text) + "'");
  }
  Axis axis;
  axis.parameter = parse_sweep_parameter(parts[0]);
  axis.lo = parse_angle(parts[1]);
  axis.hi = parse_angle(parts[2]);
  const double points = parse_angle(parts[3]);
  if (!(points >= 1) || points != std::floor(points) || points > 1e6) {
    throw ConfigError("axis point count must be a positive integer, got '" +
                      std::string(parts[3]) + "'");
  }
  axis.points = static_cast<int>(points);
  return axis;
}

void SweepSpec::validate() const {
  auto check = [](const Axis& a) {
    if (a.points < 1) throw ConfigError("axis needs at least one point");
    if (!std::isfinite(a.lo) || !std::isfinite(a.hi)) {
      throw ConfigError("axis bounds must be finite");
    }
    if (a.points > 1 && !(a.hi > a.lo)) {
      throw ConfigError(std::string("axis ") + to_string(a.parameter) +
                        " has an empty range");
    }
  };
  check(axis1);
  if (axis2) {
    check(*axis2);
    if (axis2->parameter == axis1.parameter) {
      throw ConfigError("sweep axes must name distinct parameters");
    }
  }
  const auto uses = [&](SweepParameter p) {
    return axis1.parameter == p || (axis2 && axis2->parameter == p);
  };
  if (uses(SweepParameter::delta) && delta_mode != DeltaMode::explicit_value) {
    throw ConfigError(
        "a delta axis needs an explicit delta; drop the canonical convention");
  }
  if (uses(SweepParameter::noise_p) &&
      fixed.noise.kind == NoiseModel::Kind::none) {
    throw ConfigError("a p axis needs a noise model");
  }
  if (round_cap < 1) throw ConfigError("round cap must be >= 1");
  if (!(tolerance >= 0.0)) throw ConfigError("tolerance must be >= 0");
}

SweepRecord evaluate_cell(const SweepSpec& spec, int index1, int index2) {
  SweepRecord rec;
  rec.index1 = index1;
  rec.index2 = index2;
  rec.value1 = spec.axis1.value(index1);
  rec.value2 = spec.axis2 ? spec.axis2->value(index2) : kNaN;

  ProtocolConfig cfg = spec.fixed;
  double theta = cfg.theta;
  double delta = cfg.delta;
  apply(spec.axis1.parameter, rec.value1, theta, delta, cfg);
  if (spec.axis2) apply(spec.axis2->parameter, rec.value2, theta, delta, cfg);

  try {
    if (spec.delta_mode == DeltaMode::half_pi) {
      delta = convention_delta(theta, DeltaConvention::half_pi);
    } else if (spec.delta_mode == DeltaMode::quarter_pi) {
      delta = convention_delta(theta, DeltaConvention::quarter_pi);
    }
    const AlphaSequence seq = build_alpha_sequence(
        theta, delta, cfg.epsilon, cfg.alpha1, spec.round_cap, cfg.noise);
    bool leading = true;
    for (int j = 1; j <= seq.size(); ++j) {
      const BellValue v = closed_form_s(1, 1, j, theta, delta, seq, cfg.noise);
      rec.s_per_round.push_back(v.bell.s);
      rec.excess_per_round.push_back(v.bell.excess);
      leading = leading && v.violates(spec.tolerance);
      if (leading) ++rec.max_rounds;
    }
    if (seq.size() < spec.round_cap) {
      rec.note = "sequence stops after round " + std::to_string(seq.size());
    }
  } catch (const DomainError& e) {
    rec.max_rounds = 0;
    rec.s_per_round.clear();
    rec.excess_per_round.clear();
    rec.note = e.what();
  }
  return rec;
}

std::vector<SweepRecord> sweep_max_rounds(const SweepSpec& spec, int threads) {
  spec.validate();
  const int cols = spec.cols();
  const std::size_t total = static_cast<std::size_t>(spec.rows()) * cols;
  std::vector<SweepRecord> out(total);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      out[i] = evaluate_cell(spec, static_cast<int>(i / cols),
                             static_cast<int>(i % cols));
    }
  };
  const int n_threads =
      std::clamp(threads, 1, static_cast<int>(std::max<std::size_t>(total, 1)));
  if (n_threads == 1) {
    worker();
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return out;
}

OutputTable sweep_table(const SweepSpec& spec,
                        const std::vector<SweepRecord>& records) {
  std::vector<std::string> columns{to_string(spec.axis1.parameter)};
  if (spec.axis2) columns.emplace_back(to_string(spec.axis2->parameter));
  columns.emplace_back("max_rounds");
  for (int j = 1; j <= spec.round_cap; ++j) {
    columns.push_back("S_" + std::to_string(j));
  }
  for (int j = 1; j <= spec.round_cap; ++j) {
    columns.push_back("excess_" + std::to_string(j));
  }
  columns.emplace_back("note");

  OutputTable table(std::move(columns));
  auto& meta = table.metadata();
  meta["tool"] = "nlshare";
  meta["version"] = NLSHARE_VERSION_STRING;
  meta["generator"] = "sweep";
  meta["axis1"] = axis_json(spec.axis1);
  if (spec.axis2) meta["axis2"] = axis_json(*spec.axis2);
  meta["convention"] = to_string(spec.delta_mode);
  if (spec.delta_mode == DeltaMode::explicit_value) {
    meta["delta"] = spec.fixed.delta;
  }
  meta["theta"] = spec.fixed.theta;
  meta["epsilon"] = spec.fixed.epsilon;
  meta["alpha1"] = spec.fixed.alpha1;
  meta["noise"] = to_string(spec.fixed.noise.kind);
  meta["p"] = spec.fixed.noise.p;
  meta["round_cap"] = spec.round_cap;
  meta["tolerance"] = spec.tolerance;

  for (const SweepRecord& rec : records) {
    std::vector<Cell> row{rec.value1};
    if (spec.axis2) row.emplace_back(rec.value2);
    row.emplace_back(static_cast<std::int64_t>(rec.max_rounds));
    for (int j = 0; j < spec.round_cap; ++j) {
      if (j < static_cast<int>(rec.s_per_round.size())) {
        row.emplace_back(rec.s_per_round[j]);
      } else {
        row.emplace_back(std::monostate{});
      }
    }
    for (int j = 0; j < spec.round_cap; ++j) {
      if (j < static_cast<int>(rec.excess_per_round.size())) {
        row.emplace_back(rec.excess_per_round[j]);
      } else {
        row.emplace_back(std::monostate{});
      }
    }
    row.emplace_back(rec.note);
    table.add_row(std::move(row));
  }
  return table;
}

SweepSpec default_angle_sweep() {
  SweepSpec spec;
  spec.axis1 = {SweepParameter::theta, 0.0, kPi / 4, 181};
  spec.axis2 = Axis{SweepParameter::delta, 0.0, kPi / 2, 181};
  spec.delta_mode = DeltaMode::explicit_value;
  return spec;
}

SweepSpec default_noise_sweep(NoiseModel::Kind kind) {
  SweepSpec spec;
  const double p_hi = kind == NoiseModel::Kind::amplitude_damping ? 0.3 : 0.1;
  spec.axis1 = {SweepParameter::theta, 0.0, kPi / 4, 181};
  spec.axis2 = Axis{SweepParameter::noise_p, 0.0, p_hi, 51};
  spec.fixed.noise.kind = kind;
  spec.delta_mode = DeltaMode::half_pi;
  return spec;
}

Comparison compare_protocols(double theta, double epsilon, double alpha1,
                             double omega, int k, double tol) {
  if (k < 1) throw DomainError("k must be >= 1");
  const double delta = canonical_delta(theta);
  const NoiseModel noise;
  const AlphaSequence seq =
      build_alpha_sequence(theta, delta, epsilon, alpha1, k, noise);
  const UnsharpSequence unsharp =
      unsharp_gamma_sequence(theta, omega, epsilon, k);

  Comparison out;
  out.ppm_feasible = seq.size();
  out.unsharp_feasible = unsharp.feasible_through;
  const int rounds = std::min(out.ppm_feasible, out.unsharp_feasible);
  for (int j = 1; j <= rounds; ++j) {
    const BellValue ppm = closed_form_s(1, 1, j, theta, delta, seq, noise);
    const BellExcess uns =
        unsharp_closed_form_s(j, theta, omega, unsharp.gammas);
    out.records.push_back({j, ppm.bell.s, uns.s, ppm.bell.excess, uns.excess,
                           ppm.violates(tol), uns.exceeds(tol)});
  }
  if (rounds < k) {
    out.note = "truncated at round " + std::to_string(rounds) +
               ": ppm reaches " + std::to_string(out.ppm_feasible) +
               ", unsharp reaches " + std::to_string(out.unsharp_feasible);
  }
  return out;
}

OutputTable comparison_table(const Comparison& comparison) {
  OutputTable table({"j", "S_ppm", "S_unsharp", "excess_ppm",
                     "excess_unsharp", "ppm_violates", "unsharp_violates"});
  auto& meta = table.metadata();
  meta["tool"] = "nlshare";
  meta["version"] = NLSHARE_VERSION_STRING;
  meta["generator"] = "compare";
  meta["ppm_feasible"] = comparison.ppm_feasible;
  meta["unsharp_feasible"] = comparison.unsharp_feasible;
  meta["note"] = comparison.note;
  for (const ComparisonRecord& r : comparison.records) {
    table.add_row({static_cast<std::int64_t>(r.j), r.s_ppm, r.s_unsharp,
                   r.excess_ppm, r.excess_unsharp, r.ppm_violates,
                   r.unsharp_violates});
  }
  return table;
}

VerificationReport verify_closed_forms(std::uint64_t seed, int samples) {
  if (samples < 1) throw ConfigError("verification needs samples >= 1");
  VerificationReport report;
  report.seed = seed;
  report.samples = samples;
  std::mt19937_64 rng(seed);

  for (auto kind : {NoiseModel::Kind::none, NoiseModel::Kind::depolarizing,
                    NoiseModel::Kind::amplitude_damping}) {
    VerificationRow row;
    row.noise = kind;
    row.samples = samples;
    for (int s = 0; s < samples; ++s) {
      ProtocolConfig cfg;
      cfg.n = uniform_int(rng, 1, 5);
      cfg.m = uniform_int(rng, 1, cfg.n);
      const int j = uniform_int(rng, 1, 5);
      cfg.k = j;
      // Half-open on the right so pi/4 itself can be drawn.
      cfg.theta = kPi / 4 - (kPi / 4 - 0.05) * uniform(rng);
      cfg.delta = open_uniform(rng, 0.05, kPi / 2 - 0.05);
      std::vector<double> alphas(j);
      for (double& a : alphas) a = open_uniform(rng, 0.0, 1.0);
      const double p = kind == NoiseModel::Kind::none ? 0.0 : 0.3 * uniform(rng);
      cfg.noise = {kind, p};
      cfg.alpha1 = alphas.front();
      const AlphaSequence seq = AlphaSequence::from_alphas(alphas);

      const BellValue closed =
          closed_form_s(cfg.n, cfg.m, j, cfg.theta, cfg.delta, seq, cfg.noise);
      const OracleValue oracle = oracle_s(cfg, seq, j);
      if (closed.in_regime) ++row.in_regime;
      row.max_closed_vs_oracle = std::max(row.max_closed_vs_oracle,
                                          std::abs(closed.bell.s - oracle.s));
      if (cfg.n <= 3) {
        const OracleValue tensor = full_tensor_s(cfg, seq, j);
        ++row.tensor_samples;
        row.max_oracle_vs_tensor =
            std::max(row.max_oracle_vs_tensor, std::abs(oracle.s - tensor.s));
      }
    }
    row.passed = row.max_closed_vs_oracle < report.closed_tolerance &&
                 row.max_oracle_vs_tensor < report.tensor_tolerance;
    report.rows.push_back(row);
  }
  report.passed = std::all_of(report.rows.begin(), report.rows.end(),
                              [](const VerificationRow& r) { return r.passed; });
  return report;
}

OutputTable verification_table(const VerificationReport& report) {
  OutputTable table({"noise", "samples", "in_regime", "max_closed_vs_oracle",
                     "tensor_samples", "max_oracle_vs_tensor", "passed"});
  auto& meta = table.metadata();
  meta["tool"] = "nlshare";
  meta["version"] = NLSHARE_VERSION_STRING;
  meta["generator"] = "verify";
  meta["seed"] = report.seed;
  meta["samples"] = report.samples;
  meta["closed_tolerance"] = report.closed_tolerance;
  meta["tensor_tolerance"] = report.tensor_tolerance;
  meta["passed"] = report.passed;
  for (const VerificationRow& r : report.rows) {
    table.add_row({std::string(to_string(r.noise)),
                   static_cast<std::int64_t>(r.samples),
                   static_cast<std::int64_t>(r.in_regime),
                   r.max_closed_vs_oracle,
                   static_cast<std::int64_t>(r.tensor_samples),
                   r.max_oracle_vs_tensor, r.passed});
  }
  return table;
}

TradeoffReport tradeoff_report(int n_lo, int n_hi, int k_lo, int k_hi,
                               double epsilon, double alpha1, double tol) {
  if (n_lo < 2 || n_hi > 6 || n_lo > n_hi) {
    throw ConfigError("n range must satisfy 2 <= n_lo <= n_hi <= 6");
  }
  if (k_lo < 2 || k_hi > 5 || k_lo > k_hi) {
    throw ConfigError("k range must satisfy 2 <= k_lo <= k_hi <= 5");
  }
  TradeoffReport report;
  report.frontier_ok = true;
  for (int n = n_lo; n <= n_hi; ++n) {
    for (int k = k_lo; k <= k_hi; ++k) {
      const std::vector<FrontierCell> cells =
          tradeoff_frontier(n, k, epsilon, alpha1, tol);
      auto at = [&](int m, int j) -> const FrontierCell& {
        return cells[static_cast<std::size_t>(m - 1) * k + (j - 1)];
      };
      for (const FrontierCell& c : cells) {
        const bool up_blocked = c.m < n && !at(c.m + 1, c.j).achievable;
        const bool right_blocked = c.j < k && !at(c.m, c.j + 1).achievable;
        TradeoffRow row{n, k, c, c.achievable && (up_blocked || right_blocked)};
        if (row.on_boundary && c.m + c.j != n + k - 1) {
          report.frontier_ok = false;
        }
        report.rows.push_back(row);
      }
      if (at(n, k).achievable || !at(n, k - 1).achievable ||
          !at(n - 1, k).achievable) {
        report.frontier_ok = false;
      }
    }
  }
  return report;
}

OutputTable tradeoff_table(const TradeoffReport& report) {
  OutputTable table(
      {"n", "k", "m", "j", "achievable", "on_boundary", "S", "excess"});
  auto& meta = table.metadata();
  meta["tool"] = "nlshare";
  meta["version"] = NLSHARE_VERSION_STRING;
  meta["generator"] = "tradeoff";
  meta["frontier_ok"] = report.frontier_ok;
  for (const TradeoffRow& r : report.rows) {
    table.add_row({static_cast<std::int64_t>(r.n),
                   static_cast<std::int64_t>(r.k),
                   static_cast<std::int64_t>(r.cell.m),
                   static_cast<std::int64_t>(r.cell.j), r.cell.achievable,
                   r.on_boundary, r.cell.s, r.cell.excess});
  }
  return table;
}

}  // namespace nlshare
