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

#include "nlshare/core_model.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "nlshare/errors.hpp"

namespace nlshare {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

void check_theta(double theta) {
  require(theta > 0.0 && theta <= kPi / 4,
          "theta must lie in (0, pi/4], got " + std::to_string(theta));
}

void check_delta(double delta) {
  require(delta > 0.0 && delta < kPi / 2,
          "delta must lie in (0, pi/2), got " + std::to_string(delta));
}

void check_round(int j) {
  require(j >= 1, "round index must be >= 1, got " + std::to_string(j));
}

// Sum of terms that together equal (quantity - 1), and the sum of their
// magnitudes.
struct Excess {
  double value = 0.0;
  double scale = 0.0;
};

// sin(2 theta + delta) - 1 without cancellation.
double alignment_deficit(double theta, double delta) {
  const double h = std::sin((kPi / 2 - 2 * theta - delta) / 2);
  return -2 * h * h;
}

// 1 - sqrt(1 - p)
double root_loss(double p) { return p / (1 + std::sqrt(1 - p)); }

// T(alpha) - 1 = base + slope * alpha at fixed survival factor.
struct AffineExcess {
  Excess base;
  double slope = 0.0;

  Excess at(double alpha) const {
    return {base.value + slope * alpha,
            base.scale + std::abs(slope * alpha)};
  }
};

AffineExcess branch_excess(int j, double theta, double delta, Coherence c,
                           const NoiseModel& noise) {
  const double s2 = std::sin(2 * theta);
  const double c2 = std::cos(2 * theta);
  const double sd = std::sin(delta);
  const double cd = std::cos(delta);
  const double halving = std::ldexp(1.0, 1 - j);
  const double t1 = alignment_deficit(theta, delta);

  switch (noise.kind) {
    case NoiseModel::Kind::none: {
      const double t2 = -cd * s2 * c.complement;
      return {{t1 + t2, std::abs(t1) + std::abs(t2)}, sd * (halving - c2)};
    }
    case NoiseModel::Kind::depolarizing: {
      const double keep = 1 - noise.p;
      const double t2 = -cd * s2 * c.complement;
      return {{keep * (t1 + t2) - noise.p,
               keep * (std::abs(t1) + std::abs(t2)) + noise.p},
              keep * sd * (halving - c2)};
    }
    case NoiseModel::Kind::amplitude_damping: {
      const double sin_t = std::sin(theta);
      const double t2 =
          -cd * s2 * (c.complement + c.value * root_loss(noise.p));
      const double zz = 1 - 2 * noise.p * sin_t * sin_t;
      return {{t1 + t2, std::abs(t1) + std::abs(t2)},
              sd * (zz * halving - c2)};
    }
  }
  return {};
}

Excess untouched_excess(double theta, double delta, const NoiseModel& noise) {
  const double s2 = std::sin(2 * theta);
  const double sd = std::sin(delta);
  const double cd = std::cos(delta);
  const double sin_t = std::sin(theta);
  const double t1 = alignment_deficit(theta, delta);
  // sin(delta) (1 - cos 2theta)
  const double t2 = 2 * sd * sin_t * sin_t;

  switch (noise.kind) {
    case NoiseModel::Kind::none:
      return {t1 + t2, std::abs(t1) + std::abs(t2)};
    case NoiseModel::Kind::depolarizing: {
      const double keep = 1 - noise.p;
      return {keep * (t1 + t2) - noise.p,
              keep * (std::abs(t1) + std::abs(t2)) + noise.p};
    }
    case NoiseModel::Kind::amplitude_damping: {
      const double t3 = -cd * s2 * root_loss(noise.p);
      const double t2d = t2 * (1 - noise.p);
      return {t1 + t2d + t3, std::abs(t1) + std::abs(t2d) + std::abs(t3)};
    }
  }
  return {};
}

bool near_maximal(double theta) { return std::abs(theta - kPi / 4) < 1e-12; }

}  // namespace

NoiseModel NoiseModel::depolarizing(double p) {
  NoiseModel model{Kind::depolarizing, p};
  model.validate();
  return model;
}

NoiseModel NoiseModel::amplitude_damping(double p) {
  NoiseModel model{Kind::amplitude_damping, p};
  model.validate();
  return model;
}

void NoiseModel::validate() const {
  require(p >= 0.0 && p <= 1.0,
          "noise strength must lie in [0, 1], got " + std::to_string(p));
}

const char* to_string(NoiseModel::Kind kind) {
  switch (kind) {
    case NoiseModel::Kind::none: return "none";
    case NoiseModel::Kind::depolarizing: return "depolarizing";
    case NoiseModel::Kind::amplitude_damping: return "damping";
  }
  return "unknown";
}

void ProtocolConfig::validate() const {
  require(n >= 1, "n must be >= 1");
  require(m >= 1 && m <= n, "m must satisfy 1 <= m <= n");
  require(k >= 1, "k must be >= 1");
  check_theta(theta);
  check_delta(delta);
  require(epsilon > 0.0, "epsilon must be > 0");
  require(alpha1 > 0.0 && alpha1 < 1.0, "alpha1 must lie in (0, 1)");
  noise.validate();
}

AlphaSequence::AlphaSequence(std::vector<double> alphas)
    : alphas_(std::move(alphas)) {
  log_cumprods_.reserve(alphas_.size());
  double log_p = 0.0;
  for (double a : alphas_) {
    log_cumprods_.push_back(log_p);
    log_p += std::log1p(-a / 2);
  }
}

AlphaSequence AlphaSequence::from_alphas(std::vector<double> alphas) {
  require(!alphas.empty(), "a sequence needs at least one round");
  for (double a : alphas) {
    require(a >= 0.0 && a <= 1.0,
            "alpha must lie in [0, 1], got " + std::to_string(a));
  }
  return AlphaSequence(std::move(alphas));
}

double AlphaSequence::alpha(int round) const {
  require(round >= 1 && round <= size(),
          "round " + std::to_string(round) + " outside sequence of length " +
              std::to_string(size()));
  return alphas_[round - 1];
}

double AlphaSequence::cumprod(int round) const {
  return coherence(round).value;
}

Coherence AlphaSequence::coherence(int round) const {
  require(round >= 1 && round <= size(),
          "round " + std::to_string(round) + " outside sequence of length " +
              std::to_string(size()));
  const double log_p = log_cumprods_[round - 1];
  return {std::exp(log_p), -std::expm1(log_p)};
}

std::vector<double> AlphaSequence::cumprods() const {
  std::vector<double> out;
  out.reserve(log_cumprods_.size());
  for (double l : log_cumprods_) out.push_back(std::exp(l));
  return out;
}

AlphaSequence AlphaSequence::extended(double alpha) const {
  std::vector<double> next = alphas_;
  next.push_back(alpha);
  return from_alphas(std::move(next));
}

double concurrence_pure(double theta) {
  require(theta >= 0.0 && theta <= kPi / 4,
          "theta must lie in [0, pi/4], got " + std::to_string(theta));
  return std::sin(2 * theta);
}

double threshold_concurrence(int k) {
  require(k >= 1, "k must be >= 1, got " + std::to_string(k));
  // 2^{1-k} sqrt(4^{k-1} - 1) == sqrt(1 - 4^{1-k}); the subtraction is exact.
  return std::sqrt(1.0 - std::ldexp(1.0, 2 - 2 * k));
}

std::optional<int> max_supported_rounds(double c) {
  require(c >= 0.0 && c <= 1.0,
          "concurrence must lie in [0, 1], got " + std::to_string(c));
  if (c == 1.0) return std::nullopt;
  int k = 0;
  while (c > threshold_concurrence(k + 1)) ++k;
  return k;
}

double canonical_delta(double theta) {
  require(theta > 0.0 && theta < kPi / 4,
          "canonical delta needs theta in (0, pi/4), got " +
              std::to_string(theta));
  return kPi / 2 - 2 * theta;
}

double convention_delta(double theta, DeltaConvention convention) {
  if (convention == DeltaConvention::half_pi) return canonical_delta(theta);
  require(theta > 0.0 && theta < kPi / 8,
          "the pi/4 convention needs theta in (0, pi/8), got " +
              std::to_string(theta));
  return kPi / 4 - 2 * theta;
}

AlphaBound alpha_lower_bound(int j, double theta, double delta, double cumprod,
                             const NoiseModel& noise) {
  require(cumprod > 0.0 && cumprod <= 1.0, "P_j must lie in (0, 1]");
  return alpha_lower_bound(j, theta, delta, Coherence::of(cumprod), noise);
}

AlphaBound alpha_lower_bound(int j, double theta, double delta,
                             Coherence coherence, const NoiseModel& noise) {
  check_round(j);
  check_theta(theta);
  check_delta(delta);
  noise.validate();

  const AffineExcess t = branch_excess(j, theta, delta, coherence, noise);
  AlphaBound bound;
  if (t.slope > 0.0) {
    bound.value = -t.base.value / t.slope;
    bound.feasible = t.base.value + t.slope > 0.0;
    return bound;
  }
  // T does not grow with alpha: only alpha -> 0+ can help.
  bound.degenerate = true;
  bound.feasible = t.base.value > 0.0;
  bound.value = bound.feasible ? 0.0 : 1.0;
  return bound;
}

AlphaSequence build_alpha_sequence(double theta, double delta, double epsilon,
                                   double alpha1, int k,
                                   const NoiseModel& noise) {
  check_theta(theta);
  check_delta(delta);
  require(epsilon >= 0.0, "epsilon must be >= 0");
  require(alpha1 > 0.0 && alpha1 < 1.0, "alpha1 must lie in (0, 1)");
  require(k >= 1, "k must be >= 1");
  noise.validate();

  const bool maximal = near_maximal(theta) &&
                       noise.kind == NoiseModel::Kind::none;
  std::vector<double> alphas{alpha1};
  double log_p = 0.0;
  for (int j = 2; j <= k; ++j) {
    log_p += std::log1p(-alphas.back() / 2);
    const Coherence c{std::exp(log_p), -std::expm1(log_p)};

    double required = 0.0;
    if (maximal) {
      // 2^{j-1} (1 - cos(delta) P_j) / sin(delta)
      const double h = std::sin(delta / 2);
      required = std::ldexp(2 * h * h + std::cos(delta) * c.complement, j - 1) /
                 std::sin(delta);
    } else {
      const AlphaBound bound = alpha_lower_bound(j, theta, delta, c, noise);
      if (!bound.feasible) break;
      required = bound.value;
    }
    const double next = required > 0.0 ? (1 + epsilon) * required : alpha1;
    if (next >= 1.0) break;
    alphas.push_back(next);
  }
  return AlphaSequence::from_alphas(std::move(alphas));
}

double closed_form_branch_factor(int j, double theta, double delta,
                                 double alpha_j, double cumprod,
                                 const NoiseModel& noise) {
  check_round(j);
  check_theta(theta);
  check_delta(delta);
  noise.validate();
  const double s2 = std::sin(2 * theta);
  const double c2 = std::cos(2 * theta);
  const double sd = std::sin(delta);
  const double cd = std::cos(delta);
  const double halving = std::ldexp(1.0, 1 - j);

  switch (noise.kind) {
    case NoiseModel::Kind::none:
      return cd * s2 * cumprod + sd * alpha_j * halving +
             sd * c2 * (1 - alpha_j);
    case NoiseModel::Kind::depolarizing:
      return (1 - noise.p) * (cd * s2 * cumprod + sd * alpha_j * halving +
                              sd * c2 * (1 - alpha_j));
    case NoiseModel::Kind::amplitude_damping: {
      const double sin_t = std::sin(theta);
      return std::sqrt(1 - noise.p) * cd * s2 * cumprod +
             (1 - 2 * noise.p * sin_t * sin_t) * sd * alpha_j * halving +
             sd * c2 * (1 - alpha_j);
    }
  }
  return 0.0;
}

double untouched_branch_factor(double theta, double delta,
                               const NoiseModel& noise) {
  check_theta(theta);
  check_delta(delta);
  noise.validate();
  const double s2 = std::sin(2 * theta);
  const double sd = std::sin(delta);
  const double cd = std::cos(delta);

  switch (noise.kind) {
    case NoiseModel::Kind::none:
      return cd * s2 + sd;
    case NoiseModel::Kind::depolarizing:
      return (1 - noise.p) * (cd * s2 + sd);
    case NoiseModel::Kind::amplitude_damping: {
      const double sin_t = std::sin(theta);
      return std::sqrt(1 - noise.p) * cd * s2 +
             (1 - 2 * noise.p * sin_t * sin_t) * sd;
    }
  }
  return 0.0;
}

BellValue closed_form_s(int n, int m, int j, double theta, double delta,
                        const AlphaSequence& alphas, const NoiseModel& noise) {
  require(n >= 1, "n must be >= 1");
  require(m >= 1 && m <= n, "m must satisfy 1 <= m <= n");
  require(j >= 1 && j <= alphas.size(),
          "round " + std::to_string(j) + " outside sequence of length " +
              std::to_string(alphas.size()));

  const double alpha_j = alphas.alpha(j);
  const Coherence c = alphas.coherence(j);
  BellValue out;
  out.branch =
      closed_form_branch_factor(j, theta, delta, alpha_j, c.value, noise);
  out.untouched = untouched_branch_factor(theta, delta, noise);

  const int rest = n - m;
  const bool untouched_ok = rest == 0 || out.untouched > 0.0;
  if (!(out.branch > 0.0) || !untouched_ok) {
    out.in_regime = false;
    const double i_n = std::pow(out.branch, m) * std::pow(out.untouched, rest);
    out.i_n = out.j_n = i_n;
    out.bell.s = 2 * std::pow(std::abs(i_n), 1.0 / n);
    out.bell.excess = out.bell.s - 2;
    out.bell.scale = 2;
    return out;
  }

  const Excess t = branch_excess(j, theta, delta, c, noise).at(alpha_j);
  const double wt = static_cast<double>(m) / n;
  double log_ratio = wt * std::log1p(t.value);
  double slope = wt * t.scale / out.branch;
  if (rest > 0) {
    const Excess u = untouched_excess(theta, delta, noise);
    const double wu = static_cast<double>(rest) / n;
    log_ratio += wu * std::log1p(u.value);
    slope += wu * u.scale / out.untouched;
  }
  out.bell.excess = 2 * std::expm1(log_ratio);
  out.bell.s = 2 + out.bell.excess;
  out.bell.scale = 2 * std::exp(log_ratio) * slope;
  out.i_n = out.j_n = std::exp(n * log_ratio);
  return out;
}

int max_rounds(double theta, double delta, double epsilon, double alpha1,
               const NoiseModel& noise, int j_cap, double tol) {
  require(j_cap >= 1, "round cap must be >= 1");
  const AlphaSequence seq =
      build_alpha_sequence(theta, delta, epsilon, alpha1, j_cap, noise);
  int rounds = 0;
  for (int j = 1; j <= seq.size(); ++j) {
    if (!closed_form_s(1, 1, j, theta, delta, seq, noise).violates(tol)) break;
    ++rounds;
  }
  return rounds;
}

std::vector<FrontierCell> tradeoff_frontier(int n, int k, double epsilon,
                                            double alpha1, double tol) {
  require(n >= 2, "trade-off frontier needs n >= 2");
  require(k >= 2, "trade-off frontier needs k >= 2");
  const double theta = std::asin(threshold_concurrence(k)) / 2;
  const double delta = canonical_delta(theta);
  const NoiseModel noise;

  AlphaSequence seq =
      build_alpha_sequence(theta, delta, epsilon, alpha1, k, noise);
  // At the threshold the last round's branch factor no longer depends on
  // alpha, so rounds the construction stops short of reuse alpha1.
  while (seq.size() < k) seq = seq.extended(alpha1);

  std::vector<FrontierCell> cells;
  cells.reserve(static_cast<std::size_t>(n) * k);
  for (int m = 1; m <= n; ++m) {
    bool all_so_far = true;
    for (int j = 1; j <= k; ++j) {
      const BellValue v = closed_form_s(n, m, j, theta, delta, seq, noise);
      all_so_far = all_so_far && v.violates(tol);
      cells.push_back({m, j, all_so_far, v.bell.s, v.bell.excess});
    }
  }
  return cells;
}

UnsharpSequence unsharp_gamma_sequence(double theta, double omega,
                                       double epsilon, int k) {
  check_theta(theta);
  require(omega > 0.0 && omega < kPi / 2, "omega must lie in (0, pi/2)");
  require(epsilon >= 0.0, "epsilon must be >= 0");
  require(k >= 1, "k must be >= 1");

  const double denom = std::sqrt(std::sin(2 * theta)) * std::sin(omega);
  const double h = std::sin(omega / 2);
  const double one_minus_cos = 2 * h * h;

  UnsharpSequence out;
  double log_q = 0.0;  // log prod_l (1 + sqrt(1 - g_l^2)) / 2
  for (int j = 1; j <= k; ++j) {
    // 2^{j-1} - cos(omega) prod_{l<j} (1 + sqrt(1 - g_l^2))
    const double gap =
        std::ldexp(one_minus_cos + std::cos(omega) * -std::expm1(log_q), j - 1);
    const double gamma = (1 + epsilon) * gap / denom;
    if (!(gamma > 0.0) || gamma > 1.0) break;
    out.gammas.push_back(gamma);
    const double loss = gamma * gamma / (2 * (1 + std::sqrt(1 - gamma * gamma)));
    log_q += std::log1p(-loss);
  }
  out.feasible_through = static_cast<int>(out.gammas.size());
  return out;
}

BellExcess unsharp_closed_form_s(int j, double theta, double omega,
                                 std::span<const double> gammas) {
  check_round(j);
  check_theta(theta);
  require(omega > 0.0 && omega < kPi / 2, "omega must lie in (0, pi/2)");
  require(static_cast<std::size_t>(j) <= gammas.size(),
          "round " + std::to_string(j) + " beyond the sharpness sequence");
  for (double g : gammas) {
    require(g >= 0.0 && g <= 1.0, "sharpness must lie in [0, 1]");
  }

  double log_q = 0.0;
  for (int l = 0; l < j - 1; ++l) {
    const double g = gammas[l];
    log_q += std::log1p(-g * g / (2 * (1 + std::sqrt(1 - g * g))));
  }
  const double h = std::sin(omega / 2);
  const double gap = std::ldexp(2 * h * h + std::cos(omega) * -std::expm1(log_q),
                                j - 1);
  const double signal =
      gammas[j - 1] * std::sqrt(std::sin(2 * theta)) * std::sin(omega);
  const double weight = std::ldexp(1.0, 2 - j);

  BellExcess out;
  out.excess = weight * (signal - gap);
  out.s = 2 + out.excess;
  out.scale = weight * (std::abs(signal) + std::abs(gap));
  return out;
}

}  // namespace nlshare
