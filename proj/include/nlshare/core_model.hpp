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

#ifndef NLSHARE_CORE_MODEL_HPP
#define NLSHARE_CORE_MODEL_HPP

// Closed-form model of sequential nonlocality sharing in an n-branch star
// network. Bob holds one qubit of each branch state
// cos(theta)|00> + sin(theta)|11>; on m of the branches a chain of Alices
// applies probabilistic projective measurements (sigma_x on input 0, a
// coin-gated sigma_z on input 1), the other n - m branches are measured once.
//
// Every Bell value is returned together with its excess over the local bound
// 2, computed without subtracting two nearly equal numbers. The margins that
// certify a violation are routinely ~1e-20, well below double resolution
// around 2, so all violation decisions use the excess.

#include <optional>
#include <span>
#include <vector>

namespace nlshare {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Relative tolerance for deciding that a Bell value exceeds 2.
inline constexpr double kViolationTolerance = 1e-12;
inline constexpr double kDefaultEpsilon = 1e-10;
inline constexpr double kDefaultAlpha1 = 1e-10;

struct NoiseModel {
  enum class Kind { none, depolarizing, amplitude_damping };

  Kind kind = Kind::none;
  double p = 0.0;

  static NoiseModel noiseless() { return {}; }
  static NoiseModel depolarizing(double p);
  static NoiseModel amplitude_damping(double p);

  void validate() const;
  friend bool operator==(const NoiseModel&, const NoiseModel&) = default;
};

const char* to_string(NoiseModel::Kind kind);

struct ProtocolConfig {
  int n = 1;
  int m = 1;
  int k = 1;
  double theta = kPi / 4;
  double delta = kPi / 4;
  double epsilon = kDefaultEpsilon;
  double alpha1 = kDefaultAlpha1;
  NoiseModel noise;

  void validate() const;
};

/// Survival factor P_j = prod_{l<j} (2 - alpha_l)/2 carried together with
/// its complement 1 - P_j, which is tiny for small alphas and cannot be
/// recovered from P_j alone.
struct Coherence {
  double value = 1.0;
  double complement = 0.0;

  static Coherence of(double p) { return {p, 1.0 - p}; }
};

/// Per-round coin biases alpha_1..alpha_K with their survival factors.
/// Built sequences hold alphas strictly inside (0,1); sequences assembled
/// from explicit values accept the closed interval so edge cases can be
/// evaluated.
class AlphaSequence {
 public:
  static AlphaSequence from_alphas(std::vector<double> alphas);

  int size() const { return static_cast<int>(alphas_.size()); }
  /// Last round the construction reached; equals size().
  int feasible_through() const { return size(); }

  // Rounds are 1-based throughout.
  double alpha(int round) const;
  double cumprod(int round) const;
  Coherence coherence(int round) const;

  std::span<const double> alphas() const { return alphas_; }
  std::vector<double> cumprods() const;

  AlphaSequence extended(double alpha) const;

 private:
  explicit AlphaSequence(std::vector<double> alphas);

  std::vector<double> alphas_;
  std::vector<double> log_cumprods_;
};

/// A Bell value with its excess over 2. `scale` is the magnitude of the
/// terms whose sum forms the excess, so `excess > tol * scale` is a
/// resolution-aware version of S > 2.
struct BellExcess {
  double s = 0.0;
  double excess = 0.0;
  double scale = 0.0;

  bool exceeds(double tol = kViolationTolerance) const {
    return excess > tol * scale;
  }
};

struct BellValue {
  BellExcess bell;
  double i_n = 0.0;
  double j_n = 0.0;
  double branch = 0.0;     // T, factor of a branch that carries the chain
  double untouched = 0.0;  // U, factor of a branch measured once
  // False when T or U is not positive; the fractional powers are then not
  // the real branch of the closed form and `bell` holds |I|^{1/n}+|J|^{1/n}.
  bool in_regime = true;

  bool violates(double tol = kViolationTolerance) const {
    return in_regime && bell.exceeds(tol);
  }
};

double concurrence_pure(double theta);

/// C(k) = 2^{1-k} sqrt(4^{k-1} - 1).
double threshold_concurrence(int k);

/// Largest k with c > C(k); nullopt means unbounded (c == 1).
std::optional<int> max_supported_rounds(double c);

double canonical_delta(double theta);

enum class DeltaConvention { half_pi, quarter_pi };

/// delta = pi/2 - 2 theta (half_pi) or pi/4 - 2 theta (quarter_pi).
double convention_delta(double theta, DeltaConvention convention);

struct AlphaBound {
  double value = 0.0;
  bool feasible = false;
  // The coefficient of alpha in the branch factor is not positive, so the
  // closed-form bound is not used and feasibility comes from the endpoints.
  bool degenerate = false;
};

AlphaBound alpha_lower_bound(int j, double theta, double delta, double cumprod,
                             const NoiseModel& noise);
AlphaBound alpha_lower_bound(int j, double theta, double delta,
                             Coherence coherence, const NoiseModel& noise);

AlphaSequence build_alpha_sequence(double theta, double delta, double epsilon,
                                   double alpha1, int k,
                                   const NoiseModel& noise);

double closed_form_branch_factor(int j, double theta, double delta,
                                 double alpha_j, double cumprod,
                                 const NoiseModel& noise);

double untouched_branch_factor(double theta, double delta,
                               const NoiseModel& noise);

BellValue closed_form_s(int n, int m, int j, double theta, double delta,
                        const AlphaSequence& alphas, const NoiseModel& noise);

/// Number of leading rounds (up to j_cap) whose all-branch Bell value
/// exceeds 2 for the constructed alpha sequence.
int max_rounds(double theta, double delta, double epsilon, double alpha1,
               const NoiseModel& noise, int j_cap,
               double tol = kViolationTolerance);

struct FrontierCell {
  int m = 0;
  int j = 0;
  bool achievable = false;
  double s = 0.0;
  double excess = 0.0;
};

/// Evaluates every (m, j) with m <= n, j <= k at the threshold resource
/// C = C(k) and canonical delta. A pair is achievable when rounds 1..j all
/// violate with m chained branches.
std::vector<FrontierCell> tradeoff_frontier(int n, int k, double epsilon,
                                            double alpha1,
                                            double tol = kViolationTolerance);

struct UnsharpSequence {
  std::vector<double> gammas;
  int feasible_through = 0;
};

UnsharpSequence unsharp_gamma_sequence(double theta, double omega,
                                       double epsilon, int k);

BellExcess unsharp_closed_form_s(int j, double theta, double omega,
                                 std::span<const double> gammas);

}  // namespace nlshare

#endif  // NLSHARE_CORE_MODEL_HPP
