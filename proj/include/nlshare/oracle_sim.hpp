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

#ifndef NLSHARE_ORACLE_SIM_HPP
#define NLSHARE_ORACLE_SIM_HPP

// Brute-force density-matrix reference for the closed forms in core_model.
// Nothing here uses the closed-form expressions: states are evolved by
// explicit channels and Bell values are assembled from operator
// expectations.
//
// A branch is a two-qubit system ordered (Bob, Alice): basis index
// 2*b + a. Alice-side maps act on the second slot.

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "nlshare/core_model.hpp"

namespace nlshare {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using MatrixXc = Eigen::MatrixXcd;

enum class Pauli { identity, x, y, z };

Matrix2c pauli(Pauli which);

/// Kronecker product, left factor most significant.
MatrixXc kron(const MatrixXc& a, const MatrixXc& b);

class BranchDensity {
 public:
  explicit BranchDensity(const Matrix4c& mat);

  const Matrix4c& matrix() const { return mat_; }

  double trace() const;
  double hermiticity_defect() const;
  double min_eigenvalue() const;

  /// Throws DomainError unless Hermitian (1e-12), unit trace (1e-12) and
  /// positive (min eigenvalue >= -1e-10).
  void validate() const;

  /// Re Tr(op * rho).
  double expectation(const Matrix4c& op) const;

 private:
  Matrix4c mat_;
};

/// Branch observable bob (x) alice.
Matrix4c branch_operator(const Matrix2c& bob, const Matrix2c& alice);

/// Bob's per-branch factors b0 = sin d Z + cos d X, b1 = -sin d Z + cos d X.
Matrix2c bob_observable(int y, double delta);

BranchDensity initial_branch_state(double theta, const NoiseModel& noise);

/// Averaged hand-off map of one probabilistic projective measurement on the
/// Alice slot: (3-a)/4 rho + 1/4 X rho X + a/4 Z rho Z.
BranchDensity ppm_channel(const BranchDensity& rho, double alpha);

/// Literal sum over which of m chained branches saw sigma_x, sigma_z or
/// nothing, weighted alpha^q (3-alpha)^{m-p-q} / 4^m, applied to the product
/// of the given branch states. Dimension 4^m, m <= 3.
MatrixXc expand_averaged_state(std::span<const BranchDensity> branches,
                               double alpha);

enum class Combination { i_sum, j_alternating };

/// Final-round factor of a chained branch:
///   I: E(A0 b0) + a E(A1 b0) + (1-a) E(1 b0)
///   J: E(A0 b1) - a E(A1 b1) - (1-a) E(1 b1)
double branch_factor_sim(const BranchDensity& evolved, double delta,
                         double alpha_final, Combination which);

/// Factor of a branch measured once with plain sigma_x / sigma_z.
double untouched_factor_sim(const BranchDensity& initial, double delta,
                            Combination which);

struct OracleValue {
  double s = 0.0;
  double i_n = 0.0;
  double j_n = 0.0;
};

/// Per-branch assembly: one representative chained branch is pushed through
/// j-1 hand-off channels, the network value follows from branch
/// independence. Uses |I|^{1/n} + |J|^{1/n} so it is valid in every regime.
OracleValue oracle_s(const ProtocolConfig& config, const AlphaSequence& alphas,
                     int j);

/// Same quantity on the full 4^n-dimensional network state, n <= 3. Earlier
/// generations act as non-selective instruments (uniform input, coin,
/// Lueders projections) on the global state; the final correlators sum
/// signed operator expectations over all 2^n input strings.
OracleValue full_tensor_s(const ProtocolConfig& config,
                          const AlphaSequence& alphas, int j);

}  // namespace nlshare

#endif  // NLSHARE_ORACLE_SIM_HPP
