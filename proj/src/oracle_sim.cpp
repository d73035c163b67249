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

#include "nlshare/oracle_sim.hpp"

#include <array>
#include <cmath>
#include <string>

#include "nlshare/errors.hpp"

namespace nlshare {
namespace {

constexpr int kMaxExpandedBranches = 3;
constexpr int kMaxTensorBranches = 3;

// op_q * rho * op_q^dagger for a single-qubit op on qubit q of an nq-qubit
// register (qubit 0 most significant).
void sandwich(MatrixXc& rho, const Matrix2c& op, int q, int nq) {
  const Eigen::Index stride = Eigen::Index{1} << (nq - 1 - q);
  const Eigen::Index dim = rho.rows();
  for (Eigen::Index r0 = 0; r0 < dim; ++r0) {
    if (r0 & stride) continue;
    const Eigen::Index r1 = r0 | stride;
    for (Eigen::Index c = 0; c < dim; ++c) {
      const Complex a = rho(r0, c);
      const Complex b = rho(r1, c);
      rho(r0, c) = op(0, 0) * a + op(0, 1) * b;
      rho(r1, c) = op(1, 0) * a + op(1, 1) * b;
    }
  }
  for (Eigen::Index c0 = 0; c0 < dim; ++c0) {
    if (c0 & stride) continue;
    const Eigen::Index c1 = c0 | stride;
    for (Eigen::Index r = 0; r < dim; ++r) {
      const Complex a = rho(r, c0);
      const Complex b = rho(r, c1);
      rho(r, c0) = a * std::conj(op(0, 0)) + b * std::conj(op(0, 1));
      rho(r, c1) = a * std::conj(op(1, 0)) + b * std::conj(op(1, 1));
    }
  }
}

// Lueders update averaged over both outcomes of a +-1 observable.
MatrixXc dephase(const MatrixXc& rho, const Matrix2c& observable, int q,
                 int nq) {
  const Matrix2c id = Matrix2c::Identity();
  MatrixXc plus = rho;
  MatrixXc minus = rho;
  sandwich(plus, (id + observable) / 2.0, q, nq);
  sandwich(minus, (id - observable) / 2.0, q, nq);
  return plus + minus;
}

double trace_product(const MatrixXc& op, const MatrixXc& rho) {
  return (op.array() * rho.transpose().array()).sum().real();
}

void check_network(const ProtocolConfig& config, const AlphaSequence& alphas,
                   int j) {
  if (config.n < 1) throw DomainError("n must be >= 1");
  if (config.m < 1 || config.m > config.n) {
    throw DomainError("m must satisfy 1 <= m <= n");
  }
  if (j < 1 || j > alphas.size()) {
    throw DomainError("round " + std::to_string(j) +
                      " outside sequence of length " +
                      std::to_string(alphas.size()));
  }
}

double abs_root(double x, int n) {
  return std::pow(std::abs(x), 1.0 / n);
}

}  // namespace

Matrix2c pauli(Pauli which) {
  Matrix2c m;
  switch (which) {
    case Pauli::identity: m << 1, 0, 0, 1; break;
    case Pauli::x: m << 0, 1, 1, 0; break;
    case Pauli::y: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case Pauli::z: m << 1, 0, 0, -1; break;
  }
  return m;
}

MatrixXc kron(const MatrixXc& a, const MatrixXc& b) {
  MatrixXc out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      out.block(i * b.rows(), k * b.cols(), b.rows(), b.cols()) = a(i, k) * b;
    }
  }
  return out;
}

BranchDensity::BranchDensity(const Matrix4c& mat) : mat_(mat) {}

double BranchDensity::trace() const { return mat_.trace().real(); }

double BranchDensity::hermiticity_defect() const {
  return (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
}

double BranchDensity::min_eigenvalue() const {
  const Matrix4c herm = (mat_ + mat_.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix4c> solver(herm,
                                                 Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

void BranchDensity::validate() const {
  if (hermiticity_defect() > 1e-12) {
    throw DomainError("branch density is not Hermitian");
  }
  if (std::abs(trace() - 1.0) > 1e-12) {
    throw DomainError("branch density does not have unit trace");
  }
  if (min_eigenvalue() < -1e-10) {
    throw DomainError("branch density is not positive semidefinite");
  }
}

double BranchDensity::expectation(const Matrix4c& op) const {
  return (op * mat_).trace().real();
}

Matrix4c branch_operator(const Matrix2c& bob, const Matrix2c& alice) {
  return kron(bob, alice);
}

Matrix2c bob_observable(int y, double delta) {
  const double sign = y == 0 ? 1.0 : -1.0;
  return sign * std::sin(delta) * pauli(Pauli::z) +
         std::cos(delta) * pauli(Pauli::x);
}

BranchDensity initial_branch_state(double theta, const NoiseModel& noise) {
  if (!(theta >= 0.0 && theta <= kPi / 4)) {
    throw DomainError("theta must lie in [0, pi/4], got " +
                      std::to_string(theta));
  }
  noise.validate();

  Eigen::Vector4cd psi;
  psi << std::cos(theta), 0, 0, std::sin(theta);
  const Matrix4c pure = psi * psi.adjoint();

  switch (noise.kind) {
    case NoiseModel::Kind::none:
      return BranchDensity(pure);
    case NoiseModel::Kind::depolarizing:
      return BranchDensity((1 - noise.p) * pure +
                           noise.p * Matrix4c::Identity() / 4.0);
    case NoiseModel::Kind::amplitude_damping: {
      Matrix2c k1;
      k1 << 0, std::sqrt(noise.p), 0, 0;
      Matrix2c k2;
      k2 << 1, 0, 0, std::sqrt(1 - noise.p);
      const Matrix2c id = Matrix2c::Identity();
      const Matrix4c e1 = branch_operator(id, k1);
      const Matrix4c e2 = branch_operator(id, k2);
      return BranchDensity(e1 * pure * e1.adjoint() +
                           e2 * pure * e2.adjoint());
    }
  }
  return BranchDensity(pure);
}

BranchDensity ppm_channel(const BranchDensity& rho, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw DomainError("alpha must lie in [0, 1]");
  }
  const Matrix2c id = Matrix2c::Identity();
  const Matrix4c xa = branch_operator(id, pauli(Pauli::x));
  const Matrix4c za = branch_operator(id, pauli(Pauli::z));
  const Matrix4c& r = rho.matrix();
  return BranchDensity((3 - alpha) / 4 * r + 0.25 * (xa * r * xa) +
                       alpha / 4 * (za * r * za));
}

MatrixXc expand_averaged_state(std::span<const BranchDensity> branches,
                               double alpha) {
  const int m = static_cast<int>(branches.size());
  if (m < 1) throw DomainError("need at least one branch");
  if (m > kMaxExpandedBranches) {
    throw SizeError("averaged-state expansion is limited to m <= 3, got " +
                    std::to_string(m));
  }

  MatrixXc product = branches[0].matrix();
  for (int i = 1; i < m; ++i) product = kron(product, branches[i].matrix());

  const int nq = 2 * m;
  const Matrix2c x = pauli(Pauli::x);
  const Matrix2c z = pauli(Pauli::z);
  MatrixXc out = MatrixXc::Zero(product.rows(), product.cols());

  // Each chained branch saw sigma_x (0), sigma_z (1) or nothing (2).
  int assignments = 1;
  for (int i = 0; i < m; ++i) assignments *= 3;
  for (int code = 0; code < assignments; ++code) {
    MatrixXc term = product;
    int p = 0;
    int q = 0;
    int rest = code;
    for (int i = 0; i < m; ++i, rest /= 3) {
      switch (rest % 3) {
        case 0: sandwich(term, x, 2 * i + 1, nq); ++p; break;
        case 1: sandwich(term, z, 2 * i + 1, nq); ++q; break;
        default: break;
      }
    }
    const double weight = std::pow(alpha, q) * std::pow(3 - alpha, m - p - q) /
                          std::pow(4.0, m);
    out += weight * term;
  }
  return out;
}

double branch_factor_sim(const BranchDensity& evolved, double delta,
                         double alpha_final, Combination which) {
  const int y = which == Combination::i_sum ? 0 : 1;
  const double sign = which == Combination::i_sum ? 1.0 : -1.0;
  const Matrix2c b = bob_observable(y, delta);
  const double e0 = evolved.expectation(branch_operator(b, pauli(Pauli::x)));
  const double e1 = evolved.expectation(branch_operator(b, pauli(Pauli::z)));
  const double idle =
      evolved.expectation(branch_operator(b, pauli(Pauli::identity)));
  return e0 + sign * (alpha_final * e1 + (1 - alpha_final) * idle);
}

double untouched_factor_sim(const BranchDensity& initial, double delta,
                            Combination which) {
  const int y = which == Combination::i_sum ? 0 : 1;
  const double sign = which == Combination::i_sum ? 1.0 : -1.0;
  const Matrix2c b = bob_observable(y, delta);
  return initial.expectation(branch_operator(b, pauli(Pauli::x))) +
         sign * initial.expectation(branch_operator(b, pauli(Pauli::z)));
}

OracleValue oracle_s(const ProtocolConfig& config, const AlphaSequence& alphas,
                     int j) {
  check_network(config, alphas, j);
  const BranchDensity initial = initial_branch_state(config.theta, config.noise);
  BranchDensity evolved = initial;
  for (int r = 1; r < j; ++r) evolved = ppm_channel(evolved, alphas.alpha(r));

  const double alpha_j = alphas.alpha(j);
  const int rest = config.n - config.m;
  OracleValue out;
  out.i_n = std::pow(branch_factor_sim(evolved, config.delta, alpha_j,
                                       Combination::i_sum),
                     config.m) *
            std::pow(untouched_factor_sim(initial, config.delta,
                                          Combination::i_sum),
                     rest);
  out.j_n = std::pow(branch_factor_sim(evolved, config.delta, alpha_j,
                                       Combination::j_alternating),
                     config.m) *
            std::pow(untouched_factor_sim(initial, config.delta,
                                          Combination::j_alternating),
                     rest);
  out.s = abs_root(out.i_n, config.n) + abs_root(out.j_n, config.n);
  return out;
}

OracleValue full_tensor_s(const ProtocolConfig& config,
                          const AlphaSequence& alphas, int j) {
  check_network(config, alphas, j);
  const int n = config.n;
  if (n > kMaxTensorBranches) {
    throw SizeError("full-tensor evaluation is limited to n <= 3, got " +
                    std::to_string(n));
  }
  const int nq = 2 * n;
  const Matrix2c id = Matrix2c::Identity();
  const Matrix2c x = pauli(Pauli::x);
  const Matrix2c z = pauli(Pauli::z);

  const BranchDensity branch = initial_branch_state(config.theta, config.noise);
  MatrixXc rho = branch.matrix();
  for (int i = 1; i < n; ++i) rho = kron(rho, branch.matrix());

  // Earlier generations on the chained branches: input 0 measures sigma_x,
  // input 1 flips the coin (sigma_z on heads, untouched on tails).
  for (int r = 1; r < j; ++r) {
    const double a = alphas.alpha(r);
    for (int i = 0; i < config.m; ++i) {
      const int q = 2 * i + 1;
      rho = 0.5 * dephase(rho, x, q, nq) +
            0.5 * (a * dephase(rho, z, q, nq) + (1 - a) * rho);
    }
  }

  const double a_final = alphas.alpha(j);
  const Matrix2c coin_z = a_final * z + (1 - a_final) * id;
  std::array<double, 2> correlator{};
  for (int y = 0; y < 2; ++y) {
    const Matrix2c b = bob_observable(y, config.delta);
    double total = 0.0;
    for (unsigned inputs = 0; inputs < (1u << n); ++inputs) {
      MatrixXc op = MatrixXc::Identity(1, 1);
      int ones = 0;
      for (int i = 0; i < n; ++i) {
        const bool x_i = (inputs >> i) & 1u;
        ones += x_i ? 1 : 0;
        const Matrix2c& alice = !x_i ? x : (i < config.m ? coin_z : z);
        op = kron(op, branch_operator(b, alice));
      }
      const double sign = (y == 1 && (ones % 2 == 1)) ? -1.0 : 1.0;
      total += sign * trace_product(op, rho);
    }
    correlator[y] = total;
  }

  OracleValue out;
  out.i_n = correlator[0];
  out.j_n = correlator[1];
  out.s = abs_root(out.i_n, n) + abs_root(out.j_n, n);
  return out;
}

}  // namespace nlshare
