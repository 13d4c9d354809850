// Copyright 2026 The MQNC Toolkit Authors
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

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "mqnc/graph_state.hpp"
#include "mqnc/pauli.hpp"

namespace mqnc {

using cplx = std::complex<double>;
using Ket = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using Mat2 = Eigen::Matrix2cd;

inline constexpr std::size_t kMaxVectorQubits = 20;
inline constexpr std::size_t kMaxDensityQubits = 14;

namespace gates {
Mat2 identity();
Mat2 pauli_x();
Mat2 pauli_y();
Mat2 pauli_z();
Mat2 hadamard();
/// exp(-i pi/4 X), the centre factor of the local-complementation unitary.
Mat2 sqrt_x_lc();
/// exp(+i pi/4 Z), the neighbour factor of the local-complementation unitary.
Mat2 sqrt_z_lc();
/// diag(1, e^{i theta}).
Mat2 phase(double theta);
/// R_Z(theta) = exp(-i theta Z / 2).
Mat2 rz(double theta);
Mat2 frame_operator(FrameLabel f);
/// Prepares cos(theta/2)|0> + e^{i phi} sin(theta/2)|1> from |0>.
Mat2 bloch_preparation(double theta, double phi);
CMatrix cz();
}  // namespace gates

/// Single-qubit projective measurement basis; row m of `bras` is <b_m|.
struct MeasureBasis {
  Mat2 bras;

  static MeasureBasis pauli(Basis b);
  /// {(|0> + e^{i theta}|1>)/sqrt2, (|0> - e^{i theta}|1>)/sqrt2}; theta = 0 is X, pi/2 is Y.
  static MeasureBasis equator(double theta);
  Eigen::Vector2cd ket(int outcome) const { return bras.row(outcome).adjoint(); }
};

/// Brute-force n-qubit state: an amplitude vector or a density matrix. Qubit 0 is the most
/// significant bit of the basis index (and the leftmost character of bit strings).
class DenseState {
 public:
  DenseState() = default;
  static DenseState zeros(std::size_t n);
  static DenseState plus(std::size_t n);
  static DenseState from_ket(Ket amplitudes);
  static DenseState from_density(CMatrix rho);

  std::size_t num_qubits() const { return n_; }
  std::size_t dim() const { return std::size_t{1} << n_; }
  bool is_density() const { return is_density_; }
  const Ket& ket() const;
  const CMatrix& density_matrix() const;
  /// Density matrix regardless of representation.
  CMatrix to_density_matrix() const;
  void promote();

  double trace() const;
  void normalize();

  void apply_1q(std::size_t q, const Mat2& u);
  void apply_cz(std::size_t i, std::size_t j);
  /// Applies a (not necessarily unitary) operator on the listed qubits, first qubit most significant.
  void apply_op(std::span<const std::size_t> qubits, const CMatrix& op);
  void apply_frame(std::span<const FrameLabel> frame);
  /// Completely positive map sum_k K rho K^dagger; promotes to a density matrix. A channel whose
  /// arity is smaller than qubits.size() is applied to each qubit (or group) independently.
  void apply_channel(std::span<const CMatrix> kraus, std::span<const std::size_t> qubits);

  /// Tr(P rho) or <psi|P|psi>; the imaginary part is dropped after a 1e-9 check.
  double expectation(const PauliString& p) const;
  double probability(std::size_t q, const MeasureBasis& basis, int outcome) const;
  /// Projects onto outcome `outcome` and renormalizes; throws on a zero-probability branch.
  /// With keep = false the measured qubit is removed from the register.
  double measure(std::size_t q, const MeasureBasis& basis, int outcome, bool keep = true);
  /// Like measure but never throws: a zero-probability branch leaves a zero state.
  double project(std::size_t q, const MeasureBasis& basis, int outcome, bool keep = true);
  /// Z-basis outcome distribution over all 2^n bit strings.
  std::vector<double> probabilities() const;

  DenseState partial_trace(std::span<const std::size_t> keep) const;
  /// this (x) other, with other's qubits appended after this register.
  DenseState tensor(const DenseState& other) const;

 private:
  void check_qubit(std::size_t q) const;
  void contract(std::size_t q, const Eigen::Vector2cd& bra);

  std::size_t n_ = 0;
  bool is_density_ = false;
  Ket psi_;
  CMatrix rho_;
};

/// prod_{ij} CZ_ij |+>^n as an amplitude vector. Rejects duplicate or malformed edges.
DenseState build_graph_state(std::size_t n, std::span<const Edge> edges);
/// The framed graph state of a GraphState restricted to its alive qubits (in increasing order).
DenseState dense_from_graph(const GraphState& g);

/// |<a|b>|^2 for pure states, Tr(rho sigma) when either side is mixed.
double state_overlap(const DenseState& a, const DenseState& b);

}  // namespace mqnc
