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

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mqnc/dense.hpp"
#include "mqnc/sampling.hpp"

namespace mqnc {

/// Every string over {X, Y, Z} of length m, in lexicographic order X < Y < Z.
std::vector<std::string> tomography_bases(std::size_t m);

/// Counts per measurement basis string; bit strings list the qubits in the basis string's order.
using BasisCounts = std::map<std::string, Counts>;

struct StateTomography {
  std::size_t num_qubits = 0;
  /// Linear-inversion estimate; Hermitian with unit trace but possibly not positive.
  CMatrix linear;
  /// Closest density matrix to the linear estimate.
  CMatrix rho;
  /// Frobenius distance moved by the projection.
  double projection_residual = 0.0;
  bool mitigated = false;
};

/// Linear inversion from counts in all 3^m bases, optionally mitigating every basis with the given
/// confusion matrix first. Each Pauli expectation averages every basis that measures it.
StateTomography state_tomography(const BasisCounts& counts, const std::optional<ConfusionMatrix>& mitigation = {});

/// Exact tomography input: the Born distribution of every basis scaled to `total` counts.
BasisCounts exact_basis_counts(const DenseState& state, const std::vector<std::size_t>& qubits, double total = 1.0);

/// Sampled tomography input: `shots` per basis with readout noise, seeds split per basis.
BasisCounts sampled_basis_counts(const DenseState& state, const std::vector<std::size_t>& qubits, std::size_t shots,
                                 const NoiseModel& noise, std::uint64_t seed);

/// Single-qubit channel as a Choi matrix J = sum_ij |i><j| (x) E(|i><j|), input factor first. Tr J = 2.
struct Choi {
  CMatrix j;
  /// Output state for the input density matrix rho.
  CMatrix apply(const CMatrix& rho) const;
  /// Tr_out J, equal to the identity for a trace-preserving channel.
  CMatrix input_marginal() const;
};

Choi choi_from_kraus(const std::vector<CMatrix>& kraus);

/// Process-tomography inputs in order: |0>, |1>, |+>, |+i>.
const std::array<std::string, 4>& process_input_labels();
Ket process_input_state(std::size_t index);

/// Linear inversion from the channel outputs on the four inputs.
Choi choi_from_outputs(const std::array<CMatrix, 4>& outputs);

struct ProcessTomography {
  Choi raw;
  /// Choi after clipping negative eigenvalues and renormalizing to trace preservation.
  Choi choi;
  /// Magnitude of the clipped negative eigenvalues.
  double cp_residual = 0.0;
  /// Frobenius distance of the clipped Choi's input marginal from the identity.
  double tp_residual = 0.0;
};

/// Projects a raw Choi estimate to a completely positive, trace-preserving one.
ProcessTomography project_choi(const Choi& raw);
/// Full pipeline from one-qubit counts per input (indexed as process_input_labels) and basis X, Y, Z.
ProcessTomography process_tomography(const std::array<BasisCounts, 4>& counts,
                                     const std::optional<ConfusionMatrix>& mitigation = {});

double process_fidelity(const Choi& c);
/// (2 F_pro + 1) / 3.
double average_gate_fidelity(const Choi& c);
/// <psi|E(|psi><psi|)|psi> for the Bloch angles (theta, phi).
double per_state_fidelity(const Choi& c, double theta, double phi);
/// Monte-Carlo average of the per-state fidelity over Haar-random inputs.
double average_gate_fidelity_monte_carlo(const Choi& c, std::size_t samples, std::uint64_t seed);

struct BlochPoint {
  double theta = 0.0;
  double phi = 0.0;
};
Eigen::Vector3d bloch_vector(const BlochPoint& p);
BlochPoint bloch_angles(const Eigen::Vector3d& v);

/// Fibonacci spiral over the spherical cap of half-angle theta0 around `center`: area-uniform
/// heights, golden-angle azimuths, four azimuths per height so that quadratic functions integrate
/// exactly in azimuth. Returns `resolution` points rounded up to a multiple of four.
std::vector<BlochPoint> fibonacci_cap(const BlochPoint& center, double theta0, std::size_t resolution);

inline constexpr std::size_t kDefaultCapResolution = 20000;
inline constexpr double kMinCapAngle = 0.05;

/// Area-uniform average of the per-state fidelity over the cap. theta0 in [0.05, pi].
double cap_average_fidelity(const Choi& c, const BlochPoint& center, double theta0,
                            std::size_t resolution = kDefaultCapResolution);

/// Input with the highest per-state fidelity, searched over a Fibonacci sphere.
BlochPoint best_cap_center(const Choi& c, std::size_t resolution = kDefaultCapResolution);

/// Benchmark for a cap: a constant or a table over theta0, linearly interpolated and clamped at the
/// table ends. Values must lie in [2/3, 1] and be non-increasing in theta0.
class ClassicalBound {
 public:
  ClassicalBound() = default;
  static ClassicalBound constant(double value);
  static ClassicalBound table(std::vector<std::pair<double, double>> points);
  double at(double theta0) const;

 private:
  std::vector<std::pair<double, double>> points_{{0.0, 2.0 / 3.0}};
};

struct CapPoint {
  double theta0 = 0.0;
  double fidelity = 0.0;
  double bound = 0.0;
  bool exceeds() const { return fidelity > bound; }
};

std::vector<CapPoint> cap_curve(const Choi& c, const BlochPoint& center, const std::vector<double>& theta0s,
                                const ClassicalBound& bound = {}, std::size_t resolution = kDefaultCapResolution);

/// Evenly spaced theta0 grid from kMinCapAngle to pi.
std::vector<double> cap_angle_grid(std::size_t points);

/// Named single-qubit channels: "identity", "depolarizing:P", "phase-flip:P", "dephasing" (complete),
/// "bit-flip:P", "amplitude-damping:G", and "damping" (amplitude damping 0.3 followed by depolarizing 0.6).
std::vector<CMatrix> channel_preset(const std::string& name);

}  // namespace mqnc
