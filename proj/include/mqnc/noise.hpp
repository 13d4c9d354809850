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

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mqnc/dense.hpp"

namespace mqnc {

/// Kraus-operator factories. Every returned list is trace preserving.
namespace channels {
/// rho -> (1 - p) rho + p I/d on k qubits (k = 1 or 2).
std::vector<CMatrix> depolarizing(double p, std::size_t k = 1);
std::vector<CMatrix> amplitude_damping(double gamma);
/// rho -> (1 - p) rho + p Z rho Z.
std::vector<CMatrix> phase_flip(double p);
std::vector<CMatrix> bit_flip(double p);
/// Measure in the Z basis and re-prepare the observed basis state.
std::vector<CMatrix> measure_and_prepare();
std::vector<CMatrix> identity_channel();
/// Kraus list of the composition second(first(rho)).
std::vector<CMatrix> compose(const std::vector<CMatrix>& first, const std::vector<CMatrix>& second);
/// Sum_k K^dagger K, the identity for a trace-preserving list.
CMatrix completeness(const std::vector<CMatrix>& kraus);
}  // namespace channels

/// Gate-attached noise: depolarizing after each ideal gate on the gate's support, readout confusion at
/// measurement time. p2 is per two-qubit gate.
struct NoiseModel {
  double p1 = 0.0;
  double p2 = 0.0;
  /// Row-stochastic, row = prepared bit, column = reported bit.
  Eigen::Matrix2d readout = Eigen::Matrix2d::Identity();
  /// Per-qubit readout matrices overriding `readout`.
  std::map<std::size_t, Eigen::Matrix2d> readout_overrides;

  static NoiseModel noiseless() { return {}; }
  /// Symmetric readout flip probability `ro`.
  static NoiseModel uniform(double p1, double p2, double ro);
  /// Error scale of a mid-2020s superconducting processor: p1 = 1e-3, p2 = 4e-2, readout flip 3%.
  static NoiseModel cairo_like();
  /// Parses "p1,p2,ro" or a preset name ("none", "cairo-like").
  static NoiseModel parse(const std::string& text);

  const Eigen::Matrix2d& readout_for(std::size_t qubit) const;
  bool is_noiseless() const;
  /// Throws when a probability is outside [0,1] or a confusion row does not sum to 1.
  void validate() const;
};

/// Applies a unitary gate followed by the matching depolarizing noise. Used by every noisy circuit.
void noisy_1q(DenseState& s, std::size_t q, const Mat2& u, const NoiseModel& noise);
void noisy_cz(DenseState& s, std::size_t i, std::size_t j, const NoiseModel& noise);

}  // namespace mqnc
