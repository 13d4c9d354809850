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
#include <string>
#include <vector>

#include "mqnc/dense.hpp"
#include "mqnc/graph_state.hpp"
#include "mqnc/pauli.hpp"
#include "mqnc/sampling.hpp"

namespace mqnc {

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, clipped to [0, 1].
double fidelity(const CMatrix& rho, const CMatrix& sigma);
/// <psi|sigma|psi>.
double fidelity(const Ket& psi, const CMatrix& sigma);
double purity(const CMatrix& rho);
/// Wootters concurrence of a two-qubit density matrix.
double concurrence(const CMatrix& rho);
double trace_distance(const CMatrix& a, const CMatrix& b);

/// Euclidean projection of a real vector onto the probability simplex.
std::vector<double> project_to_simplex(std::vector<double> v);
/// Closest density matrix in Frobenius norm: Hermitian part, eigenvalues projected onto the simplex.
CMatrix project_to_density(const CMatrix& m);

/// Largest squared Schmidt coefficient of psi over every bipartition of its qubits.
double max_bipartition_overlap(const Ket& psi);

struct WitnessResult {
  double fidelity = 0.0;
  double alpha = 1.0;
  /// alpha - fidelity; negative certifies genuine multipartite entanglement.
  double witness = 0.0;
  /// False for a disconnected graph, where alpha = 1 and the witness says nothing.
  bool connected = true;
  bool certified() const { return connected && witness < 0.0; }
};

/// alpha of the graph's state (all qubits alive, n <= 10).
double graph_alpha(const GraphState& g);
WitnessResult gme_witness(const CMatrix& sigma, const GraphState& g);
WitnessResult gme_witness_from_fidelity(double fidelity, double alpha);

/// All 2^n signed products of the stabilizer generators, product k using the generators in the bits
/// of k (generator i = bit i). Product 0 is the identity.
std::vector<PauliString> stabilizer_products(const GraphState& g);

/// One local measurement setting: a basis letter per qubit and the products it estimates.
struct MeasurementSetting {
  std::string bases;
  std::vector<std::size_t> products;
};

/// Groups the non-identity products into local settings. Products are visited by decreasing weight
/// (ties by index); each unassigned product opens a setting and takes the first later unassigned
/// product that agrees with it wherever both act non-trivially. Unused positions are measured in Z.
std::vector<MeasurementSetting> measurement_settings(const std::vector<PauliString>& products);

/// Expectation of the Pauli `p` from counts taken in `setting_bases` (letters must agree on p's
/// support). Includes p's sign.
double expectation_from_counts(const Counts& counts, const PauliString& p, const std::string& setting_bases);

/// (1/2^n) * sum of signed product expectations.
double fidelity_from_products(const std::vector<double>& product_expectations);

}  // namespace mqnc
