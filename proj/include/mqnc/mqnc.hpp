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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mqnc/compiler.hpp"
#include "mqnc/dense.hpp"
#include "mqnc/graph_state.hpp"
#include "mqnc/noise.hpp"
#include "mqnc/sampling.hpp"

namespace mqnc {

enum class PairMode : std::uint8_t { Cross, Straight };
enum class Policy : std::uint8_t { Postselect, Feedforward };

std::string to_string(PairMode m);
std::string to_string(Policy p);
PairMode parse_pair_mode(const std::string& text);
Policy parse_policy(const std::string& text);

/// Central qubits of the butterfly resource.
inline constexpr std::array<std::size_t, 2> kButterflyCentral = {2, 3};

/// The two (source, destination) pairs produced by a mode: cross gives (0,5),(4,1), straight
/// gives (0,1),(4,5). The source side is where inputs are attached.
std::array<std::pair<std::size_t, std::size_t>, 2> butterfly_pairs(PairMode mode);

struct PairConfig {
  PairMode mode = PairMode::Cross;
  std::array<std::pair<std::size_t, std::size_t>, 2> pairs{};
  /// Frame on (source, destination) of each pair.
  std::array<std::array<FrameLabel, 2>, 2> frames{};
  bool byproduct_free() const;
};

/// |psi> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
struct InputState {
  double theta = 0.0;
  double phi = 0.0;

  Ket ket() const;
  Eigen::Vector3d bloch() const;
  /// Throws unless theta in [0, pi] and phi in [0, 2 pi).
  void validate() const;
};

/// Measures the central pair of a fresh resource: X on both (cross) or Z on both (straight).
std::pair<PairConfig, GraphState> run_network_code(PairMode mode, std::uint8_t outcome_2, std::uint8_t outcome_3);

/// Pauli left on destination q after teleporting over the pair (p, q). The input sits on an extra
/// qubit joined to p by CZ; s0 is its X outcome and s1 the X outcome of p. The result is
/// frame(q) X^(s1 ^ z_p) Z^(s0 ^ x_p) with phases dropped.
FrameLabel teleport_byproduct(FrameLabel frame_p, FrameLabel frame_q, std::uint8_t s0, std::uint8_t s1);

/// Teleports `input` over the pair (p, q) of a post-measurement graph state by brute force and
/// returns the one-qubit state on q, frame-corrected when `correct` is set.
DenseState teleport_over_pair(const GraphState& g, std::size_t p, std::size_t q, const InputState& input,
                              std::uint8_t s0, std::uint8_t s1, bool correct = true);

struct ExperimentSpec {
  PairMode mode = PairMode::Cross;
  std::size_t pair_index = 0;
  InputState input;
  NoiseModel noise;
  Policy policy = Policy::Feedforward;
  /// Resource preparation on logical qubits 0..5 (CZ and LC steps only); empty means the seven-CZ plan.
  std::optional<RewirePlan> preparation;
};

struct ExperimentResult {
  /// Normalized output density matrix of the destination qubit.
  DenseState output;
  double fidelity = 0.0;
  /// Probability that a shot survives the policy (1 for feedforward).
  double retained_fraction = 0.0;
};

/// Noisy butterfly + teleportation on a 7-qubit density matrix (resource qubits 0..5, input 6). All
/// 16 outcome branches of the central pair, input qubit and pair source are enumerated exactly;
/// readout confusion decides which reported branch each true branch lands in.
ExperimentResult run_full_experiment(const ExperimentSpec& spec);

/// Noisy six-qubit butterfly resource from |0...0>: noisy H on every qubit, then the plan's CZ and LC
/// steps with gate noise. An empty plan means the seven-CZ preparation.
DenseState prepare_resource_state(const std::optional<RewirePlan>& preparation, const NoiseModel& noise);

/// Two-qubit state (source, destination) of the selected pair after the central measurements. Every
/// reported outcome is frame-corrected (feedforward) or only byproduct-free reports are kept
/// (postselect); readout confusion on the central pair is included. The input state is ignored.
struct PairStateResult {
  DenseState state;
  double retained_fraction = 0.0;
};
PairStateResult run_pair_experiment(const ExperimentSpec& spec);

/// The noisy 7-qubit state right before any measurement (input already attached).
DenseState prepare_experiment_state(const ExperimentSpec& spec);

/// Measured qubits in record order (central 2, central 3, input 6, pair source) and their bases.
std::pair<std::vector<std::size_t>, std::vector<Basis>> experiment_measurements(const ExperimentSpec& spec);

/// Shot-level run: samples the four measured qubits and post-selects once on a byproduct-free
/// network code and once on an identity total byproduct after teleportation.
struct ShotExperiment {
  std::vector<ShotRecord> records;
  PostselectResult network_code;
  PostselectResult teleported;
};
ShotExperiment sample_butterfly_shots(const ExperimentSpec& spec, std::size_t shots, std::uint64_t seed);

/// Output state of the destination qubit when the input is attached before (true) or after (false)
/// the central measurements, optionally frame-corrected. Used to check that the two orders agree.
DenseState attach_order_output(PairMode mode, std::size_t pair_index, const InputState& input, std::uint8_t m2,
                               std::uint8_t m3, std::uint8_t s0, std::uint8_t s1, bool attach_first,
                               bool correct = true);

}  // namespace mqnc
