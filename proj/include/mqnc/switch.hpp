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
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "mqnc/graph_state.hpp"

namespace mqnc {

/// One 2x2 butterfly block. `qubits[r]` is the network qubit playing butterfly role r, with roles
/// 0,1 = top input/output, 4,5 = bottom input/output and 2,3 the central pair.
struct SwitchBlock {
  std::size_t stage = 0;
  std::size_t top_line = 0;
  std::array<std::size_t, 6> qubits{};
  /// Qubits linking the two outputs to the next stage (top, bottom).
  std::array<std::size_t, 2> links{};
};

/// Planar Spanke-Benes network of k(k-1)/2 butterfly blocks arranged as an odd-even transposition
/// sorter: stage s holds the blocks on lines (j, j+1) with j = s mod 2. Each block contributes eight
/// qubits (six butterfly qubits plus two links) and each port one source qubit, so the register has
/// 8 k(k-1)/2 + k = 4k(k-1) + k qubits. Destinations are the last link qubit on each line.
struct SwitchNetwork {
  std::size_t k = 0;
  std::vector<SwitchBlock> switches;
  GraphState graph;
  std::vector<std::size_t> sources;
  std::vector<std::size_t> destinations;
  /// Planar drawing coordinates (x, y) per qubit; lines sit at y = 2j.
  std::vector<std::pair<int, int>> layout;

  std::size_t num_qubits() const { return graph.size(); }
};

enum class SwitchSetting : std::uint8_t { Straight, Cross };
enum class ScheduleBasis : std::uint8_t { XPair, Z, Y };

std::string to_string(SwitchSetting s);
std::string to_string(ScheduleBasis b);
ScheduleBasis parse_schedule_basis(const std::string& text);

struct ScheduleEntry {
  std::vector<std::size_t> qubits;
  ScheduleBasis basis = ScheduleBasis::Z;
  friend bool operator==(const ScheduleEntry&, const ScheduleEntry&) = default;
};

struct Schedule {
  std::size_t k = 0;
  std::vector<std::size_t> permutation;
  /// Setting per block, indexed like SwitchNetwork::switches.
  std::vector<SwitchSetting> settings;
  /// Round 0 sets the switches; later rounds remove path interiors with Y measurements.
  std::vector<std::vector<ScheduleEntry>> rounds;
};

SwitchNetwork build_switch(std::size_t k);

/// Per-block settings from odd-even transposition routing on the destination labels; a block crosses
/// iff its two streams are out of order. Rejects anything that is not a permutation of 0..k-1.
Schedule route(const SwitchNetwork& net, const std::vector<std::size_t>& permutation);

/// Supplies the outcome bit of each measured qubit; the default reports 0 everywhere.
using OutcomeSource = std::function<std::uint8_t(std::size_t qubit)>;

GraphState execute_schedule(const SwitchNetwork& net, const Schedule& schedule, const OutcomeSource& outcomes = {});

/// True when the only alive qubits are the ports and the edges are exactly source_i - destination_pi(i).
bool verify_matching(const SwitchNetwork& net, const std::vector<std::size_t>& permutation, const GraphState& g);

}  // namespace mqnc
