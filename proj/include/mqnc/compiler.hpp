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
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mqnc/graph_state.hpp"
#include "mqnc/topology.hpp"

namespace mqnc {

enum class PlanOp : std::uint8_t { CZ, LC, Y };

std::string to_string(PlanOp op);
PlanOp parse_plan_op(const std::string& text);

struct PlanStep {
  PlanOp op = PlanOp::CZ;
  /// Physical qubits: two for CZ, one otherwise.
  std::vector<std::size_t> qubits;
  /// Outcome assumed for a Y step when replaying.
  std::uint8_t outcome = 0;
  friend bool operator==(const PlanStep&, const PlanStep&) = default;
};

/// Sequence of native operations on a device, starting from every qubit in |+>.
struct RewirePlan {
  std::vector<PlanStep> steps;
  std::vector<std::size_t> logical_to_physical;

  std::size_t two_qubit_count() const;
  std::size_t count(PlanOp op) const;
};

struct PlanReport {
  /// Every step is legal (coupled CZ endpoints, live qubits, in-range indices).
  bool valid = false;
  bool matches_target = false;
  std::size_t two_qubit_gates = 0;
  std::optional<std::size_t> failed_step;
  std::string message;
  /// Replayed state over all device qubits.
  GraphState final_state;
  std::vector<Edge> physical_edges;
  /// Frame of each logical qubit after the replay.
  std::vector<FrameLabel> logical_frame;

  bool ok() const { return valid && matches_target; }
};

/// Replays the plan from the all-|+> state; throws PlanError naming the first illegal step.
GraphState replay_plan(const RewirePlan& plan, const Topology& topology);

/// Replays the plan and compares the resulting adjacency with `target` (logical labels) pushed
/// through the plan's map. The whole device must end up with exactly the mapped edges.
PlanReport verify_plan(const RewirePlan& plan, const GraphState& target, const Topology& topology);

/// The six-qubit butterfly resource: edges 0-1, 4-5, 0-2, 2-4, 2-3, 1-3, 3-5.
GraphState butterfly_graph();

/// Seven-CZ butterfly preparation, in application order, on logical qubits 0..5:
/// CZ(1,0) CZ(1,3) CZ(2,3) LC1 LC0 LC3 LC2 CZ(4,5) CZ(3,5) LC5 LC4 LC3 CZ(3,5) CZ(1,3) LC5.
std::vector<PlanStep> butterfly_steps_logical();
/// The same steps with qubit i sent to logical_to_physical[i].
RewirePlan butterfly_plan(const std::vector<std::size_t>& logical_to_physical);
/// Falcon placement {0..5} -> {3,5,9,8,14,11}. It occupies the same six device qubits as the map
/// {5,3,8,9,11,14} composed with the butterfly symmetry (0 1)(2 3)(4 5), under which every CZ of
/// the plan lands on a coupled pair.
std::vector<std::size_t> falcon_butterfly_placement();

/// CZs along an unused shortest path from a to b, then Y on every interior qubit, leaving the
/// single edge {a, b}. Throws PlanError listing the blocked qubits when no path exists.
RewirePlan plan_linear_contraction(const Topology& topology, std::size_t a, std::size_t b,
                                   const std::set<std::size_t>& blocked = {});

/// Connects `hub` to both `a` and `b` through a shared junction qubit in two Y rounds: first the
/// path interiors, then the junction itself (which leaves a triangle hub-a-b), and finally LC(hub)
/// removes the a-b edge.
RewirePlan plan_junction_contraction(const Topology& topology, std::size_t hub, std::size_t a, std::size_t b,
                                     const std::set<std::size_t>& blocked = {});

/// Minimum-CZ search over CZ (coupled pairs only, cost 1), LC (cost 0) and Y on ancillas (cost 0)
/// restricted to the mapped qubits plus `ancillas`. Returns a verified plan or throws PlanError
/// when the budget of expanded nodes runs out or the target is unreachable.
RewirePlan plan_target_graph(const Topology& topology, const GraphState& target,
                             const std::vector<std::size_t>& logical_to_physical, std::size_t budget = 100000,
                             const std::vector<std::size_t>& ancillas = {});

struct SwapBaseline {
  /// Each SWAP costs three two-qubit gates.
  std::size_t cz_equivalent = 0;
  /// Each SWAP counted as one gate.
  std::size_t swap_as_one = 0;
};

/// Naive SWAP routing: each target edge at device distance d costs d-1 SWAPs plus one CZ. Qubits are
/// returned to their homes between edges, so edges are priced independently.
SwapBaseline swap_baseline_count(const Topology& topology, const GraphState& target,
                                 const std::vector<std::size_t>& logical_to_physical);

/// Rows and columns of the smallest generated heavy-hex patch that hosts the k-port switch.
std::pair<std::size_t, std::size_t> switch_patch_dims(std::size_t k);

/// Embeds build_switch(k) into a generated heavy-hex topology by routing every switch coupling as a
/// vertex-disjoint device path and contracting it with Y measurements.
RewirePlan embed_switch_heavy_hex(std::size_t k, const Topology& topology);

}  // namespace mqnc
