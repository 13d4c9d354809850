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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mqnc/pauli.hpp"

namespace mqnc {

using Edge = std::pair<std::size_t, std::size_t>;

enum class Basis : std::uint8_t { X, Y, Z };

char to_char(Basis b);

/// Record of a measurement performed on the graph engine.
struct MeasureOutcome {
  std::vector<std::size_t> qubits;
  Basis basis = Basis::Z;
  std::vector<std::uint8_t> bits;
};

/// Graph state with a classically tracked Pauli frame.
///
/// The represented physical state is (prod_q X_q^x Z_q^z) |G>, where |G> = prod_{ij in E} CZ_ij |+>^n
/// restricted to the alive qubits. Every operation below is defined as a physical operation on that
/// state, and the engine updates the graph and the frame so the representation stays exact up to a
/// global phase:
///
///  * toggle_edge(i, j)      applies CZ_ij.
///  * local_complement(a)    applies exp(-i pi/4 X_a) prod_{b in N_a} exp(+i pi/4 Z_b).
///  * measure_z(a, m)        measures Z_a.
///  * measure_y(a, m)        measures Y_a, then applies prod_{b in N_a} exp(+i pi/4 Z_b).
///  * measure_x_pair(a,b,..) measures X_a and X_b on an adjacent pair, nothing else.
///
/// Outcome bit m means the measured observable returned eigenvalue (-1)^m. The correction applied by
/// measure_y is what keeps the byproduct Pauli; without it the neighbours would carry sqrt(Z).
class GraphState {
 public:
  GraphState() = default;
  explicit GraphState(std::size_t n);

  /// Builds a graph with identity frame. Rejects self loops, out-of-range or duplicate edges.
  static GraphState from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t size() const { return n_; }
  bool alive(std::size_t q) const;
  bool has_edge(std::size_t i, std::size_t j) const;
  std::vector<std::size_t> neighbors(std::size_t a) const;
  std::size_t degree(std::size_t a) const;
  std::size_t max_degree() const;
  /// Sorted (i < j, lexicographic) edge list.
  std::vector<Edge> edges() const;
  std::size_t edge_count() const;
  std::size_t alive_count() const;
  std::vector<std::size_t> dead_qubits() const;

  FrameLabel frame(std::size_t q) const { return frame_.at(q); }
  void set_frame(std::size_t q, FrameLabel f);
  const std::vector<FrameLabel>& frames() const { return frame_; }
  bool frame_is_identity() const;

  void toggle_edge(std::size_t i, std::size_t j);
  void local_complement(std::size_t a);
  MeasureOutcome measure_z(std::size_t a, std::uint8_t outcome);
  MeasureOutcome measure_y(std::size_t a, std::uint8_t outcome);
  MeasureOutcome measure_x_pair(std::size_t a, std::size_t b, std::uint8_t outcome_a,
                                std::uint8_t outcome_b);

  /// Generators X_i prod_j Z_j^{G_ij}, signed so that they stabilize the framed state.
  std::vector<PauliString> stabilizers() const;

  /// True when both states have the same alive set and adjacency (frames ignored).
  bool same_graph(const GraphState& other) const;

  friend bool operator==(const GraphState& a, const GraphState& b);

 private:
  void require_alive(std::size_t q, const char* op) const;
  // Z-basis measurement without the liveness check; shared by the composite rules.
  MeasureOutcome project_z(std::size_t a, std::uint8_t outcome);
  std::uint64_t* row(std::size_t q) { return bits_.data() + q * words_; }
  const std::uint64_t* row(std::size_t q) const { return bits_.data() + q * words_; }
  void flip(std::size_t i, std::size_t j);

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint8_t> alive_;
  std::vector<FrameLabel> frame_;
};

}  // namespace mqnc
