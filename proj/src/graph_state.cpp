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

#include "mqnc/graph_state.hpp"

#include <algorithm>
#include <bit>

#include "mqnc/error.hpp"

namespace mqnc {

char to_char(Basis b) {
  switch (b) {
    case Basis::X:
      return 'X';
    case Basis::Y:
      return 'Y';
    case Basis::Z:
      return 'Z';
  }
  return '?';
}

GraphState::GraphState(std::size_t n)
    : n_(n), words_((n + 63) / 64), bits_(n * ((n + 63) / 64), 0), alive_(n, 1), frame_(n, FrameLabel::I) {}

GraphState GraphState::from_edges(std::size_t n, std::span<const Edge> edges) {
  GraphState g(n);
  for (const auto& [i, j] : edges) {
    if (i >= n) throw QubitError("edge endpoint out of range", i);
    if (j >= n) throw QubitError("edge endpoint out of range", j);
    if (i == j) throw QubitError("self loop in edge list", i);
    if (g.has_edge(i, j)) {
      throw Error("duplicate edge {" + std::to_string(i) + "," + std::to_string(j) + "}");
    }
    g.flip(i, j);
  }
  return g;
}

bool GraphState::alive(std::size_t q) const {
  if (q >= n_) throw QubitError("qubit out of range", q);
  return alive_[q] != 0;
}

bool GraphState::has_edge(std::size_t i, std::size_t j) const {
  if (i >= n_) throw QubitError("qubit out of range", i);
  if (j >= n_) throw QubitError("qubit out of range", j);
  return ((row(i)[j / 64] >> (j % 64)) & 1u) != 0;
}

void GraphState::flip(std::size_t i, std::size_t j) {
  row(i)[j / 64] ^= std::uint64_t{1} << (j % 64);
  row(j)[i / 64] ^= std::uint64_t{1} << (i % 64);
}

std::vector<std::size_t> GraphState::neighbors(std::size_t a) const {
  if (a >= n_) throw QubitError("qubit out of range", a);
  std::vector<std::size_t> out;
  const std::uint64_t* r = row(a);
  for (std::size_t w = 0; w < words_; ++w) {
    std::uint64_t word = r[w];
    while (word != 0) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
      word &= word - 1;
    }
  }
  return out;
}

std::size_t GraphState::degree(std::size_t a) const {
  if (a >= n_) throw QubitError("qubit out of range", a);
  std::size_t d = 0;
  const std::uint64_t* r = row(a);
  for (std::size_t w = 0; w < words_; ++w) d += static_cast<std::size_t>(std::popcount(r[w]));
  return d;
}

std::size_t GraphState::max_degree() const {
  std::size_t best = 0;
  for (std::size_t q = 0; q < n_; ++q) best = std::max(best, degree(q));
  return best;
}

std::vector<Edge> GraphState::edges() const {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j : neighbors(i)) {
      if (i < j) out.emplace_back(i, j);
    }
  }
  return out;
}

std::size_t GraphState::edge_count() const {
  std::size_t total = 0;
  for (std::size_t q = 0; q < n_; ++q) total += degree(q);
  return total / 2;
}

std::size_t GraphState::alive_count() const {
  return static_cast<std::size_t>(std::count(alive_.begin(), alive_.end(), std::uint8_t{1}));
}

std::vector<std::size_t> GraphState::dead_qubits() const {
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q < n_; ++q) {
    if (!alive_[q]) out.push_back(q);
  }
  return out;
}

void GraphState::set_frame(std::size_t q, FrameLabel f) {
  if (q >= n_) throw QubitError("qubit out of range", q);
  frame_[q] = f;
}

bool GraphState::frame_is_identity() const {
  for (std::size_t q = 0; q < n_; ++q) {
    if (alive_[q] && frame_[q] != FrameLabel::I) return false;
  }
  return true;
}

void GraphState::require_alive(std::size_t q, const char* op) const {
  if (q >= n_) throw QubitError(std::string(op) + ": qubit out of range", q);
  if (!alive_[q]) throw QubitError(std::string(op) + ": qubit already measured", q);
}

void GraphState::toggle_edge(std::size_t i, std::size_t j) {
  require_alive(i, "toggle_edge");
  require_alive(j, "toggle_edge");
  if (i == j) throw QubitError("toggle_edge: endpoints must differ", i);
  // CZ X_i CZ = X_i Z_j.
  const bool xi = has_x(frame_[i]);
  const bool xj = has_x(frame_[j]);
  if (xi) frame_[j] = compose(frame_[j], FrameLabel::Z);
  if (xj) frame_[i] = compose(frame_[i], FrameLabel::Z);
  flip(i, j);
}

void GraphState::local_complement(std::size_t a) {
  require_alive(a, "local_complement");
  const std::vector<std::size_t> nbrs = neighbors(a);
  // exp(-i pi/4 X) maps Z -> Y and Y -> Z; exp(+i pi/4 Z) maps X -> Y and Y -> X.
  frame_[a] = make_frame(has_x(frame_[a]) != has_z(frame_[a]), has_z(frame_[a]));
  for (std::size_t b : nbrs) {
    frame_[b] = make_frame(has_x(frame_[b]), has_z(frame_[b]) != has_x(frame_[b]));
  }
  const std::vector<std::uint64_t> mask(row(a), row(a) + words_);
  for (std::size_t b : nbrs) {
    std::uint64_t* r = row(b);
    for (std::size_t w = 0; w < words_; ++w) r[w] ^= mask[w];
    r[b / 64] &= ~(std::uint64_t{1} << (b % 64));
  }
}

MeasureOutcome GraphState::project_z(std::size_t a, std::uint8_t outcome) {
  if (outcome > 1) throw Error("measurement outcome must be 0 or 1");
  // Z_a on X^x|G>: the graph-level outcome is the physical one flipped by the frame's X part.
  const bool s = (outcome != 0) != has_x(frame_[a]);
  for (std::size_t b : neighbors(a)) {
    if (s) frame_[b] = compose(frame_[b], FrameLabel::Z);
    flip(a, b);
  }
  alive_[a] = 0;
  frame_[a] = FrameLabel::I;
  return MeasureOutcome{{a}, Basis::Z, {outcome}};
}

MeasureOutcome GraphState::measure_z(std::size_t a, std::uint8_t outcome) {
  require_alive(a, "measure_z");
  return project_z(a, outcome);
}

MeasureOutcome GraphState::measure_y(std::size_t a, std::uint8_t outcome) {
  require_alive(a, "measure_y");
  if (outcome > 1) throw Error("measurement outcome must be 0 or 1");
  // The LC unitary maps Y_a to +Z_a, so "measure Y, then correct the neighbours" equals
  // "apply LC, then measure Z" with the same outcome bit.
  local_complement(a);
  project_z(a, outcome);
  return MeasureOutcome{{a}, Basis::Y, {outcome}};
}

MeasureOutcome GraphState::measure_x_pair(std::size_t a, std::size_t b, std::uint8_t outcome_a,
                                          std::uint8_t outcome_b) {
  require_alive(a, "measure_x_pair");
  require_alive(b, "measure_x_pair");
  if (outcome_a > 1 || outcome_b > 1) throw Error("measurement outcome must be 0 or 1");
  if (a == b || !has_edge(a, b)) {
    throw QubitError("measure_x_pair: qubits " + std::to_string(a) + " and " + std::to_string(b) +
                         " are not adjacent",
                     b);
  }
  std::vector<std::size_t> touched = neighbors(a);
  for (std::size_t c : neighbors(b)) touched.push_back(c);
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  std::erase_if(touched, [&](std::size_t c) { return c == a || c == b; });

  // Pivot on {a, b}: the LC unitaries send X_a -> -Z_a and X_b -> -Z_b, and leave exactly
  // exp(i pi/2 Z_c) ~ Z_c on every other qubit of N_a u N_b. Undo that residual in the frame so the
  // result describes plain X measurements.
  local_complement(a);
  local_complement(b);
  local_complement(a);
  project_z(a, outcome_a ^ 1u);
  project_z(b, outcome_b ^ 1u);
  for (std::size_t c : touched) frame_[c] = compose(frame_[c], FrameLabel::Z);
  return MeasureOutcome{{a, b}, Basis::X, {outcome_a, outcome_b}};
}

std::vector<PauliString> GraphState::stabilizers() const {
  std::vector<PauliString> out;
  for (std::size_t i = 0; i < n_; ++i) {
    if (!alive_[i]) continue;
    PauliString s(n_);
    s.set_letter(i, 'X');
    bool anti = has_z(frame_[i]);
    for (std::size_t j : neighbors(i)) {
      s.set_letter(j, 'Z');
      anti = anti != has_x(frame_[j]);
    }
    if (anti) s.set_phase(2);
    out.push_back(std::move(s));
  }
  return out;
}

bool GraphState::same_graph(const GraphState& other) const {
  return n_ == other.n_ && alive_ == other.alive_ && bits_ == other.bits_;
}

bool operator==(const GraphState& a, const GraphState& b) {
  if (!a.same_graph(b)) return false;
  for (std::size_t q = 0; q < a.n_; ++q) {
    if (a.alive_[q] && a.frame_[q] != b.frame_[q]) return false;
  }
  return true;
}

}  // namespace mqnc
