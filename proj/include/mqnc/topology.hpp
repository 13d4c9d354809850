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
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mqnc/graph_state.hpp"

namespace mqnc {

/// Undirected coupling graph of a device. Qubits are addressed by index; labels are for I/O only.
class Topology {
 public:
  Topology() = default;
  Topology(std::string name, std::vector<std::string> labels, std::vector<Edge> edges,
           std::string generator = "custom");

  /// The 27-qubit heavy-hex "falcon" device.
  static Topology falcon27();
  /// `rows` long rows of `cols` qubits; rows r and r+1 are bridged by one extra qubit at every
  /// column c with c = 0 mod 4 (r even) or c = 2 mod 4 (r odd).
  static Topology heavy_hex(std::size_t rows, std::size_t cols);
  static Topology square_grid(std::size_t width, std::size_t height);
  static Topology path(std::size_t n);
  /// "ibm-falcon-27", "heavy-hex:RxC", "square-grid:WxH" or "path:N".
  static Topology builtin(const std::string& spec);

  const std::string& name() const { return name_; }
  const std::string& generator() const { return generator_; }
  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t index_of(const std::string& label) const;
  const std::vector<Edge>& edges() const { return edges_; }
  bool coupled(std::size_t i, std::size_t j) const;
  const std::vector<std::size_t>& neighbors(std::size_t q) const { return adj_.at(q); }
  std::size_t max_degree() const;
  bool connected() const;

  /// Grid position for generated heavy-hex topologies: (2r, c) for long-row qubits and (2r+1, c)
  /// for the bridge between rows r and r+1. Empty for other generators.
  const std::vector<std::pair<int, int>>& coords() const { return coords_; }
  std::size_t hex_rows() const { return hex_rows_; }
  std::size_t hex_cols() const { return hex_cols_; }

  /// Shortest path (fewest edges) avoiding `blocked`; ties broken towards lower qubit indices.
  std::optional<std::vector<std::size_t>> shortest_path(std::size_t a, std::size_t b,
                                                        const std::set<std::size_t>& blocked = {}) const;
  std::size_t distance(std::size_t a, std::size_t b) const;

 private:
  std::string name_;
  std::string generator_ = "custom";
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::pair<int, int>> coords_;
  std::size_t hex_rows_ = 0;
  std::size_t hex_cols_ = 0;
};

}  // namespace mqnc
