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

#include "mqnc/topology.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>

#include "mqnc/error.hpp"

namespace mqnc {

namespace {

std::vector<std::string> index_labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

std::pair<std::size_t, std::size_t> parse_dims(const std::string& text, char sep) {
  auto pos = text.find(sep);
  try {
    if (pos == std::string::npos) throw Error("");
    std::size_t used = 0;
    const std::string a = text.substr(0, pos), b = text.substr(pos + 1);
    const auto x = std::stoul(a, &used);
    if (used != a.size()) throw Error("");
    const auto y = std::stoul(b, &used);
    if (used != b.size()) throw Error("");
    return {x, y};
  } catch (const std::exception&) {
    throw Error("malformed topology dimensions '" + text + "'");
  }
}

}  // namespace

Topology::Topology(std::string name, std::vector<std::string> labels, std::vector<Edge> edges, std::string generator)
    : name_(std::move(name)), generator_(std::move(generator)), labels_(std::move(labels)) {
  const std::size_t n = labels_.size();
  adj_.assign(n, {});
  std::set<std::string> unique_labels(labels_.begin(), labels_.end());
  if (unique_labels.size() != n) throw Error("topology labels must be unique");
  std::set<Edge> seen;
  for (auto [a, b] : edges) {
    if (a >= n) throw QubitError("topology edge endpoint out of range", a);
    if (b >= n) throw QubitError("topology edge endpoint out of range", b);
    if (a == b) throw QubitError("topology self loop", a);
    Edge e{std::min(a, b), std::max(a, b)};
    if (!seen.insert(e).second) throw Error("duplicate topology edge");
    adj_[a].push_back(b);
    adj_[b].push_back(a);
  }
  edges_.assign(seen.begin(), seen.end());
  for (auto& row : adj_) std::sort(row.begin(), row.end());
}

Topology Topology::falcon27() {
  const std::vector<Edge> edges = {{0, 1},   {1, 2},   {1, 4},   {2, 3},   {3, 5},   {4, 7},   {5, 8},
                                   {6, 7},   {7, 10},  {8, 9},   {8, 11},  {10, 12}, {11, 14}, {12, 13},
                                   {12, 15}, {13, 14}, {14, 16}, {15, 18}, {16, 19}, {17, 18}, {18, 21},
                                   {19, 20}, {19, 22}, {21, 23}, {22, 25}, {23, 24}, {24, 25}, {25, 26}};
  return Topology("ibm-falcon-27", index_labels(27), edges, "heavy-hex");
}

Topology Topology::heavy_hex(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) throw Error("heavy-hex needs at least one row and column");
  std::vector<Edge> edges;
  std::vector<std::pair<int, int>> coords;
  std::vector<std::vector<std::size_t>> row_index(rows, std::vector<std::size_t>(cols));
  std::size_t next = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      row_index[r][c] = next++;
      coords.emplace_back(static_cast<int>(2 * r), static_cast<int>(c));
      if (c > 0) edges.emplace_back(row_index[r][c - 1], row_index[r][c]);
    }
  }
  for (std::size_t r = 0; r + 1 < rows; ++r) {
    for (std::size_t c = (r % 2 == 0 ? 0 : 2); c < cols; c += 4) {
      const std::size_t bridge = next++;
      coords.emplace_back(static_cast<int>(2 * r + 1), static_cast<int>(c));
      edges.emplace_back(row_index[r][c], bridge);
      edges.emplace_back(bridge, row_index[r + 1][c]);
    }
  }
  Topology t("heavy-hex:" + std::to_string(rows) + "x" + std::to_string(cols), index_labels(next), edges, "heavy-hex");
  t.coords_ = std::move(coords);
  t.hex_rows_ = rows;
  t.hex_cols_ = cols;
  return t;
}

Topology Topology::square_grid(std::size_t width, std::size_t height) {
  if (width == 0 || height == 0) throw Error("square grid needs positive dimensions");
  std::vector<Edge> edges;
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      const std::size_t q = y * width + x;
      if (x + 1 < width) edges.emplace_back(q, q + 1);
      if (y + 1 < height) edges.emplace_back(q, q + width);
    }
  }
  return Topology("square-grid:" + std::to_string(width) + "x" + std::to_string(height),
                  index_labels(width * height), edges, "square-grid");
}

Topology Topology::path(std::size_t n) {
  if (n == 0) throw Error("path topology needs at least one qubit");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Topology("path:" + std::to_string(n), index_labels(n), edges, "custom");
}

Topology Topology::builtin(const std::string& spec) {
  if (spec == "ibm-falcon-27" || spec == "falcon-27") return falcon27();
  auto colon = spec.find(':');
  if (colon != std::string::npos) {
    const std::string kind = spec.substr(0, colon), dims = spec.substr(colon + 1);
    if (kind == "heavy-hex") {
      auto [r, c] = parse_dims(dims, 'x');
      return heavy_hex(r, c);
    }
    if (kind == "square-grid") {
      auto [w, h] = parse_dims(dims, 'x');
      return square_grid(w, h);
    }
    if (kind == "path") {
      try {
        std::size_t used = 0;
        auto n = std::stoul(dims, &used);
        if (used == dims.size()) return path(n);
      } catch (const std::exception&) {
      }
      throw Error("malformed path length '" + dims + "'");
    }
  }
  throw Error("unknown built-in topology '" + spec + "'");
}

std::size_t Topology::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw Error("no qubit labelled '" + label + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

bool Topology::coupled(std::size_t i, std::size_t j) const {
  if (i >= size() || j >= size()) return false;
  return std::binary_search(adj_[i].begin(), adj_[i].end(), j);
}

std::size_t Topology::max_degree() const {
  std::size_t d = 0;
  for (const auto& row : adj_) d = std::max(d, row.size());
  return d;
}

bool Topology::connected() const {
  if (size() == 0) return true;
  std::vector<bool> seen(size(), false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!queue.empty()) {
    auto a = queue.front();
    queue.pop_front();
    for (auto b : adj_[a]) {
      if (!seen[b]) {
        seen[b] = true;
        ++count;
        queue.push_back(b);
      }
    }
  }
  return count == size();
}

std::optional<std::vector<std::size_t>> Topology::shortest_path(std::size_t a, std::size_t b,
                                                                const std::set<std::size_t>& blocked) const {
  if (a >= size()) throw QubitError("path endpoint out of range", a);
  if (b >= size()) throw QubitError("path endpoint out of range", b);
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> parent(size(), kNone);
  std::deque<std::size_t> queue{a};
  parent[a] = a;
  while (!queue.empty()) {
    auto u = queue.front();
    queue.pop_front();
    if (u == b) break;
    for (auto v : adj_[u]) {
      if (parent[v] != kNone) continue;
      if (v != b && blocked.count(v)) continue;
      parent[v] = u;
      queue.push_back(v);
    }
  }
  if (parent[b] == kNone) return std::nullopt;
  std::vector<std::size_t> path{b};
  while (path.back() != a) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

std::size_t Topology::distance(std::size_t a, std::size_t b) const {
  auto p = shortest_path(a, b);
  if (!p) throw Error("qubits " + labels_[a] + " and " + labels_[b] + " are not connected");
  return p->size() - 1;
}

}  // namespace mqnc
