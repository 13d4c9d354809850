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

#include "mqnc/compiler.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>

#include "mqnc/error.hpp"
#include "mqnc/switch.hpp"

namespace mqnc {

std::string to_string(PlanOp op) {
  switch (op) {
    case PlanOp::CZ:
      return "CZ";
    case PlanOp::LC:
      return "LC";
    case PlanOp::Y:
      return "Y";
  }
  return "?";
}

PlanOp parse_plan_op(const std::string& text) {
  if (text == "CZ") return PlanOp::CZ;
  if (text == "LC") return PlanOp::LC;
  if (text == "Y") return PlanOp::Y;
  throw Error("unknown plan operation '" + text + "'");
}

std::size_t RewirePlan::two_qubit_count() const { return count(PlanOp::CZ); }

std::size_t RewirePlan::count(PlanOp op) const {
  return static_cast<std::size_t>(
      std::count_if(steps.begin(), steps.end(), [op](const PlanStep& s) { return s.op == op; }));
}

GraphState replay_plan(const RewirePlan& plan, const Topology& topology) {
  GraphState g(topology.size());
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const PlanStep& s = plan.steps[i];
    const std::size_t arity = s.op == PlanOp::CZ ? 2 : 1;
    if (s.qubits.size() != arity) throw PlanError("step has the wrong number of qubits", i);
    for (std::size_t q : s.qubits) {
      if (q >= topology.size()) throw PlanError("step names a qubit outside the device", i);
      if (!g.alive(q)) throw PlanError("step touches measured qubit " + topology.labels()[q], i);
    }
    switch (s.op) {
      case PlanOp::CZ:
        if (!topology.coupled(s.qubits[0], s.qubits[1])) {
          throw PlanError("CZ on uncoupled pair (" + topology.labels()[s.qubits[0]] + "," +
                              topology.labels()[s.qubits[1]] + ")",
                          i);
        }
        g.toggle_edge(s.qubits[0], s.qubits[1]);
        break;
      case PlanOp::LC:
        g.local_complement(s.qubits[0]);
        break;
      case PlanOp::Y:
        g.measure_y(s.qubits[0], s.outcome);
        break;
    }
  }
  return g;
}

PlanReport verify_plan(const RewirePlan& plan, const GraphState& target, const Topology& topology) {
  PlanReport rep;
  rep.two_qubit_gates = plan.two_qubit_count();
  try {
    rep.final_state = replay_plan(plan, topology);
  } catch (const PlanError& e) {
    rep.failed_step = e.step();
    rep.message = e.what();
    return rep;
  }
  rep.valid = true;
  rep.physical_edges = rep.final_state.edges();
  const auto& map = plan.logical_to_physical;
  if (map.size() != target.size()) {
    rep.message = "logical map size differs from target size";
    return rep;
  }
  std::set<std::size_t> used;
  for (std::size_t p : map) {
    if (p >= topology.size() || !used.insert(p).second) {
      rep.message = "logical map is not injective into the device";
      return rep;
    }
  }
  std::vector<Edge> want;
  for (auto [i, j] : target.edges()) want.emplace_back(std::min(map[i], map[j]), std::max(map[i], map[j]));
  std::sort(want.begin(), want.end());
  for (std::size_t l = 0; l < map.size(); ++l) {
    if (!rep.final_state.alive(map[l])) {
      rep.message = "logical qubit " + std::to_string(l) + " was measured";
      return rep;
    }
    rep.logical_frame.push_back(rep.final_state.frame(map[l]));
  }
  rep.matches_target = rep.physical_edges == want;
  rep.message = rep.matches_target ? "ok" : "final adjacency differs from target";
  return rep;
}

GraphState butterfly_graph() {
  return GraphState::from_edges(6, std::vector<Edge>{{0, 1}, {4, 5}, {0, 2}, {2, 4}, {2, 3}, {1, 3}, {3, 5}});
}

std::vector<PlanStep> butterfly_steps_logical() {
  auto cz = [](std::size_t a, std::size_t b) { return PlanStep{PlanOp::CZ, {a, b}, 0}; };
  auto lc = [](std::size_t a) { return PlanStep{PlanOp::LC, {a}, 0}; };
  return {cz(1, 0), cz(1, 3), cz(2, 3), lc(1), lc(0),    lc(3),    lc(2), cz(4, 5),
          cz(3, 5), lc(5),    lc(4),    lc(3), cz(3, 5), cz(1, 3), lc(5)};
}

RewirePlan butterfly_plan(const std::vector<std::size_t>& logical_to_physical) {
  if (logical_to_physical.size() != 6) throw Error("butterfly map needs six entries");
  RewirePlan plan;
  plan.logical_to_physical = logical_to_physical;
  for (PlanStep s : butterfly_steps_logical()) {
    for (auto& q : s.qubits) q = logical_to_physical[q];
    plan.steps.push_back(s);
  }
  return plan;
}

std::vector<std::size_t> falcon_butterfly_placement() { return {3, 5, 9, 8, 14, 11}; }

RewirePlan plan_linear_contraction(const Topology& topology, std::size_t a, std::size_t b,
                                   const std::set<std::size_t>& blocked) {
  if (a == b) throw Error("linear contraction needs two distinct endpoints");
  auto path = topology.shortest_path(a, b, blocked);
  if (!path) {
    std::ostringstream msg;
    msg << "no free path between " << topology.labels()[a] << " and " << topology.labels()[b] << "; blocked:";
    for (auto q : blocked) msg << ' ' << topology.labels()[q];
    throw PlanError(msg.str(), 0);
  }
  RewirePlan plan;
  plan.logical_to_physical = {a, b};
  for (std::size_t i = 0; i + 1 < path->size(); ++i) plan.steps.push_back({PlanOp::CZ, {(*path)[i], (*path)[i + 1]}, 0});
  for (std::size_t i = 1; i + 1 < path->size(); ++i) plan.steps.push_back({PlanOp::Y, {(*path)[i]}, 0});
  return plan;
}

RewirePlan plan_junction_contraction(const Topology& topology, std::size_t hub, std::size_t a, std::size_t b,
                                     const std::set<std::size_t>& blocked) {
  if (hub == a || hub == b || a == b) throw Error("junction contraction needs three distinct qubits");
  std::set<std::size_t> avoid = blocked;
  avoid.insert(b);
  auto to_a = topology.shortest_path(hub, a, avoid);
  if (!to_a) throw PlanError("no free path from hub to first branch", 0);
  // Junction: the interior qubit of hub->a with the shortest disjoint detour to b.
  std::optional<std::vector<std::size_t>> best_branch;
  std::size_t best_index = 0;
  for (std::size_t i = 1; i + 1 < to_a->size(); ++i) {
    std::set<std::size_t> block_b = blocked;
    for (std::size_t t = 0; t < to_a->size(); ++t)
      if (t != i) block_b.insert((*to_a)[t]);
    auto branch = topology.shortest_path((*to_a)[i], b, block_b);
    if (branch && (!best_branch || branch->size() < best_branch->size())) {
      best_branch = branch;
      best_index = i;
    }
  }
  if (!best_branch) throw PlanError("no junction qubit reaches the second branch", 0);
  const std::vector<std::size_t>& pa = *to_a;
  const std::vector<std::size_t>& pb = *best_branch;
  const std::size_t junction = pa[best_index];
  RewirePlan plan;
  plan.logical_to_physical = {hub, a, b};
  for (std::size_t i = 0; i + 1 < pa.size(); ++i) plan.steps.push_back({PlanOp::CZ, {pa[i], pa[i + 1]}, 0});
  for (std::size_t i = 0; i + 1 < pb.size(); ++i) plan.steps.push_back({PlanOp::CZ, {pb[i], pb[i + 1]}, 0});
  // Round one: every path interior except the junction.
  for (std::size_t i = 1; i + 1 < pa.size(); ++i)
    if (i != best_index) plan.steps.push_back({PlanOp::Y, {pa[i]}, 0});
  for (std::size_t i = 1; i + 1 < pb.size(); ++i) plan.steps.push_back({PlanOp::Y, {pb[i]}, 0});
  // Round two.
  plan.steps.push_back({PlanOp::Y, {junction}, 0});
  plan.steps.push_back({PlanOp::LC, {hub}, 0});
  return plan;
}

namespace {

// Small graph on at most 16 vertices for the exhaustive planner.
struct SmallGraph {
  std::array<std::uint16_t, 16> adj{};
  std::uint16_t alive = 0;

  bool operator==(const SmallGraph&) const = default;

  void toggle(std::size_t i, std::size_t j) {
    adj[i] ^= static_cast<std::uint16_t>(1u << j);
    adj[j] ^= static_cast<std::uint16_t>(1u << i);
  }
  void lc(std::size_t a) {
    const std::uint16_t nb = adj[a];
    for (std::size_t b = 0; b < 16; ++b) {
      if (!((nb >> b) & 1u)) continue;
      adj[b] ^= nb;
      adj[b] &= static_cast<std::uint16_t>(~(1u << b));
    }
  }
  void remove(std::size_t a) {
    for (std::size_t b = 0; b < 16; ++b) adj[b] &= static_cast<std::uint16_t>(~(1u << a));
    adj[a] = 0;
    alive &= static_cast<std::uint16_t>(~(1u << a));
  }
};

struct SmallGraphHash {
  std::size_t operator()(const SmallGraph& g) const {
    std::size_t h = g.alive;
    for (auto r : g.adj) h = h * 1000003u ^ r;
    return h;
  }
};

struct SearchNode {
  SmallGraph parent;
  PlanStep step;
  std::size_t cost = 0;
  bool root = false;
};

}  // namespace

RewirePlan plan_target_graph(const Topology& topology, const GraphState& target,
                             const std::vector<std::size_t>& logical_to_physical, std::size_t budget,
                             const std::vector<std::size_t>& ancillas) {
  if (logical_to_physical.size() != target.size()) throw Error("logical map size differs from target size");
  std::vector<std::size_t> active = logical_to_physical;
  active.insert(active.end(), ancillas.begin(), ancillas.end());
  if (active.size() > 16) throw Error("exhaustive planner handles at most 16 qubits");
  {
    std::set<std::size_t> uniq(active.begin(), active.end());
    if (uniq.size() != active.size()) throw Error("logical map and ancillas must be distinct qubits");
    for (auto q : active)
      if (q >= topology.size()) throw QubitError("planner qubit outside the device", q);
  }
  const std::size_t m = active.size();
  const std::size_t nl = logical_to_physical.size();
  std::vector<Edge> couplings;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (topology.coupled(active[i], active[j])) couplings.emplace_back(i, j);

  SmallGraph start;
  start.alive = static_cast<std::uint16_t>((1u << m) - 1);
  SmallGraph goal;
  goal.alive = static_cast<std::uint16_t>((1u << nl) - 1);
  for (auto [i, j] : target.edges()) goal.toggle(i, j);

  // 0-1 breadth-first search: CZ costs one, LC and ancilla Y cost nothing.
  std::unordered_map<SmallGraph, SearchNode, SmallGraphHash> seen;
  seen[start] = SearchNode{start, {}, 0, true};
  std::deque<SmallGraph> queue{start};
  std::size_t expanded = 0;
  bool found = false;
  while (!queue.empty()) {
    SmallGraph g = queue.front();
    queue.pop_front();
    const std::size_t cost = seen[g].cost;
    if (g == goal) {
      found = true;
      break;
    }
    if (++expanded > budget) throw PlanError("search budget exhausted", expanded);
    auto relax = [&](const SmallGraph& next, PlanStep step, std::size_t next_cost, bool free) {
      auto it = seen.find(next);
      if (it != seen.end() && it->second.cost <= next_cost) return;
      seen[next] = SearchNode{g, std::move(step), next_cost, false};
      if (free) {
        queue.push_front(next);
      } else {
        queue.push_back(next);
      }
    };
    for (std::size_t a = 0; a < m; ++a) {
      if (!((g.alive >> a) & 1u)) continue;
      SmallGraph h = g;
      h.lc(a);
      relax(h, PlanStep{PlanOp::LC, {active[a]}, 0}, cost, true);
      if (a >= nl) {
        SmallGraph y = g;
        y.lc(a);
        y.remove(a);
        relax(y, PlanStep{PlanOp::Y, {active[a]}, 0}, cost, true);
      }
    }
    for (auto [i, j] : couplings) {
      if (!((g.alive >> i) & 1u) || !((g.alive >> j) & 1u)) continue;
      SmallGraph h = g;
      h.toggle(i, j);
      relax(h, PlanStep{PlanOp::CZ, {active[i], active[j]}, 0}, cost + 1, false);
    }
  }
  if (!found) throw PlanError("target graph unreachable with the allowed moves", expanded);

  RewirePlan plan;
  plan.logical_to_physical = logical_to_physical;
  for (SmallGraph g = goal; !seen[g].root; g = seen[g].parent) plan.steps.push_back(seen[g].step);
  std::reverse(plan.steps.begin(), plan.steps.end());
  PlanReport rep = verify_plan(plan, target, topology);
  if (!rep.ok()) throw PlanError("internal error: planner produced an unverified plan: " + rep.message, 0);
  return plan;
}

SwapBaseline swap_baseline_count(const Topology& topology, const GraphState& target,
                                 const std::vector<std::size_t>& logical_to_physical) {
  if (!topology.connected()) throw Error("SWAP baseline needs a connected topology");
  if (logical_to_physical.size() != target.size()) throw Error("logical map size differs from target size");
  SwapBaseline out;
  for (auto [i, j] : target.edges()) {
    const std::size_t d = topology.distance(logical_to_physical.at(i), logical_to_physical.at(j));
    out.cz_equivalent += 3 * (d - 1) + 1;
    out.swap_as_one += d;
  }
  return out;
}

namespace {

struct EmbedScheme {
  int sx = 0, sy = 0, c0 = 0, r0 = 0;
  std::size_t rows = 0, cols = 0;
};

// Places layout point (x, y) on long row sy*y + r0, column sx*x + c0, and routes every layout edge
// as a device path that avoids other placed qubits, their neighbours and earlier paths.
std::optional<RewirePlan> try_embed(const SwitchNetwork& net, const Topology& topo, const EmbedScheme& sc) {
  std::map<std::pair<int, int>, std::size_t> at;
  for (std::size_t q = 0; q < topo.size(); ++q) {
    auto [r2, c] = topo.coords()[q];
    if (r2 <= 2 * (static_cast<int>(sc.rows) - 1) && c < static_cast<int>(sc.cols)) at[{r2, c}] = q;
  }
  std::set<std::size_t> outside;
  for (std::size_t q = 0; q < topo.size(); ++q) {
    auto [r2, c] = topo.coords()[q];
    if (!at.count({r2, c})) outside.insert(q);
  }
  const std::size_t n = net.num_qubits();
  std::vector<std::size_t> place(n);
  std::set<std::size_t> placed;
  for (std::size_t v = 0; v < n; ++v) {
    auto [x, y] = net.layout[v];
    auto it = at.find({2 * (sc.sy * y + sc.r0), sc.sx * x + sc.c0});
    if (it == at.end()) return std::nullopt;
    if (topo.neighbors(it->second).size() < net.graph.degree(v)) return std::nullopt;
    place[v] = it->second;
    placed.insert(it->second);
  }
  std::set<std::size_t> used = outside;
  for (auto p : placed) used.insert(p);
  std::vector<std::vector<std::size_t>> paths;
  auto edges = net.graph.edges();
  // Short couplings first so long straight runs do not wall off the switch blocks.
  std::stable_sort(edges.begin(), edges.end(), [&](const Edge& e, const Edge& f) {
    auto len = [&](const Edge& g) {
      return std::abs(net.layout[g.first].first - net.layout[g.second].first) +
             std::abs(net.layout[g.first].second - net.layout[g.second].second);
    };
    return len(e) < len(f);
  });
  for (auto [u, v] : edges) {
    std::set<std::size_t> blocked = used;
    for (std::size_t w = 0; w < n; ++w) {
      if (w == u || w == v) continue;
      for (auto nb : topo.neighbors(place[w])) blocked.insert(nb);
    }
    blocked.erase(place[u]);
    auto path = topo.shortest_path(place[u], place[v], blocked);
    if (!path) return std::nullopt;
    for (std::size_t i = 1; i + 1 < path->size(); ++i) used.insert((*path)[i]);
    paths.push_back(*path);
  }
  RewirePlan plan;
  plan.logical_to_physical = place;
  for (const auto& p : paths)
    for (std::size_t i = 0; i + 1 < p.size(); ++i) plan.steps.push_back({PlanOp::CZ, {p[i], p[i + 1]}, 0});
  for (const auto& p : paths)
    for (std::size_t i = 1; i + 1 < p.size(); ++i) plan.steps.push_back({PlanOp::Y, {p[i]}, 0});
  return plan;
}

std::pair<int, int> layout_extent(const SwitchNetwork& net) {
  int xmax = 0, ymax = 0;
  for (auto [x, y] : net.layout) {
    xmax = std::max(xmax, x);
    ymax = std::max(ymax, y);
  }
  return {xmax, ymax};
}

EmbedScheme find_scheme(std::size_t k) {
  const SwitchNetwork net = build_switch(k);
  auto [xmax, ymax] = layout_extent(net);
  std::optional<EmbedScheme> best;
  for (int sy = 1; sy <= 2; ++sy) {
    for (int sx = 2; sx <= 8; ++sx) {
      for (int r0 = 0; r0 <= 1; ++r0) {
        for (int c0 = 0; c0 <= 3; ++c0) {
          for (int mr = 0; mr <= 1; ++mr) {
            for (int mc = 0; mc <= 2; ++mc) {
              EmbedScheme sc{sx, sy, c0, r0, static_cast<std::size_t>(sy * ymax + r0 + 1 + mr),
                             static_cast<std::size_t>(sx * xmax + c0 + 1 + mc)};
              if (best && sc.rows * sc.cols >= best->rows * best->cols) continue;
              Topology topo = Topology::heavy_hex(sc.rows, sc.cols);
              if (try_embed(net, topo, sc)) best = sc;
            }
          }
        }
      }
    }
  }
  if (!best) throw Error("no heavy-hex embedding scheme found for k=" + std::to_string(k));
  return *best;
}

}  // namespace

std::pair<std::size_t, std::size_t> switch_patch_dims(std::size_t k) {
  const EmbedScheme sc = find_scheme(k);
  return {sc.rows, sc.cols};
}

RewirePlan embed_switch_heavy_hex(std::size_t k, const Topology& topology) {
  const SwitchNetwork net = build_switch(k);
  if (topology.generator() != "heavy-hex" || topology.coords().empty()) {
    throw Error("switch embedding needs a generated heavy-hex topology (heavy-hex:RxC)");
  }
  const EmbedScheme sc = find_scheme(k);
  if (topology.hex_rows() < sc.rows || topology.hex_cols() < sc.cols) {
    throw Error("heavy-hex patch too small for k=" + std::to_string(k) + ": need at least heavy-hex:" +
                std::to_string(sc.rows) + "x" + std::to_string(sc.cols));
  }
  auto plan = try_embed(net, topology, sc);
  if (!plan) throw Error("switch embedding failed on " + topology.name());
  PlanReport rep = verify_plan(*plan, net.graph, topology);
  if (!rep.ok()) throw PlanError("internal error: switch embedding does not verify: " + rep.message, 0);
  return *plan;
}

}  // namespace mqnc
