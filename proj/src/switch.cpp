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

#include "mqnc/switch.hpp"

#include <algorithm>

#include "mqnc/error.hpp"

namespace mqnc {

std::string to_string(SwitchSetting s) { return s == SwitchSetting::Cross ? "cross" : "straight"; }

std::string to_string(ScheduleBasis b) {
  switch (b) {
    case ScheduleBasis::XPair:
      return "Xpair";
    case ScheduleBasis::Z:
      return "Z";
    case ScheduleBasis::Y:
      return "Y";
  }
  return "?";
}

ScheduleBasis parse_schedule_basis(const std::string& text) {
  if (text == "Xpair") return ScheduleBasis::XPair;
  if (text == "Z") return ScheduleBasis::Z;
  if (text == "Y") return ScheduleBasis::Y;
  throw Error("unknown schedule basis '" + text + "'");
}

SwitchNetwork build_switch(std::size_t k) {
  if (k < 2) throw Error("a switch needs at least two ports");
  SwitchNetwork net;
  net.k = k;
  std::vector<Edge> edges;
  auto add_qubit = [&](int x, int y) {
    net.layout.emplace_back(x, y);
    return net.layout.size() - 1;
  };
  std::vector<std::size_t> cur(k);
  for (std::size_t j = 0; j < k; ++j) {
    cur[j] = add_qubit(0, static_cast<int>(2 * j));
    net.sources.push_back(cur[j]);
  }
  for (std::size_t s = 0; s < k; ++s) {
    for (std::size_t j = s % 2; j + 1 < k; j += 2) {
      const int x = static_cast<int>(3 * s);
      const int y = static_cast<int>(2 * j);
      SwitchBlock b;
      b.stage = s;
      b.top_line = j;
      b.qubits[0] = add_qubit(x + 1, y);
      b.qubits[2] = add_qubit(x + 1, y + 1);
      b.qubits[4] = add_qubit(x + 1, y + 2);
      b.qubits[1] = add_qubit(x + 2, y);
      b.qubits[3] = add_qubit(x + 2, y + 1);
      b.qubits[5] = add_qubit(x + 2, y + 2);
      b.links[0] = add_qubit(x + 3, y);
      b.links[1] = add_qubit(x + 3, y + 2);
      const auto& q = b.qubits;
      for (auto [u, v] : {Edge{0, 1}, Edge{4, 5}, Edge{0, 2}, Edge{2, 4}, Edge{2, 3}, Edge{1, 3}, Edge{3, 5}}) {
        edges.emplace_back(q[u], q[v]);
      }
      edges.emplace_back(cur[j], q[0]);
      edges.emplace_back(cur[j + 1], q[4]);
      edges.emplace_back(q[1], b.links[0]);
      edges.emplace_back(q[5], b.links[1]);
      cur[j] = b.links[0];
      cur[j + 1] = b.links[1];
      net.switches.push_back(b);
    }
  }
  net.destinations = cur;
  net.graph = GraphState::from_edges(net.layout.size(), edges);
  if (net.switches.size() != k * (k - 1) / 2 || net.num_qubits() != 4 * k * (k - 1) + k) {
    throw Error("switch construction does not match the block and qubit count formulas");
  }
  return net;
}

namespace {

void check_permutation(std::size_t k, const std::vector<std::size_t>& perm) {
  if (perm.size() != k) throw Error("permutation length must equal the port count");
  std::vector<bool> seen(k, false);
  for (std::size_t v : perm) {
    if (v >= k || seen[v]) throw Error("not a permutation of 0..k-1");
    seen[v] = true;
  }
}

}  // namespace

Schedule route(const SwitchNetwork& net, const std::vector<std::size_t>& permutation) {
  const std::size_t k = net.k;
  check_permutation(k, permutation);
  Schedule sch;
  sch.k = k;
  sch.permutation = permutation;
  std::vector<std::size_t> labels = permutation;
  for (const SwitchBlock& b : net.switches) {
    const std::size_t j = b.top_line;
    const bool cross = labels[j] > labels[j + 1];
    if (cross) std::swap(labels[j], labels[j + 1]);
    sch.settings.push_back(cross ? SwitchSetting::Cross : SwitchSetting::Straight);
  }

  std::vector<ScheduleEntry> setting_round;
  for (std::size_t i = 0; i < net.switches.size(); ++i) {
    const auto& q = net.switches[i].qubits;
    if (sch.settings[i] == SwitchSetting::Cross) {
      setting_round.push_back({{q[2], q[3]}, ScheduleBasis::XPair});
    } else {
      setting_round.push_back({{q[2]}, ScheduleBasis::Z});
      setting_round.push_back({{q[3]}, ScheduleBasis::Z});
    }
  }
  sch.rounds.push_back(std::move(setting_round));

  // Walk each stream through the blocks to list its path interior.
  std::vector<std::vector<std::size_t>> interiors(k);
  std::vector<std::size_t> stream_at(k);
  for (std::size_t j = 0; j < k; ++j) stream_at[j] = j;
  for (std::size_t i = 0; i < net.switches.size(); ++i) {
    const SwitchBlock& b = net.switches[i];
    const std::size_t j = b.top_line;
    const bool cross = sch.settings[i] == SwitchSetting::Cross;
    const std::size_t top = stream_at[j], bottom = stream_at[j + 1];
    interiors[top].push_back(b.qubits[0]);
    interiors[top].push_back(cross ? b.qubits[5] : b.qubits[1]);
    interiors[top].push_back(cross ? b.links[1] : b.links[0]);
    interiors[bottom].push_back(b.qubits[4]);
    interiors[bottom].push_back(cross ? b.qubits[1] : b.qubits[5]);
    interiors[bottom].push_back(cross ? b.links[0] : b.links[1]);
    if (cross) std::swap(stream_at[j], stream_at[j + 1]);
  }
  std::size_t longest = 0;
  for (auto& path : interiors) {
    if (!path.empty()) path.pop_back();  // the last link is the destination port
    longest = std::max(longest, path.size());
  }
  for (std::size_t t = 0; t < longest; ++t) {
    std::vector<ScheduleEntry> round;
    for (const auto& path : interiors) {
      if (t < path.size()) round.push_back({{path[t]}, ScheduleBasis::Y});
    }
    sch.rounds.push_back(std::move(round));
  }
  return sch;
}

GraphState execute_schedule(const SwitchNetwork& net, const Schedule& schedule, const OutcomeSource& outcomes) {
  if (schedule.k != net.k || schedule.settings.size() != net.switches.size()) {
    throw Error("schedule was not routed on this network");
  }
  auto bit = [&](std::size_t q) -> std::uint8_t { return outcomes ? (outcomes(q) & 1u) : 0; };
  GraphState g = net.graph;
  for (const auto& round : schedule.rounds) {
    for (const ScheduleEntry& e : round) {
      for (std::size_t q : e.qubits) {
        if (q >= g.size()) throw QubitError("schedule names a qubit outside the network", q);
      }
      switch (e.basis) {
        case ScheduleBasis::XPair:
          if (e.qubits.size() != 2) throw Error("Xpair entry needs two qubits");
          g.measure_x_pair(e.qubits[0], e.qubits[1], bit(e.qubits[0]), bit(e.qubits[1]));
          break;
        case ScheduleBasis::Z:
          if (e.qubits.size() != 1) throw Error("Z entry needs one qubit");
          g.measure_z(e.qubits[0], bit(e.qubits[0]));
          break;
        case ScheduleBasis::Y:
          if (e.qubits.size() != 1) throw Error("Y entry needs one qubit");
          g.measure_y(e.qubits[0], bit(e.qubits[0]));
          break;
      }
    }
  }
  return g;
}

bool verify_matching(const SwitchNetwork& net, const std::vector<std::size_t>& permutation, const GraphState& g) {
  if (permutation.size() != net.k || g.size() != net.num_qubits()) return false;
  std::vector<Edge> want;
  for (std::size_t i = 0; i < net.k; ++i) {
    std::size_t a = net.sources[i], b = net.destinations[permutation[i]];
    want.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(want.begin(), want.end());
  if (g.edges() != want) return false;
  return g.alive_count() == 2 * net.k;
}

}  // namespace mqnc
