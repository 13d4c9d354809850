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

#include "mqnc/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "mqnc/error.hpp"

namespace mqnc {
namespace {

const Json& field(const Json& j, const char* key, const std::string& what) {
  if (!j.is_object()) throw Error(what + ": expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw Error(what + ": missing field '" + key + "'");
  return *it;
}

std::size_t as_index(const Json& j, const std::string& what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) throw Error(what + ": expected a non-negative integer");
  return j.get<std::size_t>();
}

std::vector<std::size_t> as_index_list(const Json& j, const std::string& what) {
  if (!j.is_array()) throw Error(what + ": expected an array");
  std::vector<std::size_t> out;
  for (const Json& x : j) out.push_back(as_index(x, what));
  return out;
}

std::string as_string(const Json& j, const std::string& what) {
  if (!j.is_string()) throw Error(what + ": expected a string");
  return j.get<std::string>();
}

Json label_json(const std::string& label) {
  if (!label.empty() && label.size() < 10 && std::all_of(label.begin(), label.end(), ::isdigit)) {
    return std::stoll(label);
  }
  return label;
}

std::string label_from_json(const Json& j, const std::string& what) {
  if (j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
  return as_string(j, what);
}

}  // namespace

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(what + ": malformed JSON (" + e.what() + ")");
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const std::string& path) { return parse_json(read_text_file(path), path); }

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
  if (!out) throw Error("write to '" + path + "' failed");
}

Json graph_to_json(const GraphState& g) {
  Json j;
  j["n"] = g.size();
  std::vector<Edge> edges = g.edges();
  for (Edge& e : edges) {
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
  Json ej = Json::array();
  for (const Edge& e : edges) ej.push_back({e.first, e.second});
  j["edges"] = ej;
  Json fj = Json::array();
  for (FrameLabel f : g.frames()) fj.push_back(to_string(f));
  j["frame"] = fj;
  std::vector<std::size_t> removed = g.dead_qubits();
  if (!removed.empty()) j["removed"] = removed;
  return j;
}

GraphState graph_from_json(const Json& j) {
  const std::string what = "graph";
  std::size_t n = as_index(field(j, "n", what), what + ".n");
  const Json& ej = field(j, "edges", what);
  if (!ej.is_array()) throw Error("graph.edges: expected an array");
  GraphState g(n);
  for (const Json& e : ej) {
    std::vector<std::size_t> pair = as_index_list(e, "graph.edges");
    if (pair.size() != 2) throw Error("graph.edges: every edge needs two endpoints");
    if (pair[0] >= n || pair[1] >= n || pair[0] == pair[1]) throw Error("graph.edges: invalid edge");
    if (g.has_edge(pair[0], pair[1])) throw Error("graph.edges: repeated edge");
    g.toggle_edge(pair[0], pair[1]);
  }
  if (auto it = j.find("frame"); it != j.end()) {
    if (!it->is_array() || it->size() != n) throw Error("graph.frame: expected one label per qubit");
    for (std::size_t q = 0; q < n; ++q) g.set_frame(q, parse_frame_label(as_string((*it)[q], "graph.frame")));
  }
  if (auto it = j.find("removed"); it != j.end()) {
    for (std::size_t q : as_index_list(*it, "graph.removed")) {
      if (q >= n) throw Error("graph.removed: qubit out of range");
      if (g.degree(q) != 0) throw Error("graph.removed: removed qubit has edges");
      g.measure_z(q, 0);
    }
  }
  return g;
}

Json schedule_to_json(const Schedule& s) {
  Json j;
  j["k"] = s.k;
  j["permutation"] = s.permutation;
  Json settings = Json::array();
  for (SwitchSetting st : s.settings) settings.push_back(to_string(st));
  j["settings"] = settings;
  Json rounds = Json::array();
  for (const auto& round : s.rounds) {
    Json r = Json::array();
    for (const ScheduleEntry& e : round) {
      Json ej;
      ej["qubits"] = e.qubits;
      ej["basis"] = to_string(e.basis);
      r.push_back(ej);
    }
    rounds.push_back(r);
  }
  j["rounds"] = rounds;
  return j;
}

Schedule schedule_from_json(const Json& j) {
  const std::string what = "schedule";
  Schedule s;
  s.k = as_index(field(j, "k", what), "schedule.k");
  s.permutation = as_index_list(field(j, "permutation", what), "schedule.permutation");
  const Json& settings = field(j, "settings", what);
  if (!settings.is_array()) throw Error("schedule.settings: expected an array");
  for (const Json& st : settings) {
    std::string text = as_string(st, "schedule.settings");
    if (text == to_string(SwitchSetting::Straight)) {
      s.settings.push_back(SwitchSetting::Straight);
    } else if (text == to_string(SwitchSetting::Cross)) {
      s.settings.push_back(SwitchSetting::Cross);
    } else {
      throw Error("schedule.settings: unknown setting '" + text + "'");
    }
  }
  const Json& rounds = field(j, "rounds", what);
  if (!rounds.is_array()) throw Error("schedule.rounds: expected an array");
  for (const Json& r : rounds) {
    if (!r.is_array()) throw Error("schedule.rounds: every round must be an array");
    std::vector<ScheduleEntry> round;
    for (const Json& e : r) {
      round.push_back({as_index_list(field(e, "qubits", "schedule entry"), "schedule entry qubits"),
                       parse_schedule_basis(as_string(field(e, "basis", "schedule entry"), "schedule entry basis"))});
    }
    s.rounds.push_back(std::move(round));
  }
  return s;
}

Json switch_network_to_json(const SwitchNetwork& net) {
  Json j = graph_to_json(net.graph);
  j["k"] = net.k;
  j["sources"] = net.sources;
  j["destinations"] = net.destinations;
  Json blocks = Json::array();
  for (const SwitchBlock& b : net.switches) {
    Json bj;
    bj["stage"] = b.stage;
    bj["lines"] = {b.top_line, b.top_line + 1};
    bj["qubits"] = b.qubits;
    bj["links"] = b.links;
    blocks.push_back(bj);
  }
  j["switches"] = blocks;
  return j;
}

Json topology_to_json(const Topology& t) {
  Json j;
  j["name"] = t.name();
  Json q = Json::array();
  for (const std::string& l : t.labels()) q.push_back(label_json(l));
  j["qubits"] = q;
  Json e = Json::array();
  for (const Edge& edge : t.edges()) e.push_back({label_json(t.labels()[edge.first]), label_json(t.labels()[edge.second])});
  j["edges"] = e;
  return j;
}

Topology topology_from_json(const Json& j) {
  const std::string what = "topology";
  std::string name = as_string(field(j, "name", what), "topology.name");
  const Json& qj = field(j, "qubits", what);
  if (!qj.is_array() || qj.empty()) throw Error("topology.qubits: expected a non-empty array");
  std::vector<std::string> labels;
  for (const Json& l : qj) labels.push_back(label_from_json(l, "topology.qubits"));
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!index.emplace(labels[i], i).second) throw Error("topology.qubits: repeated label '" + labels[i] + "'");
  }
  const Json& ej = field(j, "edges", what);
  if (!ej.is_array()) throw Error("topology.edges: expected an array");
  std::vector<Edge> edges;
  for (const Json& e : ej) {
    if (!e.is_array() || e.size() != 2) throw Error("topology.edges: every edge needs two endpoints");
    std::string a = label_from_json(e[0], "topology.edges"), b = label_from_json(e[1], "topology.edges");
    auto ia = index.find(a), ib = index.find(b);
    if (ia == index.end() || ib == index.end()) throw Error("topology.edges: unknown qubit in edge " + a + "-" + b);
    edges.emplace_back(ia->second, ib->second);
  }
  return Topology(name, labels, edges);
}

Topology load_topology(const std::string& ref) {
  try {
    return Topology::builtin(ref);
  } catch (const Error&) {
    std::ifstream probe(ref);
    if (!probe) throw Error("unknown topology '" + ref + "': not a built-in name or a readable file");
  }
  return topology_from_json(read_json_file(ref));
}

Json plan_to_json(const RewirePlan& plan) {
  Json j;
  Json steps = Json::array();
  for (const PlanStep& s : plan.steps) {
    Json sj;
    sj["op"] = to_string(s.op);
    sj["qubits"] = s.qubits;
    if (s.op == PlanOp::Y) sj["outcome"] = s.outcome;
    steps.push_back(sj);
  }
  j["steps"] = steps;
  j["logical_to_physical"] = plan.logical_to_physical;
  return j;
}

RewirePlan plan_from_json(const Json& j) {
  const std::string what = "plan";
  RewirePlan plan;
  const Json& steps = field(j, "steps", what);
  if (!steps.is_array()) throw Error("plan.steps: expected an array");
  for (const Json& sj : steps) {
    PlanStep s;
    s.op = parse_plan_op(as_string(field(sj, "op", "plan step"), "plan step op"));
    s.qubits = as_index_list(field(sj, "qubits", "plan step"), "plan step qubits");
    std::size_t expected = s.op == PlanOp::CZ ? 2 : 1;
    if (s.qubits.size() != expected) throw Error("plan step " + to_string(s.op) + ": wrong number of qubits");
    if (auto it = sj.find("outcome"); it != sj.end()) {
      std::size_t o = as_index(*it, "plan step outcome");
      if (o > 1) throw Error("plan step outcome: must be 0 or 1");
      s.outcome = static_cast<std::uint8_t>(o);
    }
    plan.steps.push_back(std::move(s));
  }
  plan.logical_to_physical = as_index_list(field(j, "logical_to_physical", what), "plan.logical_to_physical");
  return plan;
}

Json counts_file_to_json(const CountsFile& c) {
  Json j;
  j["basis"] = c.basis;
  Json counts = Json::object();
  for (const auto& [bits, n] : c.counts) counts[bits] = n;
  j["counts"] = counts;
  j["seed"] = c.seed;
  return j;
}

CountsFile counts_file_from_json(const Json& j) {
  const std::string what = "counts file";
  CountsFile c;
  c.basis = as_string(field(j, "basis", what), "counts file basis");
  const Json& counts = field(j, "counts", what);
  if (!counts.is_object()) throw Error("counts file counts: expected an object");
  for (const auto& [bits, n] : counts.items()) {
    if (!n.is_number() || n.get<double>() < 0.0) throw Error("counts file counts: negative or non-numeric count");
    if (bits.size() != c.basis.size() || bits.find_first_not_of("01") != std::string::npos) {
      throw Error("counts file counts: bad bit string '" + bits + "'");
    }
    c.counts[bits] = n.get<double>();
  }
  if (auto it = j.find("seed"); it != j.end()) {
    if (!it->is_number_unsigned()) throw Error("counts file seed: expected a non-negative integer");
    c.seed = it->get<std::uint64_t>();
  }
  return c;
}

Json choi_to_json(const Choi& c) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < c.j.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < c.j.cols(); ++k) row.push_back({c.j(r, k).real(), c.j(r, k).imag()});
    rows.push_back(row);
  }
  Json j;
  j["choi"] = rows;
  return j;
}

Choi choi_from_json(const Json& j) {
  const Json& rows = field(j, "choi", "choi file");
  if (!rows.is_array() || rows.size() != 4) throw Error("choi file: expected a 4x4 matrix");
  Choi c;
  c.j = CMatrix::Zero(4, 4);
  for (std::size_t r = 0; r < 4; ++r) {
    if (!rows[r].is_array() || rows[r].size() != 4) throw Error("choi file: expected a 4x4 matrix");
    for (std::size_t k = 0; k < 4; ++k) {
      const Json& e = rows[r][k];
      if (e.is_number()) {
        c.j(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        c.j(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = cplx(e[0].get<double>(), e[1].get<double>());
      } else {
        throw Error("choi file: entries must be numbers or [re, im] pairs");
      }
    }
  }
  if ((c.j - c.j.adjoint()).norm() > 1e-6) throw Error("choi file: matrix is not Hermitian");
  return c;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace mqnc
