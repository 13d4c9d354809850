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

#include "mqnc/commands.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <memory>
#include <numbers>
#include <sstream>
#include <tuple>

#include "mqnc/error.hpp"
#include "mqnc/metrics.hpp"
#include "mqnc/switch.hpp"

namespace mqnc {
namespace {

// Stream offsets under the master seed; see Rng::split.
constexpr std::uint64_t kCalibrationStream = 1000;
constexpr std::uint64_t kDestinationCalibrationStream = 1001;
constexpr std::uint64_t kProcessStreamBase = 100;

void require_seed(const CommonOptions& common) {
  if (common.shots > 0 && !common.seed) throw Error("--seed is required when --shots is positive");
}

std::uint64_t stream(const CommonOptions& common, std::uint64_t index) {
  return Rng::split(common.seed.value_or(0), index);
}

Json noise_json(const NoiseModel& n) {
  Json j;
  j["p1"] = n.p1;
  j["p2"] = n.p2;
  j["readout"] = {{n.readout(0, 0), n.readout(0, 1)}, {n.readout(1, 0), n.readout(1, 1)}};
  return j;
}

Json run_header(const std::string& command, const CommonOptions& common) {
  Json j;
  j["command"] = command;
  j["noise"] = noise_json(common.noise);
  j["shots"] = common.shots;
  j["seed"] = common.seed ? Json(*common.seed) : Json(nullptr);
  return j;
}

Json edges_json(std::vector<Edge> edges) {
  for (Edge& e : edges) {
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
  Json out = Json::array();
  for (const Edge& e : edges) out.push_back({e.first, e.second});
  return out;
}

std::vector<Basis> bases_of(const std::string& letters) {
  std::vector<Basis> out;
  for (char c : letters) out.push_back(c == 'X' ? Basis::X : c == 'Y' ? Basis::Y : Basis::Z);
  return out;
}

// Reported counts for a Born distribution: exact (normalized) when shots = 0, sampled otherwise.
Counts measured_counts(const Eigen::VectorXd& dist, const ConfusionMatrix& confusion, std::size_t shots,
                       std::uint64_t seed) {
  if (shots == 0) return vector_to_counts(confusion.apply(dist), 1.0);
  return count_shots(sample_distribution(dist, shots, confusion, seed));
}

BasisCounts tomography_counts(const DenseState& state, const std::vector<std::size_t>& register_qubits,
                              const ConfusionMatrix& confusion, std::size_t shots, std::uint64_t seed) {
  BasisCounts out;
  std::vector<std::string> bases = tomography_bases(register_qubits.size());
  for (std::size_t b = 0; b < bases.size(); ++b) {
    out[bases[b]] = measured_counts(outcome_distribution(state, register_qubits, bases_of(bases[b])), confusion, shots,
                                    Rng::split(seed, b));
  }
  return out;
}

std::string join(const std::vector<std::size_t>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

// Shortest text that reads back to the same double.
std::string fmt(double x) {
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

// First breadth-first neighbourhood of m qubits (from the lowest-indexed start) on which the
// minimum-CZ search reaches the target.
RewirePlan auto_place(const Topology& topo, const GraphState& target, std::size_t budget) {
  std::size_t m = target.size();
  if (m > topo.size()) throw Error("target graph has more qubits than the topology");
  std::string last = "no connected placement";
  for (std::size_t start = 0; start < topo.size(); ++start) {
    std::vector<std::size_t> order{start};
    std::vector<bool> seen(topo.size(), false);
    seen[start] = true;
    for (std::size_t i = 0; i < order.size() && order.size() < m; ++i) {
      for (std::size_t nb : topo.neighbors(order[i])) {
        if (!seen[nb] && order.size() < m) {
          seen[nb] = true;
          order.push_back(nb);
        }
      }
    }
    if (order.size() < m) continue;
    try {
      return plan_target_graph(topo, target, order, budget);
    } catch (const PlanError& e) {
      last = e.what();
    }
  }
  throw VerificationError("no placement of the target compiles: " + last);
}

GraphState triangle() { return GraphState::from_edges(3, std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}}); }

struct CompiledResource {
  RewirePlan plan;
  PlanReport report;
  std::string method;
};

CompiledResource compile_butterfly(const Topology& topo, const std::vector<std::size_t>& map, std::size_t budget) {
  CompiledResource out;
  GraphState target = butterfly_graph();
  std::vector<std::size_t> m = map;
  if (m.empty() && topo.name() == Topology::falcon27().name() && topo.size() == 27) m = falcon_butterfly_placement();
  if (!m.empty()) {
    if (m.size() != 6) throw Error("the butterfly needs a map of six device qubits");
    for (std::size_t q : m) {
      if (q >= topo.size()) throw Error("map names qubit " + std::to_string(q) + " outside the topology");
    }
    out.plan = butterfly_plan(m);
    out.report = verify_plan(out.plan, target, topo);
    out.method = "seven-cz-plan";
    if (out.report.ok()) return out;
    try {
      out.plan = plan_target_graph(topo, target, m, budget);
    } catch (const PlanError& e) {
      throw VerificationError(std::string("butterfly does not compile under the given map: ") + e.what());
    }
    out.method = "search";
  } else {
    out.plan = auto_place(topo, target, budget);
    out.method = "search";
  }
  out.report = verify_plan(out.plan, target, topo);
  if (!out.report.ok()) throw VerificationError("compiled plan failed verification: " + out.report.message);
  return out;
}

// Plan re-expressed on logical qubits 0..m-1.
RewirePlan to_logical(const RewirePlan& plan) {
  std::map<std::size_t, std::size_t> inverse;
  for (std::size_t i = 0; i < plan.logical_to_physical.size(); ++i) inverse[plan.logical_to_physical[i]] = i;
  RewirePlan out;
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    PlanStep s = plan.steps[i];
    if (s.op == PlanOp::Y) throw PlanError("noisy preparation supports CZ and LC steps only", i);
    for (std::size_t& q : s.qubits) {
      auto it = inverse.find(q);
      if (it == inverse.end()) throw PlanError("step acts outside the mapped qubits", i);
      q = it->second;
    }
    out.steps.push_back(std::move(s));
  }
  for (std::size_t i = 0; i < plan.logical_to_physical.size(); ++i) out.logical_to_physical.push_back(i);
  return out;
}

std::vector<std::pair<PairMode, std::size_t>> selected_pairs(const std::optional<std::string>& pair) {
  std::vector<std::pair<PairMode, std::size_t>> all{
      {PairMode::Cross, 0}, {PairMode::Cross, 1}, {PairMode::Straight, 0}, {PairMode::Straight, 1}};
  if (!pair) return all;
  for (const auto& p : all) {
    if (to_string(p.first) + "-" + std::to_string(p.second) == *pair) return {p};
  }
  throw Error("unknown pair '" + *pair + "' (expected cross-0, cross-1, straight-0 or straight-1)");
}

InputState process_input(std::size_t k) {
  switch (k) {
    case 0: return {0.0, 0.0};
    case 1: return {std::numbers::pi, 0.0};
    case 2: return {std::numbers::pi / 2.0, 0.0};
    default: return {std::numbers::pi / 2.0, std::numbers::pi / 2.0};
  }
}

Json cap_curve_json(const std::vector<CapPoint>& curve) {
  Json out = Json::array();
  for (const CapPoint& p : curve) {
    Json j;
    j["theta0"] = p.theta0;
    j["F_cap"] = p.fidelity;
    j["bound"] = p.bound;
    out.push_back(j);
  }
  return out;
}

Json exceed_range_json(const std::vector<CapPoint>& curve) {
  std::vector<double> above;
  for (const CapPoint& p : curve) {
    if (p.exceeds()) above.push_back(p.theta0);
  }
  if (above.empty()) return nullptr;
  return {above.front(), above.back()};
}

}  // namespace

std::vector<std::size_t> parse_index_list(const std::string& text) {
  std::vector<std::size_t> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos || item.size() > 9) {
      throw Error("malformed index list '" + text + "'");
    }
    out.push_back(std::stoul(item));
  }
  return out;
}

std::string CommandOutput::render(const std::string& format) const {
  if (format == "json") return dump(json);
  if (format == "csv") {
    if (csv.empty()) throw Error("this command has no CSV view");
    return csv;
  }
  throw Error("unknown format '" + format + "' (expected json or csv)");
}

CommandOutput cmd_resource(const CommonOptions& common, const ResourceOptions& options) {
  require_seed(common);
  common.noise.validate();
  Topology topo = load_topology(common.topology);
  CompiledResource compiled = compile_butterfly(topo, {}, 100000);
  RewirePlan logical;
  try {
    logical = to_logical(compiled.plan);
  } catch (const PlanError& e) {
    throw VerificationError(e.what());
  }
  DenseState state = prepare_resource_state(logical, common.noise);

  GraphState target = butterfly_graph();
  std::vector<PauliString> products = stabilizer_products(target);
  std::vector<MeasurementSetting> settings = measurement_settings(products);
  std::vector<std::size_t> qubits{0, 1, 2, 3, 4, 5};
  ConfusionMatrix confusion = ConfusionMatrix::from_noise(common.noise, qubits);
  std::optional<ConfusionMatrix> mitigation;
  if (options.mitigate) {
    mitigation = calibrate_readout(common.noise, qubits, common.shots, stream(common, kCalibrationStream), false);
  }

  std::vector<double> expectation(products.size(), 1.0);
  Json settings_json = Json::array();
  for (std::size_t i = 0; i < settings.size(); ++i) {
    const MeasurementSetting& s = settings[i];
    Counts counts = measured_counts(outcome_distribution(state, qubits, bases_of(s.bases)), confusion, common.shots,
                                    stream(common, i));
    if (mitigation) counts = mitigate(counts, *mitigation);
    Json sj;
    sj["bases"] = s.bases;
    Json pj = Json::array();
    for (std::size_t idx : s.products) {
      expectation[idx] = expectation_from_counts(counts, products[idx], s.bases);
      pj.push_back(products[idx].str());
    }
    sj["products"] = pj;
    settings_json.push_back(sj);
  }
  double f = fidelity_from_products(expectation);
  WitnessResult w = gme_witness_from_fidelity(f, graph_alpha(target));

  Json j = run_header("resource", common);
  j["topology"] = topo.name();
  j["method"] = compiled.method;
  j["placement"] = compiled.plan.logical_to_physical;
  j["plan"] = plan_to_json(compiled.plan);
  j["two_qubit_gates"] = compiled.report.two_qubit_gates;
  j["physical_edges"] = edges_json(compiled.report.physical_edges);
  j["mitigated"] = options.mitigate;
  j["products"] = products.size();
  j["settings"] = settings_json;
  Json ej = Json::array();
  std::string csv = "pauli,expectation\n";
  for (std::size_t i = 0; i < products.size(); ++i) {
    Json e;
    e["pauli"] = products[i].str();
    e["value"] = expectation[i];
    ej.push_back(e);
    csv += products[i].str() + "," + fmt(expectation[i]) + "\n";
  }
  j["expectations"] = ej;
  j["F"] = f;
  j["alpha"] = w.alpha;
  j["witness"] = w.witness;
  j["certified"] = w.certified();

  CommandOutput out;
  out.json = j;
  out.csv = csv;
  out.summary = "resource F=" + fmt(f) + " witness=" + fmt(w.witness) + (w.certified() ? " (GME certified)" : "");
  return out;
}

CommandOutput cmd_mqnc(const CommonOptions& common, const MqncOptions& options) {
  require_seed(common);
  common.noise.validate();
  if (options.cap_points < 2) throw Error("--cap-points must be at least 2");
  if (options.grid_points == 0) throw Error("--grid-points must be positive");
  const Ket ideal_pair = dense_from_graph(GraphState::from_edges(2, std::vector<Edge>{{0, 1}})).ket();
  const double pair_alpha = max_bipartition_overlap(ideal_pair);

  Json reports = Json::array();
  std::string csv = "pair,theta,phi,fidelity\n";
  std::string summary;
  std::size_t pair_counter = 0;
  for (const auto& [mode, idx] : selected_pairs(options.pair)) {
    const std::string label = to_string(mode) + "-" + std::to_string(idx);
    const auto [p, q] = butterfly_pairs(mode)[idx];
    const std::uint64_t base = stream(common, static_cast<std::uint64_t>(mode) * 2 + idx);
    ++pair_counter;

    ExperimentSpec spec;
    spec.mode = mode;
    spec.pair_index = idx;
    spec.noise = common.noise;
    spec.policy = common.policy;

    // Pair state tomography.
    PairStateResult pair = run_pair_experiment(spec);
    std::optional<ConfusionMatrix> pair_mitigation;
    if (options.mitigate) {
      pair_mitigation = calibrate_readout(common.noise, {p, q}, common.shots, Rng::split(base, kCalibrationStream));
    }
    StateTomography tomo =
        state_tomography(tomography_counts(pair.state, {0, 1}, ConfusionMatrix::from_noise(common.noise, {p, q}),
                                           common.shots, Rng::split(base, 0)),
                         pair_mitigation);
    const double f = fidelity(ideal_pair, tomo.rho);
    WitnessResult w = gme_witness_from_fidelity(f, pair_alpha);

    // Teleportation process tomography.
    std::optional<ConfusionMatrix> dest_mitigation;
    if (options.mitigate) {
      dest_mitigation =
          calibrate_readout(common.noise, {q}, common.shots, Rng::split(base, kDestinationCalibrationStream));
    }
    std::array<BasisCounts, 4> process_counts;
    Json runs = Json::array();
    double teleport_retained = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
      spec.input = process_input(k);
      ExperimentResult res = run_full_experiment(spec);
      teleport_retained = res.retained_fraction;
      process_counts[k] = tomography_counts(res.output, {0}, ConfusionMatrix::from_noise(common.noise, {q}),
                                            common.shots, Rng::split(base, kProcessStreamBase + k));
      Json r;
      r["mode"] = to_string(mode);
      r["pair"] = {p, q};
      r["input"] = {{"theta", spec.input.theta}, {"phi", spec.input.phi}};
      r["policy"] = to_string(common.policy);
      r["fidelity"] = res.fidelity;
      r["retained_fraction"] = res.retained_fraction;
      r["shots"] = common.shots;
      runs.push_back(r);
    }
    ProcessTomography process = process_tomography(process_counts, dest_mitigation);
    const Choi& choi = process.choi;
    BlochPoint center = best_cap_center(choi);
    std::vector<CapPoint> curve = cap_curve(choi, center, cap_angle_grid(options.cap_points));
    Json grid = Json::array();
    for (const BlochPoint& bp : fibonacci_cap({0.0, 0.0}, std::numbers::pi, options.grid_points)) {
      double pf = per_state_fidelity(choi, bp.theta, bp.phi);
      grid.push_back({{"theta", bp.theta}, {"phi", bp.phi}, {"F", pf}});
      csv += label + "," + fmt(bp.theta) + "," + fmt(bp.phi) + "," + fmt(pf) + "\n";
    }

    Json r;
    r["pair"] = label;
    r["qubits"] = {p, q};
    r["F"] = f;
    r["P"] = purity(tomo.rho);
    r["C"] = concurrence(tomo.rho);
    r["alpha"] = w.alpha;
    r["witness"] = w.witness;
    r["F_ave"] = average_gate_fidelity(choi);
    r["F_pro"] = process_fidelity(choi);
    r["retained_fraction"] = {{"pair", pair.retained_fraction}, {"teleport", teleport_retained}};
    r["projection_residual"] = tomo.projection_residual;
    r["cp_residual"] = process.cp_residual;
    r["tp_residual"] = process.tp_residual;
    r["cap_center"] = {{"theta", center.theta}, {"phi", center.phi}};
    r["cap_curve"] = cap_curve_json(curve);
    r["exceeds_classical"] = exceed_range_json(curve);
    r["bloch_grid"] = grid;
    r["teleport_runs"] = runs;
    reports.push_back(r);
    summary += (summary.empty() ? "" : "; ") + label + " F=" + fmt(f) + " C=" + fmt(concurrence(tomo.rho)) +
               " F_ave=" + fmt(average_gate_fidelity(choi));
  }

  Json j = run_header("mqnc", common);
  j["policy"] = to_string(common.policy);
  j["mitigated"] = options.mitigate;
  j["classical_reference"] = 2.0 / 3.0;
  j["reports"] = reports;
  CommandOutput out;
  out.json = j;
  out.csv = csv;
  out.summary = summary;
  return out;
}

CommandOutput cmd_switch(const CommonOptions& common, const SwitchOptions& options) {
  if (options.random_outcomes && !common.seed) throw Error("--random-outcomes needs --seed");
  SwitchNetwork net = build_switch(options.k);
  Json j = run_header("switch", common);
  j["k"] = net.k;
  j["qubits"] = net.num_qubits();
  j["switches"] = net.switches.size();
  CommandOutput out;

  auto run_one = [&](const std::vector<std::size_t>& perm, std::uint64_t seed_stream) {
    Schedule schedule = route(net, perm);
    OutcomeSource outcomes;
    std::shared_ptr<Rng> rng;
    if (options.random_outcomes) {
      rng = std::make_shared<Rng>(stream(common, seed_stream));
      outcomes = [rng](std::size_t) { return static_cast<std::uint8_t>(rng->next() & 1u); };
    }
    GraphState g = execute_schedule(net, schedule, outcomes);
    return std::make_tuple(schedule, g, verify_matching(net, perm, g));
  };

  if (options.verify_all) {
    std::vector<std::size_t> perm(net.k);
    for (std::size_t i = 0; i < net.k; ++i) perm[i] = i;
    std::size_t total = 0, passed = 0;
    Json failures = Json::array();
    do {
      auto [schedule, g, ok] = run_one(perm, total);
      ++total;
      if (ok) {
        ++passed;
      } else if (failures.size() < 10) {
        failures.push_back(perm);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    j["permutations"] = total;
    j["passed"] = passed;
    j["failures"] = failures;
    j["verified"] = passed == total;
    out.csv = "k,permutations,passed\n" + std::to_string(net.k) + "," + std::to_string(total) + "," +
              std::to_string(passed) + "\n";
    out.summary = "switch k=" + std::to_string(net.k) + ": " + std::to_string(passed) + "/" + std::to_string(total) +
                  " permutations verified";
    out.json = j;
    if (passed != total) throw VerificationError(out.summary);
    return out;
  }

  std::vector<std::size_t> perm = options.permutation;
  if (perm.empty()) {
    for (std::size_t i = 0; i < net.k; ++i) perm.push_back(i);
  }
  auto [schedule, g, ok] = run_one(perm, 0);
  j["permutation"] = perm;
  j["network"] = switch_network_to_json(net);
  j["schedule"] = schedule_to_json(schedule);
  Json matching = Json::array();
  for (std::size_t i = 0; i < net.k; ++i) {
    std::size_t dst = perm[i];
    matching.push_back({{"source", i},
                        {"destination", dst},
                        {"qubits", {net.sources[i], net.destinations[dst]}},
                        {"linked", g.has_edge(net.sources[i], net.destinations[dst])}});
  }
  j["matching"] = matching;
  j["final_graph"] = graph_to_json(g);
  j["verified"] = ok;
  std::string csv = "round,basis,qubits\n";
  for (std::size_t r = 0; r < schedule.rounds.size(); ++r) {
    for (const ScheduleEntry& e : schedule.rounds[r]) {
      csv += std::to_string(r) + "," + to_string(e.basis) + "," + join(e.qubits, ' ') + "\n";
    }
  }
  out.json = j;
  out.csv = csv;
  out.summary = "switch k=" + std::to_string(net.k) + " permutation " + join(perm, ',') +
                (ok ? " verified" : " FAILED verification");
  if (!ok) throw VerificationError(out.summary);
  return out;
}

CommandOutput cmd_compile(const CommonOptions& common, const CompileOptions& options) {
  Topology topo = load_topology(common.topology);
  Json j;
  j["command"] = "compile";
  CommandOutput out;
  RewirePlan plan;
  GraphState target;
  std::string method;

  if (options.switch_k) {
    std::size_t k = *options.switch_k;
    if (topo.coords().empty()) {
      auto [rows, cols] = switch_patch_dims(k);
      topo = Topology::heavy_hex(rows, cols);
    }
    target = build_switch(k).graph;
    plan = embed_switch_heavy_hex(k, topo);
    method = "switch-embedding";
  } else {
    if (options.target == "butterfly") {
      target = butterfly_graph();
    } else if (options.target == "triangle") {
      target = triangle();
    } else {
      target = graph_from_json(read_json_file(options.target));
    }
    if (options.plan_file) {
      plan = plan_from_json(read_json_file(*options.plan_file));
      method = "file";
    } else if (options.target == "butterfly") {
      CompiledResource c = compile_butterfly(topo, options.map, options.budget);
      plan = c.plan;
      method = c.method;
    } else if (!options.map.empty()) {
      if (options.map.size() != target.size()) throw Error("--map must list one device qubit per target qubit");
      for (std::size_t q : options.map) {
        if (q >= topo.size()) throw Error("map names qubit " + std::to_string(q) + " outside the topology");
      }
      try {
        plan = plan_target_graph(topo, target, options.map, options.budget);
      } catch (const PlanError& e) {
        throw VerificationError(e.what());
      }
      method = "search";
    } else {
      plan = auto_place(topo, target, options.budget);
      method = "search";
    }
  }

  PlanReport report = verify_plan(plan, target, topo);
  j["topology"] = topology_to_json(topo);
  j["target"] = graph_to_json(target);
  j["method"] = method;
  j["map"] = plan.logical_to_physical;
  j["plan"] = plan_to_json(plan);
  j["steps"] = plan.steps.size();
  j["two_qubit_gates"] = report.two_qubit_gates;
  j["counts"] = {{"CZ", plan.count(PlanOp::CZ)}, {"LC", plan.count(PlanOp::LC)}, {"Y", plan.count(PlanOp::Y)}};
  j["verified"] = report.ok();
  j["message"] = report.message;
  j["failed_step"] = report.failed_step ? Json(*report.failed_step) : Json(nullptr);
  j["physical_edges"] = edges_json(report.physical_edges);
  if (!options.switch_k && report.valid && plan.logical_to_physical.size() == target.size()) {
    SwapBaseline base = swap_baseline_count(topo, target, plan.logical_to_physical);
    j["swap_baseline"] = {{"cz_equivalent", base.cz_equivalent}, {"swap_as_one", base.swap_as_one}};
  }
  std::string csv = "step,op,qubits\n";
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    csv += std::to_string(i) + "," + to_string(plan.steps[i].op) + "," + join(plan.steps[i].qubits, ' ') + "\n";
  }
  out.json = j;
  out.csv = csv;
  out.summary = "compile " + method + ": " + std::to_string(report.two_qubit_gates) + " two-qubit gates, " +
                (report.ok() ? "verified" : "FAILED: " + report.message);
  if (!report.ok()) throw VerificationError(out.summary);
  return out;
}

CommandOutput cmd_cap(const CommonOptions& common, const CapOptions& options) {
  (void)common;
  int sources = (options.choi_file ? 1 : 0) + (options.channel ? 1 : 0) + (options.samples_file ? 1 : 0);
  if (sources != 1) throw Error("cap needs exactly one of --choi, --channel or --samples");
  if (options.points < 2) throw Error("--points must be at least 2");
  if (options.resolution < 4) throw Error("--resolution must be at least 4");
  ClassicalBound bound;
  if (options.bound_file) {
    Json bj = read_json_file(*options.bound_file);
    if (!bj.is_object() || !bj.contains("bound") || !bj["bound"].is_array()) {
      throw Error("bound file: expected {\"bound\": [[theta0, value], ...]}");
    }
    std::vector<std::pair<double, double>> pts;
    for (const Json& p : bj["bound"]) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
        throw Error("bound file: every entry must be [theta0, value]");
      }
      pts.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    bound = ClassicalBound::table(pts);
  }
  std::vector<double> thetas = cap_angle_grid(options.points);

  Json j;
  j["command"] = "cap";
  std::vector<CapPoint> curve;
  BlochPoint center;
  if (options.samples_file) {
    Json sj = read_json_file(*options.samples_file);
    if (!sj.is_object() || !sj.contains("bloch_grid") || !sj["bloch_grid"].is_array() || sj["bloch_grid"].empty()) {
      throw Error("samples file: expected a non-empty \"bloch_grid\" array");
    }
    std::vector<std::pair<Eigen::Vector3d, double>> samples;
    double best = -1.0;
    for (const Json& s : sj["bloch_grid"]) {
      if (!s.is_object() || !s.contains("theta") || !s.contains("phi") || !s.contains("F") || !s["theta"].is_number() ||
          !s["phi"].is_number() || !s["F"].is_number()) {
        throw Error("samples file: every sample needs numeric theta, phi and F");
      }
      BlochPoint bp{s["theta"].get<double>(), s["phi"].get<double>()};
      double f = s["F"].get<double>();
      samples.emplace_back(bloch_vector(bp), f);
      if (f > best) {
        best = f;
        center = bp;
      }
    }
    Eigen::Vector3d c = bloch_vector(center);
    for (double t : thetas) {
      double acc = 0.0;
      std::size_t n = 0;
      for (const auto& [v, f] : samples) {
        if (std::acos(std::clamp(v.dot(c), -1.0, 1.0)) <= t + 1e-12) {
          acc += f;
          ++n;
        }
      }
      curve.push_back({t, acc / static_cast<double>(n), bound.at(t)});
    }
    j["source"] = "samples";
    j["samples"] = samples.size();
  } else {
    Choi choi;
    if (options.choi_file) {
      choi = choi_from_json(read_json_file(*options.choi_file));
      if (std::abs(choi.j.trace().real() - 2.0) > 1e-6) throw Error("choi file: trace must be 2");
      j["source"] = "choi";
    } else {
      choi = choi_from_kraus(channel_preset(*options.channel));
      j["source"] = "channel:" + *options.channel;
    }
    center = best_cap_center(choi, options.resolution);
    curve = cap_curve(choi, center, thetas, bound, options.resolution);
    j["F_ave"] = average_gate_fidelity(choi);
    j["resolution"] = options.resolution;
  }
  j["cap_center"] = {{"theta", center.theta}, {"phi", center.phi}};
  j["classical_reference"] = 2.0 / 3.0;
  j["bound_table"] = options.bound_file.has_value();
  j["cap_curve"] = cap_curve_json(curve);
  j["exceeds_classical"] = exceed_range_json(curve);
  std::string csv = "theta0,F_cap,bound,classical_reference\n";
  for (const CapPoint& p : curve) {
    csv += fmt(p.theta0) + "," + fmt(p.fidelity) + "," + fmt(p.bound) + "," + fmt(2.0 / 3.0) + "\n";
  }
  CommandOutput out;
  out.json = j;
  out.csv = csv;
  Json range = exceed_range_json(curve);
  out.summary = "cap curve: " + (range.is_null() ? std::string("never exceeds the bound")
                                                  : "exceeds the bound for theta0 in [" + fmt(range[0].get<double>()) +
                                                        ", " + fmt(range[1].get<double>()) + "]");
  return out;
}

}  // namespace mqnc
