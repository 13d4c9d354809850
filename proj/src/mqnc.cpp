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

#include "mqnc/mqnc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mqnc/error.hpp"

namespace mqnc {

std::string to_string(PairMode m) { return m == PairMode::Cross ? "cross" : "straight"; }
std::string to_string(Policy p) { return p == Policy::Postselect ? "postselect" : "feedforward"; }

PairMode parse_pair_mode(const std::string& text) {
  if (text == "cross") return PairMode::Cross;
  if (text == "straight") return PairMode::Straight;
  throw Error("mode must be cross or straight, got '" + text + "'");
}

Policy parse_policy(const std::string& text) {
  if (text == "postselect") return Policy::Postselect;
  if (text == "feedforward") return Policy::Feedforward;
  throw Error("policy must be postselect or feedforward, got '" + text + "'");
}

std::array<std::pair<std::size_t, std::size_t>, 2> butterfly_pairs(PairMode mode) {
  if (mode == PairMode::Cross) return {{{0, 5}, {4, 1}}};
  return {{{0, 1}, {4, 5}}};
}

bool PairConfig::byproduct_free() const {
  for (const auto& pf : frames)
    for (auto f : pf)
      if (f != FrameLabel::I) return false;
  return true;
}

Ket InputState::ket() const {
  Ket k(2);
  k[0] = std::cos(theta / 2.0);
  k[1] = std::exp(cplx(0.0, phi)) * std::sin(theta / 2.0);
  return k;
}

Eigen::Vector3d InputState::bloch() const {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

void InputState::validate() const {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) throw Error("input theta must lie in [0, pi]");
  if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi)) throw Error("input phi must lie in [0, 2 pi)");
}

std::pair<PairConfig, GraphState> run_network_code(PairMode mode, std::uint8_t outcome_2, std::uint8_t outcome_3) {
  GraphState g = butterfly_graph();
  if (mode == PairMode::Cross) {
    g.measure_x_pair(2, 3, outcome_2, outcome_3);
  } else {
    g.measure_z(2, outcome_2);
    g.measure_z(3, outcome_3);
  }
  PairConfig cfg;
  cfg.mode = mode;
  cfg.pairs = butterfly_pairs(mode);
  for (std::size_t i = 0; i < 2; ++i) {
    const auto [p, q] = cfg.pairs[i];
    if (!g.has_edge(p, q)) throw Error("network code did not produce the expected pair");
    cfg.frames[i] = {g.frame(p), g.frame(q)};
  }
  if (g.edge_count() != 2) throw Error("network code left stray edges");
  return {cfg, g};
}

FrameLabel teleport_byproduct(FrameLabel frame_p, FrameLabel frame_q, std::uint8_t s0, std::uint8_t s1) {
  const bool x = ((s1 & 1u) != 0) != has_z(frame_p);
  const bool z = ((s0 & 1u) != 0) != has_x(frame_p);
  return compose(frame_q, make_frame(x, z));
}

DenseState teleport_over_pair(const GraphState& g, std::size_t p, std::size_t q, const InputState& input,
                              std::uint8_t s0, std::uint8_t s1, bool correct) {
  if (p >= g.size() || !g.alive(p)) throw QubitError("teleport: pair qubit is not alive", p);
  if (q >= g.size() || !g.alive(q)) throw QubitError("teleport: pair qubit is not alive", q);
  if (!g.has_edge(p, q)) throw QubitError("teleport: qubits do not form a pair", p);
  input.validate();
  std::size_t pos_p = 0, pos_q = 0, m = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!g.alive(i)) continue;
    if (i == p) pos_p = m;
    if (i == q) pos_q = m;
    ++m;
  }
  DenseState s = dense_from_graph(g).tensor(DenseState::from_ket(input.ket()));
  s.apply_cz(pos_p, m);
  s.measure(m, MeasureBasis::pauli(Basis::X), s0 & 1u, false);
  s.measure(pos_p, MeasureBasis::pauli(Basis::X), s1 & 1u, false);
  const std::size_t keep[1] = {pos_q > pos_p ? pos_q - 1 : pos_q};
  DenseState out = s.partial_trace(keep);
  if (correct) out.apply_1q(0, gates::frame_operator(teleport_byproduct(g.frame(p), g.frame(q), s0, s1)));
  return out;
}

namespace {

void check_spec(const ExperimentSpec& spec) {
  if (spec.pair_index > 1) throw Error("pair index must be 0 or 1");
  spec.input.validate();
  spec.noise.validate();
}

}  // namespace

std::pair<std::vector<std::size_t>, std::vector<Basis>> experiment_measurements(const ExperimentSpec& spec) {
  const Basis central = spec.mode == PairMode::Cross ? Basis::X : Basis::Z;
  const std::size_t p = butterfly_pairs(spec.mode)[spec.pair_index].first;
  return {{2, 3, 6, p}, {central, central, Basis::X, Basis::X}};
}

DenseState prepare_resource_state(const std::optional<RewirePlan>& preparation, const NoiseModel& noise) {
  noise.validate();
  DenseState s = DenseState::zeros(6);
  for (std::size_t q = 0; q < 6; ++q) noisy_1q(s, q, gates::hadamard(), noise);

  const RewirePlan plan = preparation ? *preparation : butterfly_plan({0, 1, 2, 3, 4, 5});
  GraphState tracker(6);
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const PlanStep& st = plan.steps[i];
    for (auto q : st.qubits)
      if (q >= 6) throw PlanError("preparation plan must act on logical qubits 0..5", i);
    if (st.op == PlanOp::CZ) {
      if (st.qubits.size() != 2) throw PlanError("CZ step needs two qubits", i);
      noisy_cz(s, st.qubits[0], st.qubits[1], noise);
      tracker.toggle_edge(st.qubits[0], st.qubits[1]);
    } else if (st.op == PlanOp::LC) {
      const std::size_t a = st.qubits.at(0);
      const auto nbrs = tracker.neighbors(a);
      noisy_1q(s, a, gates::sqrt_x_lc(), noise);
      for (auto b : nbrs) noisy_1q(s, b, gates::sqrt_z_lc(), noise);
      tracker.local_complement(a);
    } else {
      throw PlanError("preparation plans may not measure qubits", i);
    }
  }
  if (!(tracker == butterfly_graph())) throw Error("preparation plan does not produce the butterfly resource");
  return s;
}

DenseState prepare_experiment_state(const ExperimentSpec& spec) {
  check_spec(spec);
  DenseState input = DenseState::zeros(1);
  noisy_1q(input, 0, gates::bloch_preparation(spec.input.theta, spec.input.phi), spec.noise);
  DenseState s = prepare_resource_state(spec.preparation, spec.noise).tensor(input);
  noisy_cz(s, 6, butterfly_pairs(spec.mode)[spec.pair_index].first, spec.noise);
  return s;
}

PairStateResult run_pair_experiment(const ExperimentSpec& spec) {
  check_spec(spec);
  DenseState state = prepare_resource_state(spec.preparation, spec.noise);
  state.promote();
  const Basis central = spec.mode == PairMode::Cross ? Basis::X : Basis::Z;
  const auto [p, q] = butterfly_pairs(spec.mode)[spec.pair_index];
  // Remaining indices after qubits 2 and 3 are removed.
  auto shifted = [](std::size_t x) { return x > 3 ? x - 2 : x; };
  const std::size_t keep[2] = {shifted(p), shifted(q)};

  std::array<CMatrix, 4> branch;
  for (std::size_t t = 0; t < 4; ++t) {
    DenseState s = state;
    double prob = s.project(3, MeasureBasis::pauli(central), static_cast<int>(t & 1u), false);
    prob *= s.project(2, MeasureBasis::pauli(central), static_cast<int>((t >> 1) & 1u), false);
    branch[t] = prob < 1e-15 ? CMatrix::Zero(4, 4) : CMatrix(prob * s.partial_trace(keep).density_matrix());
  }

  CMatrix out = CMatrix::Zero(4, 4);
  double retained = 0.0;
  for (std::size_t r = 0; r < 4; ++r) {
    const PairConfig cfg = run_network_code(spec.mode, (r >> 1) & 1u, r & 1u).first;
    if (spec.policy == Policy::Postselect && !cfg.byproduct_free()) continue;
    const auto& fr = cfg.frames[spec.pair_index];
    CMatrix fix(4, 4);
    const Mat2 fa = gates::frame_operator(fr[0]), fb = gates::frame_operator(fr[1]);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) fix(i, j) = fa(i / 2, j / 2) * fb(i % 2, j % 2);
    }
    for (std::size_t t = 0; t < 4; ++t) {
      const double w = spec.noise.readout_for(2)((t >> 1) & 1u, (r >> 1) & 1u) * spec.noise.readout_for(3)(t & 1u, r & 1u);
      if (w == 0.0) continue;
      out += w * fix * branch[t] * fix.adjoint();
      retained += w * branch[t].trace().real();
    }
  }
  if (retained < 1e-15) throw EmptySampleError("no branch survives post-selection");
  return {DenseState::from_density(out / retained), retained};
}

ExperimentResult run_full_experiment(const ExperimentSpec& spec) {
  DenseState state = prepare_experiment_state(spec);
  state.promote();
  const auto [qubits, bases] = experiment_measurements(spec);
  const auto [p, q] = butterfly_pairs(spec.mode)[spec.pair_index];

  // Unnormalized destination state for each true outcome string (record order 2, 3, 6, p).
  std::vector<CMatrix> branch(16, CMatrix::Zero(2, 2));
  std::vector<std::size_t> order = {0, 1, 2, 3};
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return qubits[a] > qubits[b]; });
  std::size_t q_pos = q;
  for (auto m : qubits)
    if (m < q) --q_pos;
  for (std::size_t t = 0; t < 16; ++t) {
    DenseState s = state;
    double prob = 1.0;
    for (std::size_t i : order) {
      const int bit = static_cast<int>((t >> (3 - i)) & 1u);
      prob *= s.project(qubits[i], MeasureBasis::pauli(bases[i]), bit, false);
      if (prob < 1e-15) break;
    }
    if (prob < 1e-15) continue;
    const std::size_t keep[1] = {q_pos};
    branch[t] = prob * s.partial_trace(keep).density_matrix();
  }

  CMatrix out = CMatrix::Zero(2, 2);
  double retained = 0.0;
  for (std::size_t r = 0; r < 16; ++r) {
    const std::uint8_t r2 = (r >> 3) & 1u, r3 = (r >> 2) & 1u, r6 = (r >> 1) & 1u, rp = r & 1u;
    const PairConfig cfg = run_network_code(spec.mode, r2, r3).first;
    const auto& fr = cfg.frames[spec.pair_index];
    const FrameLabel label = teleport_byproduct(fr[0], fr[1], r6, rp);
    if (spec.policy == Policy::Postselect && label != FrameLabel::I) continue;
    const Mat2 fix = gates::frame_operator(label);
    for (std::size_t t = 0; t < 16; ++t) {
      double w = 1.0;
      for (std::size_t i = 0; i < 4; ++i) {
        const int tb = static_cast<int>((t >> (3 - i)) & 1u), rb = static_cast<int>((r >> (3 - i)) & 1u);
        w *= spec.noise.readout_for(qubits[i])(tb, rb);
      }
      if (w == 0.0) continue;
      const CMatrix contrib = w * branch[t];
      out += fix * contrib * fix.adjoint();
      retained += contrib.trace().real();
    }
  }
  if (retained < 1e-15) throw EmptySampleError("no branch survives post-selection");
  ExperimentResult res;
  res.output = DenseState::from_density(out / retained);
  res.retained_fraction = retained;
  res.fidelity = state_overlap(DenseState::from_ket(spec.input.ket()), res.output);
  return res;
}

ShotExperiment sample_butterfly_shots(const ExperimentSpec& spec, std::size_t shots, std::uint64_t seed) {
  const DenseState state = prepare_experiment_state(spec);
  const auto [qubits, bases] = experiment_measurements(spec);
  ShotExperiment out;
  out.records = sample_distribution(outcome_distribution(state, qubits, bases), shots,
                                    ConfusionMatrix::from_noise(spec.noise, qubits), seed);
  out.network_code = postselect(out.records, [&](const std::string& b) {
    return run_network_code(spec.mode, b[0] == '1', b[1] == '1').first.byproduct_free();
  });
  out.teleported = postselect(out.records, [&](const std::string& b) {
    const auto& fr = run_network_code(spec.mode, b[0] == '1', b[1] == '1').first.frames[spec.pair_index];
    return teleport_byproduct(fr[0], fr[1], b[2] == '1', b[3] == '1') == FrameLabel::I;
  });
  return out;
}

DenseState attach_order_output(PairMode mode, std::size_t pair_index, const InputState& input, std::uint8_t m2,
                               std::uint8_t m3, std::uint8_t s0, std::uint8_t s1, bool attach_first, bool correct) {
  if (pair_index > 1) throw Error("pair index must be 0 or 1");
  const auto [p, q] = butterfly_pairs(mode)[pair_index];
  const auto [cfg, g] = run_network_code(mode, m2, m3);
  if (!attach_first) return teleport_over_pair(g, p, q, input, s0, s1, correct);
  DenseState s = build_graph_state(6, butterfly_graph().edges()).tensor(DenseState::from_ket(input.ket()));
  s.apply_cz(6, p);
  const Basis central = mode == PairMode::Cross ? Basis::X : Basis::Z;
  // Remove qubits from the highest index down so the remaining indices stay put.
  std::vector<std::pair<std::size_t, std::uint8_t>> meas = {{2, m2}, {3, m3}, {6, s0}, {p, s1}};
  std::sort(meas.begin(), meas.end(), [](auto& a, auto& b) { return a.first > b.first; });
  for (auto [qubit, bit] : meas) {
    const Basis b = (qubit == 2 || qubit == 3) ? central : Basis::X;
    s.measure(qubit, MeasureBasis::pauli(b), bit & 1u, false);
  }
  std::size_t q_pos = q;
  for (auto [qubit, bit] : meas)
    if (qubit < q) --q_pos;
  const std::size_t keep[1] = {q_pos};
  DenseState out = s.partial_trace(keep);
  if (correct) {
    const auto& fr = cfg.frames[pair_index];
    out.apply_1q(0, gates::frame_operator(teleport_byproduct(fr[0], fr[1], s0, s1)));
  }
  return out;
}

}  // namespace mqnc
