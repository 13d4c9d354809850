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

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"

#include "mqnc/error.hpp"

using namespace mqnc;

namespace {

// 200 roughly uniform Bloch points: golden-angle spiral in cos(theta).
std::vector<InputState> bloch_grid(std::size_t n) {
  std::vector<InputState> out;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / static_cast<double>(n);
    const double phi = std::fmod(golden * static_cast<double>(i), 2.0 * std::numbers::pi);
    out.push_back({std::acos(z), phi});
  }
  return out;
}

double fidelity_to(const InputState& in, const DenseState& out) {
  return state_overlap(DenseState::from_ket(in.ket()), out);
}

}  // namespace

TEST(NetworkCode, cross_and_straight_pairs) {
  auto [cross, gc] = run_network_code(PairMode::Cross, 0, 0);
  EXPECT_EQ(gc.edges(), (std::vector<Edge>{{0, 5}, {1, 4}}));
  EXPECT_TRUE(cross.byproduct_free());
  for (std::uint8_t m = 0; m < 4; ++m) {
    auto [cfg, g] = run_network_code(PairMode::Straight, m & 1u, m >> 1);
    EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1}, {4, 5}}));
    EXPECT_EQ(cfg.byproduct_free(), m == 0);
    auto [cfgx, gx] = run_network_code(PairMode::Cross, m & 1u, m >> 1);
    EXPECT_EQ(gx.edges(), (std::vector<Edge>{{0, 5}, {1, 4}}));
    EXPECT_EQ(cfgx.byproduct_free(), m == 0);
  }
  // The two modes never share a pair.
  auto a = butterfly_pairs(PairMode::Cross), b = butterfly_pairs(PairMode::Straight);
  for (auto x : a)
    for (auto y : b) EXPECT_FALSE((x == y) || (x.first == y.second && x.second == y.first));
}

TEST(NetworkCode, outcomes_are_uniform) {
  DenseState g6 = build_graph_state(6, butterfly_graph().edges());
  for (Basis b : {Basis::X, Basis::Z}) {
    Eigen::VectorXd p = outcome_distribution(g6, {2, 3}, {b, b});
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(p[i], 0.25, 1e-12);
  }
}

TEST(NetworkCode, frames_match_dense_projection) {
  for (PairMode mode : {PairMode::Cross, PairMode::Straight}) {
    const Basis b = mode == PairMode::Cross ? Basis::X : Basis::Z;
    for (std::uint8_t m = 0; m < 4; ++m) {
      DenseState d = build_graph_state(6, butterfly_graph().edges());
      d.measure(3, MeasureBasis::pauli(b), m >> 1, false);
      d.measure(2, MeasureBasis::pauli(b), m & 1u, false);
      auto [cfg, g] = run_network_code(mode, m & 1u, m >> 1);
      EXPECT_NEAR(state_overlap(d, dense_from_graph(g)), 1.0, 1e-9);
    }
  }
}

TEST(Teleport, basis_state_over_ideal_pair) {
  auto [cfg, g] = run_network_code(PairMode::Cross, 0, 0);
  DenseState out = teleport_over_pair(g, 0, 5, InputState{0.0, 0.0}, 0, 0);
  EXPECT_NEAR(out.expectation(PauliString::parse("Z")), 1.0, 1e-12);
  EXPECT_NEAR(out.expectation(PauliString::parse("X")), 0.0, 1e-12);
  EXPECT_NEAR(out.expectation(PauliString::parse("Y")), 0.0, 1e-12);
}

TEST(Teleport, random_inputs_all_branches) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> th(0.0, std::numbers::pi), ph(0.0, 2 * std::numbers::pi);
  for (int trial = 0; trial < 10; ++trial) {
    InputState in{th(rng), ph(rng)};
    for (PairMode mode : {PairMode::Cross, PairMode::Straight}) {
      for (std::size_t pair = 0; pair < 2; ++pair) {
        for (std::uint8_t m = 0; m < 16; ++m) {
          auto [cfg, g] = run_network_code(mode, m & 1u, (m >> 1) & 1u);
          auto [p, q] = butterfly_pairs(mode)[pair];
          DenseState out = teleport_over_pair(g, p, q, in, (m >> 2) & 1u, m >> 3);
          ASSERT_NEAR(fidelity_to(in, out), 1.0, 1e-9);
        }
      }
    }
  }
}

TEST(Teleport, two_hop_linear_graph) {
  // |psi> on qubit 0 of the path 0-1-2; X on 0 and 1 leaves X^{s1} Z^{s0} |psi> on qubit 2.
  InputState in{1.1, 0.4};
  for (std::uint8_t m = 0; m < 4; ++m) {
    const std::uint8_t s0 = m & 1u, s1 = m >> 1;
    DenseState s = DenseState::from_ket(in.ket()).tensor(DenseState::plus(2));
    s.apply_cz(0, 1);
    s.apply_cz(1, 2);
    s.measure(0, MeasureBasis::pauli(Basis::X), s0, false);
    s.measure(0, MeasureBasis::pauli(Basis::X), s1, false);
    Ket want = in.ket();
    if (s0) want = gates::pauli_z() * want;
    if (s1) want = gates::pauli_x() * want;
    EXPECT_NEAR(state_overlap(s, DenseState::from_ket(want)), 1.0, 1e-12);
  }
}

TEST(Teleport, rejects_dead_or_unpaired_qubits) {
  auto [cfg, g] = run_network_code(PairMode::Cross, 0, 0);
  EXPECT_THROW(teleport_over_pair(g, 2, 5, InputState{}, 0, 0), QubitError);
  EXPECT_THROW(teleport_over_pair(g, 0, 1, InputState{}, 0, 0), QubitError);
  EXPECT_THROW(teleport_over_pair(g, 0, 5, InputState{4.0, 0.0}, 0, 0), Error);
}

TEST(Teleport, bloch_grid_all_routes_noiseless) {
  const auto grid = bloch_grid(200);
  for (PairMode mode : {PairMode::Cross, PairMode::Straight}) {
    for (std::size_t pair = 0; pair < 2; ++pair) {
      double worst = 1.0;
      for (const auto& in : grid) {
        ExperimentSpec spec;
        spec.mode = mode;
        spec.pair_index = pair;
        spec.input = in;
        worst = std::min(worst, run_full_experiment(spec).fidelity);
      }
      EXPECT_NEAR(worst, 1.0, 1e-9) << to_string(mode) << " pair " << pair;
    }
  }
}

TEST(Teleport, attaching_before_or_after_measurement_agrees) {
  for (const auto& in : bloch_grid(24)) {
    for (PairMode mode : {PairMode::Cross, PairMode::Straight}) {
      for (std::size_t pair = 0; pair < 2; ++pair) {
        for (std::uint8_t m = 0; m < 16; ++m) {
          DenseState before = attach_order_output(mode, pair, in, m & 1u, (m >> 1) & 1u, (m >> 2) & 1u, m >> 3,
                                                  true, false);
          DenseState after = attach_order_output(mode, pair, in, m & 1u, (m >> 1) & 1u, (m >> 2) & 1u, m >> 3,
                                                 false, false);
          ASSERT_LT((before.density_matrix() - after.density_matrix()).norm(), 1e-9);
        }
      }
    }
  }
}

TEST(FullExperiment, policies_agree_without_noise) {
  ExperimentSpec spec;
  spec.input = {0.7, 2.0};
  spec.policy = Policy::Feedforward;
  auto ff = run_full_experiment(spec);
  spec.policy = Policy::Postselect;
  auto ps = run_full_experiment(spec);
  EXPECT_NEAR(ff.fidelity, 1.0, 1e-9);
  EXPECT_NEAR(ps.fidelity, 1.0, 1e-9);
  EXPECT_NEAR(ff.retained_fraction, 1.0, 1e-9);
  EXPECT_NEAR(ps.retained_fraction, 0.25, 1e-9);
  EXPECT_LT((ff.output.density_matrix() - ps.output.density_matrix()).norm(), 1e-9);
}

TEST(FullExperiment, fidelity_falls_with_two_qubit_noise) {
  ExperimentSpec spec;
  spec.input = {1.0, 0.3};
  spec.mode = PairMode::Straight;
  spec.pair_index = 1;
  double previous = 1.0 + 1e-12;
  for (double p2 : {0.0, 0.01, 0.02, 0.04, 0.08}) {
    spec.noise = NoiseModel::uniform(0.001, p2, 0.0);
    const double f = run_full_experiment(spec).fidelity;
    EXPECT_LT(f, previous);
    previous = f;
  }
  EXPECT_LT(previous, 1.0);
}

TEST(FullExperiment, rejects_bad_spec) {
  ExperimentSpec spec;
  spec.pair_index = 2;
  EXPECT_THROW(run_full_experiment(spec), Error);
  spec.pair_index = 0;
  RewirePlan wrong;
  wrong.steps = {{PlanOp::CZ, {0, 1}, 0}};
  spec.preparation = wrong;
  EXPECT_THROW(run_full_experiment(spec), Error);
}

TEST(Shots, retention_is_one_quarter) {
  ExperimentSpec spec;
  spec.input = {0.5, 1.5};
  for (PairMode mode : {PairMode::Cross, PairMode::Straight}) {
    spec.mode = mode;
    // Pooled over ten seeded 4000-shot runs.
    double code = 0.0, tele = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      auto run = sample_butterfly_shots(spec, 4000, seed);
      code += run.network_code.retained_fraction / 10.0;
      tele += run.teleported.retained_fraction / 10.0;
    }
    const double sigma = std::sqrt(0.25 * 0.75 / 40000.0);
    EXPECT_NEAR(code, 0.25, 3 * sigma);
    EXPECT_NEAR(tele, 0.25, 3 * sigma);
  }
}

TEST(Shots, seeded_runs_repeat) {
  ExperimentSpec spec;
  spec.noise = NoiseModel::cairo_like();
  auto a = sample_butterfly_shots(spec, 500, 3);
  auto b = sample_butterfly_shots(spec, 500, 3);
  EXPECT_EQ(a.records, b.records);
}

TEST(PairExperiment, NoiselessPairsAreIdeal) {
  const DenseState ideal = dense_from_graph(GraphState::from_edges(2, std::vector<Edge>{{0, 1}}));
  for (PairMode mode : {PairMode::Cross, PairMode::Straight}) {
    for (std::size_t idx : {0u, 1u}) {
      for (Policy policy : {Policy::Postselect, Policy::Feedforward}) {
        ExperimentSpec spec;
        spec.mode = mode;
        spec.pair_index = idx;
        spec.policy = policy;
        PairStateResult r = run_pair_experiment(spec);
        EXPECT_NEAR(state_overlap(ideal, r.state), 1.0, 1e-9);
        EXPECT_NEAR(r.retained_fraction, policy == Policy::Postselect ? 0.25 : 1.0, 1e-12);
      }
    }
  }
}

TEST(PairExperiment, CentralReadoutErrorsDegradeFeedforward) {
  // A flipped report on a central qubit applies the wrong correction, which maps the pair to an
  // orthogonal graph state; each flip happens with probability e independently.
  const double e = 0.05;
  const DenseState ideal = dense_from_graph(GraphState::from_edges(2, std::vector<Edge>{{0, 1}}));
  ExperimentSpec spec;
  spec.noise = NoiseModel::uniform(0.0, 0.0, e);
  spec.policy = Policy::Feedforward;
  for (PairMode mode : {PairMode::Cross, PairMode::Straight}) {
    spec.mode = mode;
    const double f = state_overlap(ideal, run_pair_experiment(spec).state);
    EXPECT_LT(f, 1.0 - 1e-6);
    EXPECT_GE(f, (1.0 - e) * (1.0 - e) - 1e-9);
  }
}
