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

#include "mqnc/sampling.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"

#include "mqnc/error.hpp"

using namespace mqnc;

TEST(Sampling, perfect_readout_of_zero) {
  auto recs = sample_shots(DenseState::zeros(1), {0}, {Basis::Z}, 500, NoiseModel::noiseless(), 1);
  ASSERT_EQ(recs.size(), 500u);
  for (const auto& r : recs) EXPECT_EQ(r.bits, "0");
}

TEST(Sampling, readout_flips_are_binomial) {
  const std::size_t n = 10000;
  auto recs = sample_shots(DenseState::zeros(1), {0}, {Basis::Z}, n, NoiseModel::uniform(0, 0, 0.1), 42);
  const double ones = count_shots(recs)["1"];
  const double sigma = std::sqrt(n * 0.1 * 0.9);
  EXPECT_NEAR(ones, 0.1 * n, 4 * sigma);
}

TEST(Sampling, graph_pair_parity) {
  DenseState pair = build_graph_state(2, std::vector<Edge>{{0, 1}});
  auto recs = sample_shots(pair, {0, 1}, {Basis::X, Basis::Z}, 2000, NoiseModel::noiseless(), 3);
  for (const auto& r : recs) EXPECT_TRUE(r.bits == "00" || r.bits == "11") << r.bits;
}

TEST(Sampling, y_basis_rotation) {
  DenseState s = DenseState::zeros(1);
  s.apply_1q(0, gates::hadamard());
  s.apply_1q(0, gates::phase(std::acos(-1.0) / 2));
  Eigen::VectorXd p = outcome_distribution(s, {0}, {Basis::Y});
  EXPECT_NEAR(p[0], 1.0, 1e-12);
}

TEST(Sampling, seeded_determinism) {
  DenseState s = build_graph_state(3, std::vector<Edge>{{0, 1}, {1, 2}});
  auto a = sample_shots(s, {0, 2}, {Basis::Z, Basis::Y}, 300, NoiseModel::uniform(0, 0, 0.05), 9);
  auto b = sample_shots(s, {0, 2}, {Basis::Z, Basis::Y}, 300, NoiseModel::uniform(0, 0, 0.05), 9);
  auto c = sample_shots(s, {0, 2}, {Basis::Z, Basis::Y}, 300, NoiseModel::uniform(0, 0, 0.05), 10);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  EXPECT_NE(Rng::split(1, 0), Rng::split(1, 1));
}

TEST(Mitigation, identity_confusion_keeps_counts) {
  Counts c = {{"00", 10}, {"01", 5}, {"11", 1}};
  Counts m = mitigate(c, ConfusionMatrix::tensor({Eigen::Matrix2d::Identity(), Eigen::Matrix2d::Identity()}));
  EXPECT_NEAR(m["00"], 10, 1e-12);
  EXPECT_NEAR(m["01"], 5, 1e-12);
  EXPECT_NEAR(m["10"], 0, 1e-12);
  EXPECT_NEAR(m["11"], 1, 1e-12);
}

TEST(Mitigation, sampled_flips_concentrate_after_inversion) {
  auto noise = NoiseModel::uniform(0, 0, 0.1);
  auto recs = sample_shots(DenseState::zeros(1), {0}, {Basis::Z}, 10000, noise, 77);
  Counts m = mitigate(count_shots(recs), ConfusionMatrix::from_noise(noise, {0}));
  EXPECT_GE(m["0"] / 10000.0, 0.99);
}

TEST(Mitigation, probability_level_round_trip) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 0.2);
  std::vector<Eigen::Matrix2d> per;
  for (int q = 0; q < 3; ++q) {
    const double a = u(rng), b = u(rng);
    Eigen::Matrix2d m;
    m << 1 - a, a, b, 1 - b;
    per.push_back(m);
  }
  auto conf = ConfusionMatrix::tensor(per);
  Eigen::VectorXd ideal = Eigen::VectorXd::Random(8).cwiseAbs();
  ideal /= ideal.sum();
  Counts noisy = vector_to_counts(conf.apply(ideal), 1.0);
  Counts back = mitigate(noisy, conf);
  for (Eigen::Index i = 0; i < 8; ++i) EXPECT_NEAR(back[bit_string(i, 3)], ideal[i], 1e-9);
}

TEST(Mitigation, singular_confusion_rejected) {
  Eigen::Matrix2d constant;
  constant << 0.5, 0.5, 0.5, 0.5;
  EXPECT_THROW(mitigate(Counts{{"0", 3}, {"1", 1}}, ConfusionMatrix::single(constant)), Error);
  Eigen::Matrix2d bad;
  bad << 0.5, 0.6, 0.5, 0.5;
  EXPECT_THROW(ConfusionMatrix::single(bad), Error);
}

TEST(Postselect, fractions_and_flags) {
  std::vector<ShotRecord> recs = {{"00", true}, {"01", true}, {"10", true}, {"11", true}};
  auto all = postselect(recs, std::set<std::string>{"00", "01", "10", "11"});
  EXPECT_DOUBLE_EQ(all.retained_fraction, 1.0);
  auto one = postselect(recs, std::set<std::string>{"00"});
  EXPECT_DOUBLE_EQ(one.retained_fraction, 0.25);
  EXPECT_EQ(one.kept, 1u);
  for (std::size_t i = 0; i < recs.size(); ++i) EXPECT_EQ(one.records[i].bits, recs[i].bits);
  auto none = postselect(recs, std::set<std::string>{"22"});
  EXPECT_TRUE(none.empty());
  EXPECT_THROW(postselect(recs, std::set<std::string>{}), Error);
}

TEST(Calibration, joint_and_tensor_estimates) {
  NoiseModel noise = NoiseModel::uniform(0, 0, 0.05);
  noise.readout_overrides[1] << 0.9, 0.1, 0.2, 0.8;
  auto exact = calibrate_readout(noise, {0, 1}, 0, 1);
  auto joint = calibrate_readout(noise, {0, 1}, 20000, 1);
  EXPECT_LT((joint.matrix() - exact.matrix()).cwiseAbs().maxCoeff(), 0.02);
  auto tensor = calibrate_readout(noise, {0, 1, 2, 3}, 20000, 1);
  EXPECT_EQ(tensor.num_qubits(), 4u);
  auto exact4 = calibrate_readout(noise, {0, 1, 2, 3}, 0, 1);
  EXPECT_LT((tensor.matrix() - exact4.matrix()).cwiseAbs().maxCoeff(), 0.02);
}
