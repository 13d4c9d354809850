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

#include "mqnc/tomography.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"

#include "mqnc/error.hpp"
#include "mqnc/metrics.hpp"
#include "mqnc/noise.hpp"

using namespace mqnc;

namespace {

CMatrix random_density(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix a(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = cplx(g(rng), g(rng));
  }
  CMatrix rho = a * a.adjoint();
  return rho / rho.trace().real();
}

// Channel output through the Kraus list, independent of the Choi representation.
CMatrix kraus_apply(const std::vector<CMatrix>& kraus, const CMatrix& rho) {
  CMatrix out = CMatrix::Zero(2, 2);
  for (const CMatrix& k : kraus) out += k * rho * k.adjoint();
  return out;
}

std::array<BasisCounts, 4> exact_process_counts(const std::vector<CMatrix>& kraus) {
  std::array<BasisCounts, 4> out;
  for (std::size_t i = 0; i < 4; ++i) {
    Ket in = process_input_state(i);
    DenseState s = DenseState::from_density(kraus_apply(kraus, in * in.adjoint()));
    out[i] = exact_basis_counts(s, {0});
  }
  return out;
}

// Per-state fidelity for a channel symmetric about z, as a function of the polar angle only.
double axial_fidelity(const std::vector<CMatrix>& kraus, double theta) {
  Ket psi(2);
  psi << std::cos(theta / 2.0), std::sin(theta / 2.0);
  return psi.dot(kraus_apply(kraus, psi * psi.adjoint()) * psi).real();
}

// Composite Simpson quadrature of the area-weighted cap average.
double axial_cap_average(const std::vector<CMatrix>& kraus, double theta0) {
  const int n = 4000;
  double h = theta0 / n, acc = 0.0;
  for (int i = 0; i <= n; ++i) {
    double t = i * h;
    double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    acc += w * axial_fidelity(kraus, t) * std::sin(t);
  }
  return acc * h / 3.0 / (1.0 - std::cos(theta0));
}

}  // namespace

TEST(StateTomography, BasesEnumeration) {
  EXPECT_EQ(tomography_bases(1), (std::vector<std::string>{"X", "Y", "Z"}));
  EXPECT_EQ(tomography_bases(3).size(), 27u);
  EXPECT_EQ(tomography_bases(2)[5], "YZ");
  EXPECT_THROW(tomography_bases(0), Error);
}

TEST(StateTomography, ExactCountsReconstructTheState) {
  std::mt19937_64 rng(11);
  for (std::size_t m : {1u, 2u, 3u}) {
    CMatrix rho = random_density(std::size_t{1} << m, rng);
    std::vector<std::size_t> qubits;
    for (std::size_t q = 0; q < m; ++q) qubits.push_back(q);
    StateTomography t = state_tomography(exact_basis_counts(DenseState::from_density(rho), qubits, 500.0));
    EXPECT_LT((t.linear - rho).norm(), 1e-10);
    EXPECT_LT((t.rho - rho).norm(), 1e-9);
    EXPECT_LT(t.projection_residual, 1e-9);
  }
}

TEST(StateTomography, SubsetOfQubitsGivesReducedState) {
  std::mt19937_64 rng(12);
  CMatrix rho = random_density(8, rng);
  DenseState s = DenseState::from_density(rho);
  std::vector<std::size_t> keep{2, 0};
  StateTomography t = state_tomography(exact_basis_counts(s, keep));
  EXPECT_LT((t.linear - s.partial_trace(keep).density_matrix()).norm(), 1e-10);
}

TEST(StateTomography, MitigationReducesReadoutBias) {
  CMatrix bell = CMatrix::Zero(4, 4);
  bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
  DenseState s = DenseState::from_density(bell);
  NoiseModel noise = NoiseModel::uniform(0.0, 0.0, 0.08);
  BasisCounts counts = sampled_basis_counts(s, {0, 1}, 20000, noise, 99);
  StateTomography raw = state_tomography(counts);
  StateTomography mit = state_tomography(counts, ConfusionMatrix::from_noise(noise, {0, 1}));
  EXPECT_TRUE(mit.mitigated);
  double f_raw = fidelity(raw.rho, bell), f_mit = fidelity(mit.rho, bell);
  // Symmetric flips at rate e shrink every two-body correlator by (1 - 2e)^2.
  EXPECT_NEAR(f_raw, (1.0 + 3.0 * std::pow(1.0 - 0.16, 2)) / 4.0, 0.01);
  EXPECT_GT(f_mit, f_raw + 0.05);
  EXPECT_GT(f_mit, 0.98);
  EXPECT_NEAR(purity(mit.rho), 1.0, 0.05);
}

TEST(StateTomography, ProjectedEstimateIsPhysical) {
  BasisCounts counts = sampled_basis_counts(dense_from_graph(GraphState::from_edges(2, std::vector<Edge>{{0, 1}})),
                                            {0, 1}, 50, NoiseModel::noiseless(), 3);
  StateTomography t = state_tomography(counts);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(t.rho);
  EXPECT_GE(es.eigenvalues().minCoeff(), -1e-12);
  EXPECT_NEAR(t.rho.trace().real(), 1.0, 1e-12);
}

TEST(StateTomography, BadInputThrows) {
  BasisCounts counts = exact_basis_counts(DenseState::plus(1), {0});
  counts.erase("Y");
  EXPECT_THROW(state_tomography(counts), Error);
  EXPECT_THROW(state_tomography({}), Error);
  BasisCounts empty = exact_basis_counts(DenseState::plus(1), {0});
  empty["X"].clear();
  EXPECT_THROW(state_tomography(empty), EmptySampleError);
}

TEST(Choi, KrausAndApplyAgree) {
  std::mt19937_64 rng(13);
  for (const std::string& name : {"identity", "depolarizing:0.3", "amplitude-damping:0.4", "damping", "phase-flip:0.2"}) {
    std::vector<CMatrix> kraus = channel_preset(name);
    Choi c = choi_from_kraus(kraus);
    EXPECT_NEAR(c.j.trace().real(), 2.0, 1e-12);
    EXPECT_LT((c.input_marginal() - CMatrix::Identity(2, 2)).norm(), 1e-12);
    for (int t = 0; t < 5; ++t) {
      CMatrix rho = random_density(2, rng);
      EXPECT_LT((c.apply(rho) - kraus_apply(kraus, rho)).norm(), 1e-12) << name;
    }
  }
}

TEST(ProcessTomography, ExactCountsRecoverTheChoi) {
  for (const std::string& name : {"identity", "depolarizing:0.25", "amplitude-damping:0.3", "damping", "bit-flip:0.1"}) {
    std::vector<CMatrix> kraus = channel_preset(name);
    ProcessTomography p = process_tomography(exact_process_counts(kraus));
    Choi expected = choi_from_kraus(kraus);
    EXPECT_LT((p.raw.j - expected.j).norm(), 1e-10) << name;
    EXPECT_LT((p.choi.j - expected.j).norm(), 1e-8) << name;
    EXPECT_LT(p.cp_residual, 1e-10);
    EXPECT_LT(p.tp_residual, 1e-10);
  }
}

TEST(ProcessTomography, SampledEstimateIsCpAndTp) {
  std::vector<CMatrix> kraus = channel_preset("amplitude-damping:0.5");
  std::array<BasisCounts, 4> counts;
  for (std::size_t i = 0; i < 4; ++i) {
    Ket in = process_input_state(i);
    DenseState s = DenseState::from_density(kraus_apply(kraus, in * in.adjoint()));
    counts[i] = sampled_basis_counts(s, {0}, 200, NoiseModel::noiseless(), 40 + i);
  }
  ProcessTomography p = process_tomography(counts);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(p.choi.j);
  EXPECT_GE(es.eigenvalues().minCoeff(), -1e-12);
  EXPECT_LT((p.choi.input_marginal() - CMatrix::Identity(2, 2)).norm(), 1e-10);
  EXPECT_NEAR(average_gate_fidelity(p.choi), average_gate_fidelity(choi_from_kraus(kraus)), 0.05);
}

TEST(GateFidelity, ClosedForms) {
  EXPECT_NEAR(average_gate_fidelity(choi_from_kraus(channel_preset("identity"))), 1.0, 1e-12);
  for (double p : {0.0, 0.1, 0.5, 1.0}) {
    Choi dep = choi_from_kraus(channels::depolarizing(p));
    EXPECT_NEAR(average_gate_fidelity(dep), 1.0 - p / 2.0, 1e-12);
    EXPECT_NEAR(average_gate_fidelity_monte_carlo(dep, 2000, 5), 1.0 - p / 2.0, 1e-3);
    Choi pf = choi_from_kraus(channels::phase_flip(p));
    EXPECT_NEAR(process_fidelity(pf), 1.0 - p, 1e-12);
    EXPECT_NEAR(average_gate_fidelity(pf), 1.0 - 2.0 * p / 3.0, 1e-12);
  }
  // A deterministic Z flip is unitary yet far from the identity; complete dephasing sits at 2/3.
  EXPECT_NEAR(average_gate_fidelity(choi_from_kraus(channels::phase_flip(1.0))), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(average_gate_fidelity(choi_from_kraus(channel_preset("dephasing"))), 2.0 / 3.0, 1e-12);
  for (double g : {0.0, 0.3, 0.7, 1.0}) {
    double f_pro = std::pow(1.0 + std::sqrt(1.0 - g), 2) / 4.0;
    EXPECT_NEAR(process_fidelity(choi_from_kraus(channels::amplitude_damping(g))), f_pro, 1e-12);
  }
}

TEST(GateFidelity, MonteCarloAgreesForAnisotropicChannels) {
  for (const std::string& name : {"damping", "amplitude-damping:0.6", "phase-flip:0.3"}) {
    Choi c = choi_from_kraus(channel_preset(name));
    EXPECT_NEAR(average_gate_fidelity_monte_carlo(c, 400000, 17), average_gate_fidelity(c), 1e-3) << name;
  }
}

TEST(GateFidelity, PerStateMatchesKraus) {
  std::vector<CMatrix> kraus = channel_preset("damping");
  Choi c = choi_from_kraus(kraus);
  for (double theta : {0.0, 0.4, 1.5, 3.0}) {
    for (double phi : {0.0, 1.0, 4.0}) {
      Ket psi = gates::bloch_preparation(theta, phi).col(0);
      double expected = psi.dot(kraus_apply(kraus, psi * psi.adjoint()) * psi).real();
      EXPECT_NEAR(per_state_fidelity(c, theta, phi), expected, 1e-12);
    }
  }
}

TEST(Cap, PointsLieInsideTheCap) {
  BlochPoint center{1.1, 2.3};
  Eigen::Vector3d c = bloch_vector(center);
  std::vector<BlochPoint> pts = fibonacci_cap(center, 0.4, 1001);
  EXPECT_EQ(pts.size(), 1004u);
  for (const BlochPoint& p : pts) EXPECT_LE(std::acos(std::min(1.0, bloch_vector(p).dot(c))), 0.4 + 1e-9);
  EXPECT_THROW(fibonacci_cap(center, 0.0, 100), Error);
}

TEST(Cap, FullSphereEqualsAverageGateFidelity) {
  std::mt19937_64 rng(21);
  std::vector<std::vector<CMatrix>> chans{channel_preset("damping"), channel_preset("amplitude-damping:0.8"),
                                          channel_preset("phase-flip:0.4")};
  // A channel without any symmetry: amplitude damping conjugated by a generic rotation.
  Mat2 u = gates::bloch_preparation(0.7, 1.9) * gates::rz(0.4);
  std::vector<CMatrix> rotated;
  for (const CMatrix& k : channels::amplitude_damping(0.5)) rotated.push_back(u * k * u.adjoint());
  chans.push_back(rotated);
  for (const auto& kraus : chans) {
    Choi c = choi_from_kraus(kraus);
    for (BlochPoint center : {BlochPoint{0.0, 0.0}, BlochPoint{2.0, 0.5}}) {
      EXPECT_NEAR(cap_average_fidelity(c, center, std::numbers::pi), average_gate_fidelity(c), 1e-6);
    }
  }
}

TEST(Cap, MatchesAxialQuadrature) {
  std::vector<CMatrix> kraus = channel_preset("damping");
  Choi c = choi_from_kraus(kraus);
  for (double t0 : {0.05, 0.3, 1.0, 2.0, 3.0}) {
    EXPECT_NEAR(cap_average_fidelity(c, {0.0, 0.0}, t0), axial_cap_average(kraus, t0), 1e-6) << t0;
  }
}

TEST(Cap, AngleValidation) {
  Choi c = choi_from_kraus(channel_preset("identity"));
  EXPECT_THROW(cap_average_fidelity(c, {0.0, 0.0}, 0.04), Error);
  EXPECT_THROW(cap_average_fidelity(c, {0.0, 0.0}, 3.5), Error);
  EXPECT_NO_THROW(cap_average_fidelity(c, {0.0, 0.0}, kMinCapAngle));
}

TEST(Cap, DampingCurveCrossesClassicalBound) {
  Choi c = choi_from_kraus(channel_preset("damping"));
  double f_ave = average_gate_fidelity(c);
  EXPECT_NEAR(f_ave, (1.0 + 0.4 * (2.0 * std::sqrt(0.7) / 3.0 + 0.7 / 3.0)) / 2.0, 1e-12);
  EXPECT_LT(f_ave, 2.0 / 3.0);
  BlochPoint center = best_cap_center(c);
  EXPECT_LT(center.theta, 1e-3);
  std::vector<CapPoint> curve = cap_curve(c, center, cap_angle_grid(40));
  std::vector<CapPoint> fine = cap_curve(c, center, cap_angle_grid(40), {}, 10 * kDefaultCapResolution);
  ASSERT_EQ(curve.size(), fine.size());
  EXPECT_TRUE(curve.front().exceeds());
  EXPECT_FALSE(curve.back().exceeds());
  for (std::size_t i = 0; i < curve.size(); ++i) {
    EXPECT_NEAR(curve[i].fidelity, fine[i].fidelity, 1e-6);
    EXPECT_EQ(curve[i].exceeds(), fine[i].exceeds());
    if (i > 0) EXPECT_LE(curve[i].fidelity, curve[i - 1].fidelity + 1e-12);
  }
}

TEST(Cap, BestCenterFindsRotatedFixedPoint) {
  std::vector<CMatrix> kraus;
  for (const CMatrix& k : channels::amplitude_damping(0.6)) kraus.push_back(gates::hadamard() * k * gates::hadamard());
  BlochPoint p = best_cap_center(choi_from_kraus(kraus));
  Eigen::Vector3d v = bloch_vector(p);
  EXPECT_NEAR(v.x(), 1.0, 1e-5);
}

TEST(ClassicalBoundTable, InterpolatesAndValidates) {
  EXPECT_DOUBLE_EQ(ClassicalBound().at(1.0), 2.0 / 3.0);
  ClassicalBound b = ClassicalBound::table({{1.0, 0.8}, {0.0, 1.0}, {2.0, 2.0 / 3.0}});
  EXPECT_DOUBLE_EQ(b.at(-1.0), 1.0);
  EXPECT_NEAR(b.at(0.5), 0.9, 1e-12);
  EXPECT_DOUBLE_EQ(b.at(3.0), 2.0 / 3.0);
  EXPECT_THROW(ClassicalBound::table({{0.0, 0.7}, {1.0, 0.8}}), Error);
  EXPECT_THROW(ClassicalBound::constant(0.5), Error);
  EXPECT_THROW(ClassicalBound::table({}), Error);
}

TEST(ChannelPreset, ParsesAndRejects) {
  EXPECT_EQ(channel_preset("depolarizing:0.2").size(), 4u);
  EXPECT_THROW(channel_preset("depolarizing"), Error);
  EXPECT_THROW(channel_preset("depolarizing:1.5"), Error);
  EXPECT_THROW(channel_preset("depolarizing:abc"), Error);
  EXPECT_THROW(channel_preset("identity:1"), Error);
  EXPECT_THROW(channel_preset("swirl"), Error);
}

TEST(GateFidelity, ReferenceChannels) {
  Choi full = choi_from_kraus(channels::depolarizing(1.0));
  EXPECT_LT((full.j - CMatrix::Identity(4, 4) / 2.0).norm(), 1e-12);
  EXPECT_NEAR(average_gate_fidelity(full), 0.5, 1e-12);
  EXPECT_NEAR(average_gate_fidelity(choi_from_kraus(channels::measure_and_prepare())), 2.0 / 3.0, 1e-12);
  Choi flip = choi_from_kraus(channels::phase_flip(1.0));
  EXPECT_NEAR(per_state_fidelity(flip, 0.0, 0.0), 1.0, 1e-12);
  EXPECT_NEAR(per_state_fidelity(flip, std::numbers::pi, 0.0), 1.0, 1e-12);
  EXPECT_NEAR(per_state_fidelity(flip, std::numbers::pi / 2.0, 0.7), 0.0, 1e-12);
}

TEST(StateTomography, IdealPairMetrics) {
  DenseState pair = dense_from_graph(GraphState::from_edges(2, std::vector<Edge>{{0, 1}}));
  StateTomography t = state_tomography(exact_basis_counts(pair, {0, 1}));
  EXPECT_NEAR(fidelity(pair.ket(), t.rho), 1.0, 1e-9);
  EXPECT_NEAR(concurrence(t.rho), 1.0, 1e-9);
  EXPECT_NEAR(purity(t.rho), 1.0, 1e-9);
  EXPECT_NEAR(fidelity(pair.ket(), CMatrix(CMatrix::Identity(4, 4) / 4.0)), 0.25, 1e-12);
}

TEST(StateTomography, SampledDepolarizedPairMatchesForwardModel) {
  DenseState pair = dense_from_graph(GraphState::from_edges(2, std::vector<Edge>{{0, 1}}));
  pair.promote();
  std::size_t qs[2] = {0, 1};
  pair.apply_channel(channels::depolarizing(0.2, 2), qs);
  StateTomography t = state_tomography(sampled_basis_counts(pair, {0, 1}, 4000, NoiseModel::noiseless(), 77));
  EXPECT_LT(trace_distance(t.rho, pair.density_matrix()), 0.02);
}

TEST(Purity, WernerClosedForm) {
  for (double p : {0.0, 0.3, 0.9}) {
    CMatrix bell = CMatrix::Zero(4, 4);
    bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
    CMatrix w = p * bell + (1.0 - p) * CMatrix::Identity(4, 4) / 4.0;
    EXPECT_NEAR(purity(w), (1.0 + 3.0 * p * p) / 4.0, 1e-12);
  }
}

TEST(ProcessTomography, ProjectionIsIdempotent) {
  Choi raw = choi_from_kraus(channel_preset("damping"));
  raw.j(0, 0) += 0.05;
  raw.j(3, 3) -= 0.08;
  ProcessTomography once = project_choi(raw);
  ProcessTomography twice = project_choi(once.choi);
  EXPECT_LT((twice.choi.j - once.choi.j).norm(), 1e-9);
  EXPECT_LT(twice.cp_residual, 1e-9);
  EXPECT_LT(twice.tp_residual, 1e-9);
  EXPECT_GT(once.cp_residual + once.tp_residual, 1e-3);
}

TEST(ProcessTomography, MissingBasisRejected) {
  std::array<BasisCounts, 4> counts = exact_process_counts(channel_preset("identity"));
  counts[2].erase("Z");
  EXPECT_THROW(process_tomography(counts), Error);
}

TEST(Cap, IsotropicChannelIsFlatAndCenterIndependent) {
  Choi id = choi_from_kraus(channel_preset("identity"));
  Choi dep = choi_from_kraus(channel_preset("depolarizing:0.3"));
  for (double t0 : {0.05, 0.7, 2.5}) {
    EXPECT_NEAR(cap_average_fidelity(id, {0.4, 1.0}, t0), 1.0, 1e-12);
    EXPECT_NEAR(cap_average_fidelity(dep, {0.0, 0.0}, t0), 0.85, 1e-9);
    EXPECT_NEAR(cap_average_fidelity(dep, {2.2, 5.0}, t0), 0.85, 1e-9);
  }
}
