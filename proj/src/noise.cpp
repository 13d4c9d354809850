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

#include "mqnc/noise.hpp"

#include <cmath>
#include <sstream>

#include "mqnc/error.hpp"

namespace mqnc {

namespace {

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(std::string(what) + " must lie in [0,1]");
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

}  // namespace

namespace channels {

std::vector<CMatrix> depolarizing(double p, std::size_t k) {
  check_probability(p, "depolarizing probability");
  if (k != 1 && k != 2) throw Error("depolarizing channel supports one or two qubits");
  const std::vector<CMatrix> paulis = {gates::identity(), gates::pauli_x(), gates::pauli_y(), gates::pauli_z()};
  std::vector<CMatrix> ops;
  if (k == 1) {
    ops = paulis;
  } else {
    for (const auto& a : paulis)
      for (const auto& b : paulis) ops.push_back(kron(a, b));
  }
  const double d2 = static_cast<double>(ops.size());
  std::vector<CMatrix> kraus;
  kraus.push_back(std::sqrt(1.0 - p + p / d2) * ops[0]);
  if (p > 0.0) {
    for (std::size_t i = 1; i < ops.size(); ++i) kraus.push_back(std::sqrt(p / d2) * ops[i]);
  }
  return kraus;
}

std::vector<CMatrix> amplitude_damping(double gamma) {
  check_probability(gamma, "damping rate");
  CMatrix k0 = CMatrix::Zero(2, 2), k1 = CMatrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - gamma);
  k1(0, 1) = std::sqrt(gamma);
  return {k0, k1};
}

std::vector<CMatrix> phase_flip(double p) {
  check_probability(p, "flip probability");
  return {std::sqrt(1.0 - p) * CMatrix(gates::identity()), std::sqrt(p) * CMatrix(gates::pauli_z())};
}

std::vector<CMatrix> bit_flip(double p) {
  check_probability(p, "flip probability");
  return {std::sqrt(1.0 - p) * CMatrix(gates::identity()), std::sqrt(p) * CMatrix(gates::pauli_x())};
}

std::vector<CMatrix> measure_and_prepare() {
  CMatrix k0 = CMatrix::Zero(2, 2), k1 = CMatrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k1(1, 1) = 1.0;
  return {k0, k1};
}

std::vector<CMatrix> identity_channel() { return {CMatrix(gates::identity())}; }

std::vector<CMatrix> compose(const std::vector<CMatrix>& first, const std::vector<CMatrix>& second) {
  std::vector<CMatrix> out;
  for (const auto& b : second)
    for (const auto& a : first) out.push_back(b * a);
  return out;
}

CMatrix completeness(const std::vector<CMatrix>& kraus) {
  if (kraus.empty()) throw Error("empty Kraus list");
  CMatrix sum = CMatrix::Zero(kraus.front().cols(), kraus.front().cols());
  for (const auto& k : kraus) sum += k.adjoint() * k;
  return sum;
}

}  // namespace channels

NoiseModel NoiseModel::uniform(double p1, double p2, double ro) {
  NoiseModel m;
  m.p1 = p1;
  m.p2 = p2;
  m.readout << 1.0 - ro, ro, ro, 1.0 - ro;
  m.validate();
  return m;
}

NoiseModel NoiseModel::cairo_like() { return uniform(1e-3, 4e-2, 0.03); }

NoiseModel NoiseModel::parse(const std::string& text) {
  if (text.empty() || text == "none" || text == "noiseless") return noiseless();
  if (text == "cairo-like") return cairo_like();
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw Error("trailing characters");
    } catch (const std::exception&) {
      throw Error("noise spec must be p1,p2,ro or a preset name, got '" + text + "'");
    }
  }
  if (values.size() != 3) throw Error("noise spec must have three comma-separated values");
  return uniform(values[0], values[1], values[2]);
}

const Eigen::Matrix2d& NoiseModel::readout_for(std::size_t qubit) const {
  auto it = readout_overrides.find(qubit);
  return it == readout_overrides.end() ? readout : it->second;
}

bool NoiseModel::is_noiseless() const {
  if (p1 != 0.0 || p2 != 0.0) return false;
  if (readout != Eigen::Matrix2d::Identity()) return false;
  for (const auto& [q, m] : readout_overrides) {
    if (m != Eigen::Matrix2d::Identity()) return false;
  }
  return true;
}

void NoiseModel::validate() const {
  check_probability(p1, "p1");
  check_probability(p2, "p2");
  auto check = [](const Eigen::Matrix2d& m) {
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) check_probability(m(r, c), "confusion entry");
      if (std::abs(m.row(r).sum() - 1.0) > 1e-12) throw Error("confusion matrix rows must sum to 1");
    }
  };
  check(readout);
  for (const auto& [q, m] : readout_overrides) check(m);
}

void noisy_1q(DenseState& s, std::size_t q, const Mat2& u, const NoiseModel& noise) {
  s.apply_1q(q, u);
  if (noise.p1 > 0.0) {
    const std::size_t qs[1] = {q};
    s.apply_channel(channels::depolarizing(noise.p1, 1), qs);
  }
}

void noisy_cz(DenseState& s, std::size_t i, std::size_t j, const NoiseModel& noise) {
  s.apply_cz(i, j);
  if (noise.p2 > 0.0) {
    const std::size_t qs[2] = {i, j};
    s.apply_channel(channels::depolarizing(noise.p2, 2), qs);
  }
}

}  // namespace mqnc
