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

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mqnc/dense.hpp"
#include "mqnc/noise.hpp"

namespace mqnc {

/// Seeded generator. Uniform doubles take the top 53 bits of a 64-bit Mersenne Twister draw, so
/// streams are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Seed of sub-stream `stream`: splitmix64 of master + (stream + 1) * golden gamma.
  static std::uint64_t split(std::uint64_t master, std::uint64_t stream);

 private:
  std::mt19937_64 engine_;
};

struct ShotRecord {
  /// One character per measured qubit, in the order the qubits were listed.
  std::string bits;
  bool retained = true;
  friend bool operator==(const ShotRecord&, const ShotRecord&) = default;
};

using Counts = std::map<std::string, double>;

/// Row-stochastic readout confusion over m qubits: entry (t, r) is the probability of reporting
/// bit string r when t was prepared. Index bit order matches DenseState (first qubit most significant).
class ConfusionMatrix {
 public:
  ConfusionMatrix() = default;
  explicit ConfusionMatrix(Eigen::MatrixXd matrix);
  static ConfusionMatrix single(const Eigen::Matrix2d& m);
  static ConfusionMatrix tensor(const std::vector<Eigen::Matrix2d>& per_qubit);
  static ConfusionMatrix from_noise(const NoiseModel& noise, const std::vector<std::size_t>& qubits);

  std::size_t num_qubits() const { return m_; }
  const Eigen::MatrixXd& matrix() const { return c_; }
  /// Reported distribution for a true distribution p: C^T p.
  Eigen::VectorXd apply(const Eigen::VectorXd& p) const;
  /// Solves C^T p = q; throws when C is singular.
  Eigen::VectorXd invert(const Eigen::VectorXd& q) const;

 private:
  std::size_t m_ = 0;
  Eigen::MatrixXd c_;
};

/// Born distribution of the listed qubits measured in the listed Pauli bases (others traced out).
Eigen::VectorXd outcome_distribution(const DenseState& state, const std::vector<std::size_t>& qubits,
                                     const std::vector<Basis>& bases);

/// Draws shots from the Born distribution and passes each reported bit through the readout confusion
/// of its qubit. Reproducible for a fixed seed.
std::vector<ShotRecord> sample_shots(const DenseState& state, const std::vector<std::size_t>& qubits,
                                     const std::vector<Basis>& bases, std::size_t shots, const NoiseModel& noise,
                                     std::uint64_t seed);

/// Same, from an explicit outcome distribution over 2^m strings and an m-qubit confusion matrix.
std::vector<ShotRecord> sample_distribution(const Eigen::VectorXd& distribution, std::size_t shots,
                                            const ConfusionMatrix& confusion, std::uint64_t seed);

Counts count_shots(const std::vector<ShotRecord>& records, bool retained_only = true);
std::string bit_string(std::size_t index, std::size_t m);
std::size_t bit_index(const std::string& bits);
Eigen::VectorXd counts_to_vector(const Counts& counts, std::size_t m);
Counts vector_to_counts(const Eigen::VectorXd& v, double total);

/// Inverse-confusion mitigation. Negative quasi-counts are clipped to zero and the result is
/// rescaled to the original total.
Counts mitigate(const Counts& counts, const ConfusionMatrix& confusion);

struct PostselectResult {
  std::vector<ShotRecord> records;
  std::size_t kept = 0;
  std::size_t total = 0;
  double retained_fraction = 0.0;
  /// Binomial standard error sqrt(f(1-f)/n).
  double std_error = 0.0;
  bool empty() const { return kept == 0; }
};

PostselectResult postselect(const std::vector<ShotRecord>& records, const std::set<std::string>& accepted);
PostselectResult postselect(const std::vector<ShotRecord>& records,
                            const std::function<bool(const std::string&)>& accept);

/// Readout calibration by preparing every basis state of the listed qubits. For at most three qubits
/// the 2^m x 2^m matrix is estimated jointly, otherwise per qubit and combined as a tensor product.
/// shots = 0 returns the exact model matrix.
ConfusionMatrix calibrate_readout(const NoiseModel& noise, const std::vector<std::size_t>& qubits, std::size_t shots,
                                  std::uint64_t seed, bool joint = true);

}  // namespace mqnc
