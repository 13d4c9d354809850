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

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "mqnc/error.hpp"

namespace mqnc {

std::uint64_t Rng::split(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + (stream + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

ConfusionMatrix::ConfusionMatrix(Eigen::MatrixXd matrix) : c_(std::move(matrix)) {
  const auto dim = static_cast<std::size_t>(c_.rows());
  if (dim < 2 || (dim & (dim - 1)) != 0 || c_.cols() != c_.rows()) {
    throw Error("confusion matrix must be square with power-of-two dimension");
  }
  m_ = static_cast<std::size_t>(std::countr_zero(dim));
  for (Eigen::Index r = 0; r < c_.rows(); ++r) {
    for (Eigen::Index c = 0; c < c_.cols(); ++c) {
      if (c_(r, c) < -1e-12 || c_(r, c) > 1.0 + 1e-12) throw Error("confusion entries must lie in [0,1]");
    }
    if (std::abs(c_.row(r).sum() - 1.0) > 1e-9) throw Error("confusion rows must sum to 1");
  }
}

ConfusionMatrix ConfusionMatrix::single(const Eigen::Matrix2d& m) { return ConfusionMatrix(Eigen::MatrixXd(m)); }

ConfusionMatrix ConfusionMatrix::tensor(const std::vector<Eigen::Matrix2d>& per_qubit) {
  if (per_qubit.empty()) throw Error("tensor confusion needs at least one qubit");
  Eigen::MatrixXd out = Eigen::MatrixXd::Ones(1, 1);
  for (const auto& m : per_qubit) {
    Eigen::MatrixXd next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index i = 0; i < out.rows(); ++i)
      for (Eigen::Index j = 0; j < out.cols(); ++j) next.block(2 * i, 2 * j, 2, 2) = out(i, j) * m;
    out = std::move(next);
  }
  return ConfusionMatrix(out);
}

ConfusionMatrix ConfusionMatrix::from_noise(const NoiseModel& noise, const std::vector<std::size_t>& qubits) {
  std::vector<Eigen::Matrix2d> per;
  for (auto q : qubits) per.push_back(noise.readout_for(q));
  return tensor(per);
}

Eigen::VectorXd ConfusionMatrix::apply(const Eigen::VectorXd& p) const {
  if (p.size() != c_.rows()) throw Error("distribution size does not match confusion matrix");
  return c_.transpose() * p;
}

Eigen::VectorXd ConfusionMatrix::invert(const Eigen::VectorXd& q) const {
  if (q.size() != c_.rows()) throw Error("distribution size does not match confusion matrix");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(c_.transpose());
  if (!lu.isInvertible() || std::abs(lu.determinant()) < 1e-12) throw Error("confusion matrix is singular");
  return lu.solve(q);
}

Eigen::VectorXd outcome_distribution(const DenseState& state, const std::vector<std::size_t>& qubits,
                                     const std::vector<Basis>& bases) {
  if (qubits.size() != bases.size()) throw Error("one basis per measured qubit is required");
  if (qubits.empty()) throw Error("no qubits to measure");
  DenseState s = state;
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (bases[i] == Basis::X) s.apply_1q(qubits[i], gates::hadamard());
    if (bases[i] == Basis::Y) s.apply_1q(qubits[i], gates::hadamard() * gates::phase(-std::numbers::pi / 2));
  }
  DenseState reduced = s.partial_trace(qubits);
  const CMatrix& rho = reduced.density_matrix();
  Eigen::VectorXd p(rho.rows());
  for (Eigen::Index i = 0; i < rho.rows(); ++i) p[i] = std::max(0.0, rho(i, i).real());
  return p / p.sum();
}

std::string bit_string(std::size_t index, std::size_t m) {
  std::string s(m, '0');
  for (std::size_t i = 0; i < m; ++i)
    if ((index >> (m - 1 - i)) & 1u) s[i] = '1';
  return s;
}

std::size_t bit_index(const std::string& bits) {
  std::size_t idx = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw Error("bit strings may only contain 0 and 1");
    idx = (idx << 1) | static_cast<std::size_t>(c == '1');
  }
  return idx;
}

std::vector<ShotRecord> sample_distribution(const Eigen::VectorXd& distribution, std::size_t shots,
                                            const ConfusionMatrix& confusion, std::uint64_t seed) {
  if (distribution.size() != confusion.matrix().rows()) throw Error("distribution size does not match confusion");
  const std::size_t m = confusion.num_qubits();
  const Eigen::MatrixXd& c = confusion.matrix();
  std::vector<double> cdf(static_cast<std::size_t>(distribution.size()));
  double acc = 0.0;
  for (Eigen::Index i = 0; i < distribution.size(); ++i) cdf[static_cast<std::size_t>(i)] = (acc += distribution[i]);
  Rng rng(seed);
  std::vector<ShotRecord> out;
  out.reserve(shots);
  for (std::size_t s = 0; s < shots; ++s) {
    const double u = rng.uniform() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const auto truth = static_cast<Eigen::Index>(std::min<std::size_t>(it - cdf.begin(), cdf.size() - 1));
    // Reported string drawn from row `truth` of the confusion matrix.
    const double v = rng.uniform();
    double run = 0.0;
    Eigen::Index reported = c.cols() - 1;
    for (Eigen::Index r = 0; r < c.cols(); ++r) {
      run += c(truth, r);
      if (v < run) {
        reported = r;
        break;
      }
    }
    out.push_back({bit_string(static_cast<std::size_t>(reported), m), true});
  }
  return out;
}

std::vector<ShotRecord> sample_shots(const DenseState& state, const std::vector<std::size_t>& qubits,
                                     const std::vector<Basis>& bases, std::size_t shots, const NoiseModel& noise,
                                     std::uint64_t seed) {
  noise.validate();
  return sample_distribution(outcome_distribution(state, qubits, bases), shots,
                             ConfusionMatrix::from_noise(noise, qubits), seed);
}

Counts count_shots(const std::vector<ShotRecord>& records, bool retained_only) {
  Counts c;
  for (const auto& r : records)
    if (r.retained || !retained_only) c[r.bits] += 1.0;
  return c;
}

Eigen::VectorXd counts_to_vector(const Counts& counts, std::size_t m) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(std::size_t{1} << m));
  for (const auto& [bits, n] : counts) {
    if (bits.size() != m) throw Error("bit string length does not match qubit count");
    v[static_cast<Eigen::Index>(bit_index(bits))] += n;
  }
  return v;
}

Counts vector_to_counts(const Eigen::VectorXd& v, double total) {
  const auto m = static_cast<std::size_t>(std::countr_zero(static_cast<std::size_t>(v.size())));
  Counts c;
  for (Eigen::Index i = 0; i < v.size(); ++i) c[bit_string(static_cast<std::size_t>(i), m)] = v[i] * total;
  return c;
}

Counts mitigate(const Counts& counts, const ConfusionMatrix& confusion) {
  Eigen::VectorXd q = counts_to_vector(counts, confusion.num_qubits());
  const double total = q.sum();
  if (total <= 0.0) throw EmptySampleError("no counts to mitigate");
  Eigen::VectorXd p = confusion.invert(q / total);
  p = p.cwiseMax(0.0);
  const double s = p.sum();
  if (s <= 0.0) throw Error("mitigation removed all probability mass");
  return vector_to_counts(p / s, total);
}

PostselectResult postselect(const std::vector<ShotRecord>& records,
                            const std::function<bool(const std::string&)>& accept) {
  PostselectResult out;
  out.total = records.size();
  for (const auto& r : records) {
    ShotRecord copy = r;
    copy.retained = r.retained && accept(r.bits);
    if (copy.retained) ++out.kept;
    out.records.push_back(std::move(copy));
  }
  if (out.total > 0) {
    const double f = static_cast<double>(out.kept) / static_cast<double>(out.total);
    out.retained_fraction = f;
    out.std_error = std::sqrt(f * (1.0 - f) / static_cast<double>(out.total));
  }
  return out;
}

PostselectResult postselect(const std::vector<ShotRecord>& records, const std::set<std::string>& accepted) {
  if (accepted.empty()) throw Error("post-selection needs at least one accepted outcome");
  return postselect(records, [&](const std::string& bits) { return accepted.count(bits) > 0; });
}

ConfusionMatrix calibrate_readout(const NoiseModel& noise, const std::vector<std::size_t>& qubits, std::size_t shots,
                                  std::uint64_t seed, bool joint) {
  noise.validate();
  if (qubits.empty()) throw Error("calibration needs at least one qubit");
  const std::size_t m = qubits.size();
  if (shots == 0) return ConfusionMatrix::from_noise(noise, qubits);
  if (joint && m <= 3) {
    const ConfusionMatrix model = ConfusionMatrix::from_noise(noise, qubits);
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << m);
    Eigen::MatrixXd est = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index t = 0; t < dim; ++t) {
      Eigen::VectorXd prepared = Eigen::VectorXd::Zero(dim);
      prepared[t] = 1.0;
      auto recs = sample_distribution(prepared, shots, model, Rng::split(seed, static_cast<std::uint64_t>(t)));
      for (const auto& r : recs) est(t, static_cast<Eigen::Index>(bit_index(r.bits))) += 1.0;
      est.row(t) /= static_cast<double>(shots);
    }
    return ConfusionMatrix(est);
  }
  std::vector<Eigen::Matrix2d> per;
  for (std::size_t i = 0; i < m; ++i) {
    const ConfusionMatrix model = ConfusionMatrix::single(noise.readout_for(qubits[i]));
    Eigen::Matrix2d est = Eigen::Matrix2d::Zero();
    for (int t = 0; t < 2; ++t) {
      Eigen::VectorXd prepared = Eigen::VectorXd::Zero(2);
      prepared[t] = 1.0;
      auto recs = sample_distribution(prepared, shots, model, Rng::split(seed, 2 * i + static_cast<std::size_t>(t)));
      for (const auto& r : recs) est(t, r.bits == "1" ? 1 : 0) += 1.0;
      est.row(t) /= static_cast<double>(shots);
    }
    per.push_back(est);
  }
  return ConfusionMatrix::tensor(per);
}

}  // namespace mqnc
