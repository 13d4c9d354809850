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

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "mqnc/error.hpp"
#include "mqnc/metrics.hpp"
#include "mqnc/noise.hpp"

namespace mqnc {
namespace {

constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};

Mat2 letter_matrix(char c) {
  switch (c) {
    case 'X': return gates::pauli_x();
    case 'Y': return gates::pauli_y();
    case 'Z': return gates::pauli_z();
    default: return gates::identity();
  }
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Basis basis_of(char c) {
  switch (c) {
    case 'X': return Basis::X;
    case 'Y': return Basis::Y;
    case 'Z': return Basis::Z;
    default: throw Error(std::string("unknown measurement basis '") + c + "'");
  }
}

// Parity expectation over `support` from one basis' counts.
double parity_expectation(const Counts& counts, const std::vector<std::size_t>& support, std::size_t m) {
  double total = 0.0, acc = 0.0;
  for (const auto& [bits, c] : counts) {
    if (bits.size() != m) throw Error("tomography: bit string '" + bits + "' has the wrong length");
    int parity = 0;
    for (std::size_t q : support) parity ^= bits[q] == '1' ? 1 : 0;
    acc += parity ? -c : c;
    total += c;
  }
  if (total <= 0.0) throw EmptySampleError("tomography: basis without counts");
  return acc / total;
}

double parse_parameter(const std::string& name, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) throw Error("channel preset '" + name + "': bad parameter '" + text + "'");
  return v;
}

}  // namespace

std::vector<std::string> tomography_bases(std::size_t m) {
  if (m == 0 || m > 8) throw Error("tomography_bases: need 1 to 8 qubits");
  std::vector<std::string> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < m; ++i) total *= 3;
  for (std::size_t k = 0; k < total; ++k) {
    std::string s(m, 'X');
    std::size_t r = k;
    for (std::size_t i = m; i-- > 0;) {
      s[i] = "XYZ"[r % 3];
      r /= 3;
    }
    out.push_back(std::move(s));
  }
  return out;
}

StateTomography state_tomography(const BasisCounts& counts, const std::optional<ConfusionMatrix>& mitigation) {
  if (counts.empty()) throw Error("state_tomography: no counts");
  std::size_t m = counts.begin()->first.size();
  std::vector<std::string> bases = tomography_bases(m);
  if (mitigation && mitigation->num_qubits() != m) throw Error("state_tomography: mitigation size mismatch");
  std::map<std::string, Counts> used;
  for (const std::string& b : bases) {
    auto it = counts.find(b);
    if (it == counts.end()) throw Error("state_tomography: missing basis " + b);
    used[b] = mitigation ? mitigate(it->second, *mitigation) : it->second;
  }
  if (counts.size() != bases.size()) throw Error("state_tomography: unexpected basis in counts");

  std::size_t dim = std::size_t{1} << m;
  CMatrix rho = CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  std::size_t paulis = std::size_t{1} << (2 * m);
  for (std::size_t k = 0; k < paulis; ++k) {
    std::string label(m, 'I');
    std::vector<std::size_t> support;
    for (std::size_t q = 0; q < m; ++q) {
      label[q] = kLetters[(k >> (2 * (m - 1 - q))) & 3u];
      if (label[q] != 'I') support.push_back(q);
    }
    double e = 1.0;
    if (!support.empty()) {
      double acc = 0.0;
      std::size_t matches = 0;
      for (const std::string& b : bases) {
        bool ok = true;
        for (std::size_t q : support) ok = ok && b[q] == label[q];
        if (!ok) continue;
        acc += parity_expectation(used.at(b), support, m);
        ++matches;
      }
      e = acc / static_cast<double>(matches);
    }
    CMatrix op = letter_matrix(label[0]);
    for (std::size_t q = 1; q < m; ++q) op = kron(op, letter_matrix(label[q]));
    rho += e * op;
  }
  rho /= static_cast<double>(dim);

  StateTomography out;
  out.num_qubits = m;
  out.linear = rho;
  out.rho = project_to_density(rho);
  out.projection_residual = (out.rho - rho).norm();
  out.mitigated = mitigation.has_value();
  return out;
}

BasisCounts exact_basis_counts(const DenseState& state, const std::vector<std::size_t>& qubits, double total) {
  BasisCounts out;
  for (const std::string& b : tomography_bases(qubits.size())) {
    std::vector<Basis> bs;
    for (char c : b) bs.push_back(basis_of(c));
    out[b] = vector_to_counts(outcome_distribution(state, qubits, bs), total);
  }
  return out;
}

BasisCounts sampled_basis_counts(const DenseState& state, const std::vector<std::size_t>& qubits, std::size_t shots,
                                 const NoiseModel& noise, std::uint64_t seed) {
  BasisCounts out;
  std::vector<std::string> bases = tomography_bases(qubits.size());
  for (std::size_t i = 0; i < bases.size(); ++i) {
    std::vector<Basis> bs;
    for (char c : bases[i]) bs.push_back(basis_of(c));
    out[bases[i]] = count_shots(sample_shots(state, qubits, bs, shots, noise, Rng::split(seed, i)));
  }
  return out;
}

CMatrix Choi::apply(const CMatrix& rho) const {
  if (j.rows() != 4 || j.cols() != 4) throw Error("Choi: expected a 4x4 matrix");
  if (rho.rows() != 2 || rho.cols() != 2) throw Error("Choi::apply: expected a single-qubit input");
  CMatrix out = CMatrix::Zero(2, 2);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) out += rho(a, b) * j.block(2 * a, 2 * b, 2, 2);
  }
  return out;
}

CMatrix Choi::input_marginal() const {
  CMatrix a(2, 2);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) a(r, c) = j.block(2 * r, 2 * c, 2, 2).trace();
  }
  return a;
}

Choi choi_from_kraus(const std::vector<CMatrix>& kraus) {
  if (kraus.empty()) throw Error("choi_from_kraus: empty Kraus list");
  Choi c;
  c.j = CMatrix::Zero(4, 4);
  for (const CMatrix& k : kraus) {
    if (k.rows() != 2 || k.cols() != 2) throw Error("choi_from_kraus: expected single-qubit Kraus operators");
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) c.j.block(2 * a, 2 * b, 2, 2) += k.col(a) * k.col(b).adjoint();
    }
  }
  return c;
}

const std::array<std::string, 4>& process_input_labels() {
  static const std::array<std::string, 4> labels{"0", "1", "+", "+i"};
  return labels;
}

Ket process_input_state(std::size_t index) {
  const double s = 1.0 / std::sqrt(2.0);
  Ket k(2);
  switch (index) {
    case 0: k << 1.0, 0.0; break;
    case 1: k << 0.0, 1.0; break;
    case 2: k << s, s; break;
    case 3: k << s, cplx(0.0, s); break;
    default: throw Error("process_input_state: index must be below 4");
  }
  return k;
}

Choi choi_from_outputs(const std::array<CMatrix, 4>& outputs) {
  for (const CMatrix& o : outputs) {
    if (o.rows() != 2 || o.cols() != 2) throw Error("choi_from_outputs: expected 2x2 outputs");
  }
  const cplx i(0.0, 1.0);
  CMatrix diag = outputs[0] + outputs[1];
  CMatrix e10 = outputs[2] - i * outputs[3] - 0.5 * (1.0 - i) * diag;
  CMatrix e01 = outputs[2] + i * outputs[3] - 0.5 * (1.0 + i) * diag;
  Choi c;
  c.j = CMatrix::Zero(4, 4);
  c.j.block(0, 0, 2, 2) = outputs[0];
  c.j.block(0, 2, 2, 2) = e01;
  c.j.block(2, 0, 2, 2) = e10;
  c.j.block(2, 2, 2, 2) = outputs[1];
  return c;
}

ProcessTomography project_choi(const Choi& raw) {
  if (raw.j.rows() != 4 || raw.j.cols() != 4) throw Error("project_choi: expected a 4x4 Choi matrix");
  ProcessTomography out;
  out.raw = raw;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (raw.j + raw.j.adjoint()));
  Eigen::VectorXd ev = es.eigenvalues();
  out.cp_residual = (ev.array() < 0.0).select(-ev.array(), 0.0).sum();
  Eigen::VectorXd clipped = ev.cwiseMax(0.0);
  Choi cp{es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().adjoint()};
  CMatrix a = cp.input_marginal();
  out.tp_residual = (a - CMatrix::Identity(2, 2)).norm();
  Eigen::SelfAdjointEigenSolver<CMatrix> ea(0.5 * (a + a.adjoint()));
  if (ea.eigenvalues().minCoeff() <= 1e-12) throw Error("project_choi: input marginal is singular");
  Eigen::VectorXd inv_sqrt = ea.eigenvalues().cwiseSqrt().cwiseInverse();
  CMatrix s = ea.eigenvectors() * inv_sqrt.asDiagonal() * ea.eigenvectors().adjoint();
  CMatrix s4 = kron(s, CMatrix::Identity(2, 2));
  out.choi.j = s4 * cp.j * s4;
  return out;
}

ProcessTomography process_tomography(const std::array<BasisCounts, 4>& counts,
                                     const std::optional<ConfusionMatrix>& mitigation) {
  std::array<CMatrix, 4> outputs;
  for (std::size_t k = 0; k < 4; ++k) {
    StateTomography t = state_tomography(counts[k], mitigation);
    if (t.num_qubits != 1) throw Error("process_tomography: expected single-qubit outputs");
    outputs[k] = t.linear;
  }
  return project_choi(choi_from_outputs(outputs));
}

double process_fidelity(const Choi& c) {
  if (c.j.rows() != 4 || c.j.cols() != 4) throw Error("process_fidelity: expected a 4x4 Choi matrix");
  return (c.j(0, 0) + c.j(0, 3) + c.j(3, 0) + c.j(3, 3)).real() / 4.0;
}

double average_gate_fidelity(const Choi& c) { return (2.0 * process_fidelity(c) + 1.0) / 3.0; }

double per_state_fidelity(const Choi& c, double theta, double phi) {
  Ket psi = gates::bloch_preparation(theta, phi).col(0);
  return fidelity(psi, c.apply(psi * psi.adjoint()));
}

double average_gate_fidelity_monte_carlo(const Choi& c, std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw EmptySampleError("average_gate_fidelity_monte_carlo: zero samples");
  Rng rng(seed);
  double acc = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    double z = 2.0 * rng.uniform() - 1.0;
    double phi = 2.0 * std::numbers::pi * rng.uniform();
    acc += per_state_fidelity(c, std::acos(z), phi);
  }
  return acc / static_cast<double>(samples);
}

Eigen::Vector3d bloch_vector(const BlochPoint& p) {
  return {std::sin(p.theta) * std::cos(p.phi), std::sin(p.theta) * std::sin(p.phi), std::cos(p.theta)};
}

BlochPoint bloch_angles(const Eigen::Vector3d& v) {
  Eigen::Vector3d u = v.normalized();
  BlochPoint p;
  p.theta = std::acos(std::clamp(u.z(), -1.0, 1.0));
  p.phi = std::atan2(u.y(), u.x());
  if (p.phi < 0.0) p.phi += 2.0 * std::numbers::pi;
  return p;
}

std::vector<BlochPoint> fibonacci_cap(const BlochPoint& center, double theta0, std::size_t resolution) {
  if (!(theta0 > 0.0) || theta0 > std::numbers::pi + 1e-12) throw Error("fibonacci_cap: theta0 must be in (0, pi]");
  if (resolution == 0) throw Error("fibonacci_cap: resolution must be positive");
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::size_t levels = (resolution + 3) / 4;
  Eigen::Vector3d c = bloch_vector(center);
  Eigen::Vector3d e1(std::cos(center.theta) * std::cos(center.phi), std::cos(center.theta) * std::sin(center.phi),
                     -std::sin(center.theta));
  Eigen::Vector3d e2(-std::sin(center.phi), std::cos(center.phi), 0.0);
  double depth = 1.0 - std::cos(theta0);
  std::vector<BlochPoint> out;
  out.reserve(4 * levels);
  for (std::size_t k = 0; k < levels; ++k) {
    double cos_a = 1.0 - depth * (static_cast<double>(k) + 0.5) / static_cast<double>(levels);
    double sin_a = std::sqrt(std::max(0.0, 1.0 - cos_a * cos_a));
    for (int r = 0; r < 4; ++r) {
      double beta = golden * static_cast<double>(k) + r * std::numbers::pi / 2.0;
      out.push_back(bloch_angles(cos_a * c + sin_a * (std::cos(beta) * e1 + std::sin(beta) * e2)));
    }
  }
  return out;
}

double cap_average_fidelity(const Choi& c, const BlochPoint& center, double theta0, std::size_t resolution) {
  if (!(theta0 >= kMinCapAngle) || theta0 > std::numbers::pi + 1e-12) {
    throw Error("cap_average_fidelity: theta0 must be in [0.05, pi]");
  }
  std::vector<BlochPoint> pts = fibonacci_cap(center, theta0, resolution);
  double acc = 0.0;
  for (const BlochPoint& p : pts) acc += per_state_fidelity(c, p.theta, p.phi);
  return acc / static_cast<double>(pts.size());
}

BlochPoint best_cap_center(const Choi& c, std::size_t resolution) {
  auto best_of = [&](const std::vector<BlochPoint>& pts) {
    BlochPoint best = pts.front();
    double best_f = -1.0;
    for (const BlochPoint& p : pts) {
      double f = per_state_fidelity(c, p.theta, p.phi);
      if (f > best_f + 1e-15) {
        best_f = f;
        best = p;
      }
    }
    return best;
  };
  BlochPoint best = best_of(fibonacci_cap({0.0, 0.0}, std::numbers::pi, resolution));
  double radius = 4.0 * std::sqrt(4.0 * std::numbers::pi / static_cast<double>(resolution));
  for (int round = 0; round < 4; ++round) {
    std::vector<BlochPoint> local = fibonacci_cap(best, std::min(radius, std::numbers::pi), 400);
    local.push_back(best);
    best = best_of(local);
    radius /= 8.0;
  }
  return best;
}

ClassicalBound ClassicalBound::constant(double value) { return table({{0.0, value}}); }

ClassicalBound ClassicalBound::table(std::vector<std::pair<double, double>> points) {
  if (points.empty()) throw Error("ClassicalBound: empty table");
  std::sort(points.begin(), points.end());
  for (std::size_t i = 0; i < points.size(); ++i) {
    double v = points[i].second;
    if (v < 2.0 / 3.0 - 1e-12 || v > 1.0) throw Error("ClassicalBound: values must lie in [2/3, 1]");
    if (i > 0 && points[i].first == points[i - 1].first) throw Error("ClassicalBound: repeated angle");
    if (i > 0 && v > points[i - 1].second) throw Error("ClassicalBound: values must not increase with the angle");
  }
  ClassicalBound b;
  b.points_ = std::move(points);
  return b;
}

double ClassicalBound::at(double theta0) const {
  if (theta0 <= points_.front().first) return points_.front().second;
  if (theta0 >= points_.back().first) return points_.back().second;
  auto hi = std::upper_bound(points_.begin(), points_.end(), theta0,
                             [](double t, const std::pair<double, double>& p) { return t < p.first; });
  auto lo = hi - 1;
  double w = (theta0 - lo->first) / (hi->first - lo->first);
  return lo->second + w * (hi->second - lo->second);
}

std::vector<CapPoint> cap_curve(const Choi& c, const BlochPoint& center, const std::vector<double>& theta0s,
                                const ClassicalBound& bound, std::size_t resolution) {
  std::vector<CapPoint> out;
  for (double t : theta0s) out.push_back({t, cap_average_fidelity(c, center, t, resolution), bound.at(t)});
  return out;
}

std::vector<double> cap_angle_grid(std::size_t points) {
  if (points < 2) throw Error("cap_angle_grid: need at least two points");
  std::vector<double> out;
  for (std::size_t i = 0; i < points; ++i) {
    out.push_back(kMinCapAngle + (std::numbers::pi - kMinCapAngle) * static_cast<double>(i) /
                                     static_cast<double>(points - 1));
  }
  return out;
}

std::vector<CMatrix> channel_preset(const std::string& name) {
  std::string head = name, arg;
  if (auto colon = name.find(':'); colon != std::string::npos) {
    head = name.substr(0, colon);
    arg = name.substr(colon + 1);
  }
  auto no_arg = [&] {
    if (!arg.empty() || name.find(':') != std::string::npos) throw Error("channel preset '" + head + "' takes no parameter");
  };
  auto param = [&] {
    double v = parse_parameter(head, arg);
    if (v < 0.0 || v > 1.0) throw Error("channel preset '" + head + "': parameter must be in [0, 1]");
    return v;
  };
  if (head == "identity") {
    no_arg();
    return channels::identity_channel();
  }
  if (head == "dephasing") {
    no_arg();
    return channels::phase_flip(0.5);
  }
  if (head == "damping") {
    no_arg();
    return channels::compose(channels::amplitude_damping(0.3), channels::depolarizing(0.6));
  }
  if (head == "depolarizing") return channels::depolarizing(param());
  if (head == "phase-flip") return channels::phase_flip(param());
  if (head == "bit-flip") return channels::bit_flip(param());
  if (head == "amplitude-damping") return channels::amplitude_damping(param());
  throw Error("unknown channel preset '" + name + "'");
}

}  // namespace mqnc
