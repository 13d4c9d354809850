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

#include "mqnc/dense.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <set>

#include "mqnc/error.hpp"

namespace mqnc {

namespace {

constexpr cplx kI{0.0, 1.0};

// Offsets of the 2^k sub-basis states for `qubits` inside an n-qubit index, and the mask of their bits.
struct SubIndex {
  std::vector<std::size_t> offsets;
  std::size_t mask = 0;
};

SubIndex sub_index(std::size_t n, std::span<const std::size_t> qubits) {
  SubIndex s;
  const std::size_t k = qubits.size();
  s.offsets.assign(std::size_t{1} << k, 0);
  for (std::size_t r = 0; r < k; ++r) s.mask |= std::size_t{1} << (n - 1 - qubits[r]);
  for (std::size_t t = 0; t < s.offsets.size(); ++t) {
    std::size_t off = 0;
    for (std::size_t r = 0; r < k; ++r) {
      if ((t >> (k - 1 - r)) & 1u) off |= std::size_t{1} << (n - 1 - qubits[r]);
    }
    s.offsets[t] = off;
  }
  return s;
}

template <typename Vec>
void apply_sub(Vec&& v, const SubIndex& s, const CMatrix& op) {
  const std::size_t dim = static_cast<std::size_t>(v.size());
  const std::size_t m = s.offsets.size();
  Eigen::VectorXcd in(m), out(m);
  for (std::size_t base = 0; base < dim; ++base) {
    if (base & s.mask) continue;
    for (std::size_t t = 0; t < m; ++t) in[t] = v[base + s.offsets[t]];
    out.noalias() = op * in;
    for (std::size_t t = 0; t < m; ++t) v[base + s.offsets[t]] = out[t];
  }
}

void apply_columns(CMatrix& m, const SubIndex& s, const CMatrix& op) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) apply_sub(m.col(c), s, op);
}

}  // namespace

namespace gates {
Mat2 identity() { return Mat2::Identity(); }
Mat2 pauli_x() {
  Mat2 m;
  m << 0, 1, 1, 0;
  return m;
}
Mat2 pauli_y() {
  Mat2 m;
  m << 0, -kI, kI, 0;
  return m;
}
Mat2 pauli_z() {
  Mat2 m;
  m << 1, 0, 0, -1;
  return m;
}
Mat2 hadamard() {
  Mat2 m;
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}
Mat2 sqrt_x_lc() { return (identity() - kI * pauli_x()) / std::sqrt(2.0); }
Mat2 sqrt_z_lc() { return (identity() + kI * pauli_z()) / std::sqrt(2.0); }
Mat2 phase(double theta) {
  Mat2 m;
  m << 1, 0, 0, std::exp(kI * theta);
  return m;
}
Mat2 rz(double theta) {
  Mat2 m;
  m << std::exp(-kI * theta / 2.0), 0, 0, std::exp(kI * theta / 2.0);
  return m;
}
Mat2 frame_operator(FrameLabel f) {
  Mat2 m = identity();
  if (has_z(f)) m = pauli_z();
  if (has_x(f)) m = pauli_x() * m;
  return m;
}
Mat2 bloch_preparation(double theta, double phi) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  Mat2 m;
  m << c, -s, std::exp(kI * phi) * s, std::exp(kI * phi) * c;
  return m;
}
CMatrix cz() {
  CMatrix m = CMatrix::Identity(4, 4);
  m(3, 3) = -1.0;
  return m;
}
}  // namespace gates

MeasureBasis MeasureBasis::pauli(Basis b) {
  switch (b) {
    case Basis::X:
      return equator(0.0);
    case Basis::Y:
      return equator(std::numbers::pi / 2.0);
    case Basis::Z:
      return MeasureBasis{Mat2::Identity()};
  }
  throw Error("unknown basis");
}

MeasureBasis MeasureBasis::equator(double theta) {
  const cplx e = std::exp(kI * theta);
  Mat2 kets;
  kets << 1, 1, e, -e;
  kets /= std::sqrt(2.0);
  return MeasureBasis{kets.adjoint()};
}

DenseState DenseState::zeros(std::size_t n) {
  if (n > kMaxVectorQubits) throw Error("dense state vector limited to 20 qubits");
  Ket v = Ket::Zero(static_cast<Eigen::Index>(std::size_t{1} << n));
  v[0] = 1.0;
  return from_ket(std::move(v));
}

DenseState DenseState::plus(std::size_t n) {
  if (n > kMaxVectorQubits) throw Error("dense state vector limited to 20 qubits");
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  return from_ket(Ket::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim))));
}

DenseState DenseState::from_ket(Ket amplitudes) {
  const auto dim = static_cast<std::size_t>(amplitudes.size());
  if (dim == 0 || (dim & (dim - 1)) != 0) throw Error("amplitude vector length must be a power of two");
  DenseState s;
  s.n_ = static_cast<std::size_t>(std::countr_zero(dim));
  if (s.n_ > kMaxVectorQubits) throw Error("dense state vector limited to 20 qubits");
  s.psi_ = std::move(amplitudes);
  return s;
}

DenseState DenseState::from_density(CMatrix rho) {
  const auto dim = static_cast<std::size_t>(rho.rows());
  if (dim == 0 || (dim & (dim - 1)) != 0 || rho.cols() != rho.rows()) {
    throw Error("density matrix must be square with power-of-two dimension");
  }
  DenseState s;
  s.n_ = static_cast<std::size_t>(std::countr_zero(dim));
  if (s.n_ > kMaxDensityQubits) throw Error("density matrices limited to 14 qubits");
  s.is_density_ = true;
  s.rho_ = std::move(rho);
  return s;
}

const Ket& DenseState::ket() const {
  if (is_density_) throw Error("state is held as a density matrix");
  return psi_;
}

const CMatrix& DenseState::density_matrix() const {
  if (!is_density_) throw Error("state is held as an amplitude vector");
  return rho_;
}

CMatrix DenseState::to_density_matrix() const {
  if (is_density_) return rho_;
  return psi_ * psi_.adjoint();
}

void DenseState::promote() {
  if (is_density_) return;
  if (n_ > kMaxDensityQubits) throw Error("density matrices limited to 14 qubits");
  rho_ = psi_ * psi_.adjoint();
  psi_.resize(0);
  is_density_ = true;
}

double DenseState::trace() const {
  if (is_density_) return rho_.trace().real();
  return psi_.squaredNorm();
}

void DenseState::normalize() {
  const double t = trace();
  if (t <= 0.0) throw Error("cannot normalize a zero state");
  if (is_density_) {
    rho_ /= t;
  } else {
    psi_ /= std::sqrt(t);
  }
}

void DenseState::check_qubit(std::size_t q) const {
  if (q >= n_) throw QubitError("dense state: qubit out of range", q);
}

void DenseState::apply_1q(std::size_t q, const Mat2& u) {
  const std::size_t qs[1] = {q};
  apply_op(qs, CMatrix(u));
}

void DenseState::apply_cz(std::size_t i, std::size_t j) {
  check_qubit(i);
  check_qubit(j);
  if (i == j) throw QubitError("CZ needs two distinct qubits", i);
  const std::size_t mi = std::size_t{1} << (n_ - 1 - i);
  const std::size_t mj = std::size_t{1} << (n_ - 1 - j);
  const std::size_t both = mi | mj;
  if (!is_density_) {
    for (std::size_t idx = 0; idx < dim(); ++idx) {
      if ((idx & both) == both) psi_[static_cast<Eigen::Index>(idx)] *= -1.0;
    }
    return;
  }
  for (std::size_t r = 0; r < dim(); ++r) {
    const bool rs = (r & both) == both;
    for (std::size_t c = 0; c < dim(); ++c) {
      if (rs != ((c & both) == both)) rho_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) *= -1.0;
    }
  }
}

void DenseState::apply_op(std::span<const std::size_t> qubits, const CMatrix& op) {
  std::set<std::size_t> distinct;
  for (std::size_t q : qubits) {
    check_qubit(q);
    if (!distinct.insert(q).second) throw QubitError("operator applied twice to the same qubit", q);
  }
  const auto m = static_cast<Eigen::Index>(std::size_t{1} << qubits.size());
  if (op.rows() != m || op.cols() != m) throw Error("operator dimension does not match qubit count");
  const SubIndex s = sub_index(n_, qubits);
  if (!is_density_) {
    apply_sub(psi_, s, op);
    return;
  }
  apply_columns(rho_, s, op);
  CMatrix adj = rho_.adjoint();
  apply_columns(adj, s, op);
  rho_ = adj.adjoint();
}

void DenseState::apply_frame(std::span<const FrameLabel> frame) {
  if (frame.size() != n_) throw Error("frame length does not match register");
  for (std::size_t q = 0; q < n_; ++q) {
    if (frame[q] != FrameLabel::I) apply_1q(q, gates::frame_operator(frame[q]));
  }
}

void DenseState::apply_channel(std::span<const CMatrix> kraus, std::span<const std::size_t> qubits) {
  if (kraus.empty()) throw Error("channel needs at least one Kraus operator");
  const auto dim_k = static_cast<std::size_t>(kraus.front().rows());
  const auto arity = static_cast<std::size_t>(std::countr_zero(dim_k));
  if (arity == 0 || qubits.size() % arity != 0) throw Error("channel arity does not divide qubit list");
  promote();
  for (std::size_t g = 0; g < qubits.size(); g += arity) {
    const std::span<const std::size_t> group = qubits.subspan(g, arity);
    for (std::size_t q : group) check_qubit(q);
    const SubIndex s = sub_index(n_, group);
    CMatrix acc = CMatrix::Zero(rho_.rows(), rho_.cols());
    for (const CMatrix& k : kraus) {
      CMatrix term = rho_;
      apply_columns(term, s, k);
      CMatrix adj = term.adjoint();
      apply_columns(adj, s, k);
      acc += adj.adjoint();
    }
    rho_ = std::move(acc);
  }
}

double DenseState::expectation(const PauliString& p) const {
  if (p.size() != n_) throw Error("Pauli string length does not match register");
  std::size_t xmask = 0, zmask = 0;
  int ys = 0;
  for (std::size_t q = 0; q < n_; ++q) {
    const std::size_t bit = std::size_t{1} << (n_ - 1 - q);
    if (p.x(q)) xmask |= bit;
    if (p.z(q)) zmask |= bit;
    if (p.x(q) && p.z(q)) ++ys;
  }
  static const cplx kPow[4] = {1.0, kI, -1.0, -kI};
  const cplx global = kPow[(p.phase() + ys) % 4];
  cplx total = 0.0;
  // P|j> = global * (-1)^{popcount(j & zmask)} |j ^ xmask>.
  for (std::size_t j = 0; j < dim(); ++j) {
    const double sign = (std::popcount(j & zmask) & 1) ? -1.0 : 1.0;
    const auto jj = static_cast<Eigen::Index>(j);
    const auto kk = static_cast<Eigen::Index>(j ^ xmask);
    if (is_density_) {
      total += sign * rho_(jj, kk);
    } else {
      total += sign * std::conj(psi_[kk]) * psi_[jj];
    }
  }
  total *= global;
  if (std::abs(total.imag()) > 1e-9) throw Error("expectation of a non-Hermitian operator");
  return total.real();
}

double DenseState::probability(std::size_t q, const MeasureBasis& basis, int outcome) const {
  check_qubit(q);
  DenseState copy = *this;
  const Eigen::Vector2cd b = basis.ket(outcome);
  const std::size_t qs[1] = {q};
  copy.apply_op(qs, CMatrix(b * b.adjoint()));
  return copy.trace();
}

void DenseState::contract(std::size_t q, const Eigen::Vector2cd& bra) {
  const std::size_t low = std::size_t{1} << (n_ - 1 - q);
  const std::size_t new_dim = dim() / 2;
  auto full = [&](std::size_t r, std::size_t t) {
    const std::size_t hi = (r / low) * (low * 2);
    return hi + t * low + (r % low);
  };
  if (!is_density_) {
    Ket out(static_cast<Eigen::Index>(new_dim));
    for (std::size_t r = 0; r < new_dim; ++r) {
      out[static_cast<Eigen::Index>(r)] = bra[0] * psi_[static_cast<Eigen::Index>(full(r, 0))] +
                                          bra[1] * psi_[static_cast<Eigen::Index>(full(r, 1))];
    }
    psi_ = std::move(out);
  } else {
    CMatrix out(static_cast<Eigen::Index>(new_dim), static_cast<Eigen::Index>(new_dim));
    for (std::size_t r = 0; r < new_dim; ++r) {
      for (std::size_t c = 0; c < new_dim; ++c) {
        cplx v = 0.0;
        for (std::size_t t = 0; t < 2; ++t) {
          for (std::size_t u = 0; u < 2; ++u) {
            v += bra[static_cast<Eigen::Index>(t)] *
                 rho_(static_cast<Eigen::Index>(full(r, t)), static_cast<Eigen::Index>(full(c, u))) *
                 std::conj(bra[static_cast<Eigen::Index>(u)]);
          }
        }
        out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
      }
    }
    rho_ = std::move(out);
  }
  --n_;
}

double DenseState::project(std::size_t q, const MeasureBasis& basis, int outcome, bool keep) {
  check_qubit(q);
  if (outcome != 0 && outcome != 1) throw Error("measurement outcome must be 0 or 1");
  const double before = trace();
  const Eigen::Vector2cd b = basis.ket(outcome);
  if (keep) {
    const std::size_t qs[1] = {q};
    apply_op(qs, CMatrix(b * b.adjoint()));
  } else {
    contract(q, b.adjoint().transpose());
  }
  const double p = trace() / before;
  if (p > 1e-14) normalize();
  return p;
}

double DenseState::measure(std::size_t q, const MeasureBasis& basis, int outcome, bool keep) {
  const double p = probability(q, basis, outcome);
  if (p <= 1e-12) {
    throw QubitError("requested measurement branch has zero probability", q);
  }
  project(q, basis, outcome, keep);
  return p;
}

std::vector<double> DenseState::probabilities() const {
  std::vector<double> out(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    out[i] = is_density_ ? rho_(ii, ii).real() : std::norm(psi_[ii]);
  }
  return out;
}

DenseState DenseState::partial_trace(std::span<const std::size_t> keep) const {
  std::vector<std::size_t> env;
  std::set<std::size_t> kept(keep.begin(), keep.end());
  if (kept.size() != keep.size()) throw Error("partial_trace: repeated qubit");
  for (std::size_t q : keep) check_qubit(q);
  for (std::size_t q = 0; q < n_; ++q) {
    if (!kept.count(q)) env.push_back(q);
  }
  const SubIndex ks = sub_index(n_, keep);
  const SubIndex es = sub_index(n_, env);
  const auto dk = static_cast<Eigen::Index>(ks.offsets.size());
  CMatrix out = CMatrix::Zero(dk, dk);
  if (!is_density_) {
    CMatrix m(dk, static_cast<Eigen::Index>(es.offsets.size()));
    for (std::size_t a = 0; a < ks.offsets.size(); ++a) {
      for (std::size_t e = 0; e < es.offsets.size(); ++e) {
        m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(e)) =
            psi_[static_cast<Eigen::Index>(ks.offsets[a] + es.offsets[e])];
      }
    }
    out = m * m.adjoint();
  } else {
    for (std::size_t a = 0; a < ks.offsets.size(); ++a) {
      for (std::size_t b = 0; b < ks.offsets.size(); ++b) {
        cplx v = 0.0;
        for (std::size_t off : es.offsets) {
          v += rho_(static_cast<Eigen::Index>(ks.offsets[a] + off), static_cast<Eigen::Index>(ks.offsets[b] + off));
        }
        out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = v;
      }
    }
  }
  return from_density(std::move(out));
}

DenseState DenseState::tensor(const DenseState& other) const {
  if (!is_density_ && !other.is_density_) {
    Ket v(static_cast<Eigen::Index>(dim() * other.dim()));
    for (std::size_t i = 0; i < dim(); ++i) {
      for (std::size_t j = 0; j < other.dim(); ++j) {
        v[static_cast<Eigen::Index>(i * other.dim() + j)] =
            psi_[static_cast<Eigen::Index>(i)] * other.psi_[static_cast<Eigen::Index>(j)];
      }
    }
    return from_ket(std::move(v));
  }
  const CMatrix a = to_density_matrix();
  const CMatrix b = other.to_density_matrix();
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return from_density(std::move(out));
}

DenseState build_graph_state(std::size_t n, std::span<const Edge> edges) {
  // Validates the edge list the same way the graph engine does.
  (void)GraphState::from_edges(n, edges);
  DenseState s = DenseState::plus(n);
  Ket v = s.ket();
  for (std::size_t idx = 0; idx < s.dim(); ++idx) {
    int parity = 0;
    for (const auto& [i, j] : edges) {
      parity ^= static_cast<int>(((idx >> (n - 1 - i)) & (idx >> (n - 1 - j))) & 1u);
    }
    if (parity) v[static_cast<Eigen::Index>(idx)] *= -1.0;
  }
  return DenseState::from_ket(std::move(v));
}

DenseState dense_from_graph(const GraphState& g) {
  std::vector<std::size_t> index(g.size(), 0);
  std::vector<FrameLabel> frame;
  std::size_t m = 0;
  for (std::size_t q = 0; q < g.size(); ++q) {
    if (g.alive(q)) {
      index[q] = m++;
      frame.push_back(g.frame(q));
    }
  }
  std::vector<Edge> edges;
  for (const auto& [i, j] : g.edges()) edges.emplace_back(index[i], index[j]);
  DenseState s = build_graph_state(m, edges);
  s.apply_frame(frame);
  return s;
}

double state_overlap(const DenseState& a, const DenseState& b) {
  if (a.num_qubits() != b.num_qubits()) throw Error("state_overlap: qubit count mismatch");
  if (!a.is_density() && !b.is_density()) return std::norm(a.ket().dot(b.ket()));
  if (!a.is_density()) return (a.ket().adjoint() * b.density_matrix() * a.ket())(0, 0).real();
  if (!b.is_density()) return (b.ket().adjoint() * a.density_matrix() * b.ket())(0, 0).real();
  return (a.density_matrix() * b.density_matrix()).trace().real();
}

}  // namespace mqnc
