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

#include "mqnc/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "mqnc/error.hpp"

namespace mqnc {
namespace {

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) throw Error(std::string(what) + ": matrix must be square and non-empty");
}

CMatrix hermitian_sqrt(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()));
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

std::size_t qubits_of_dim(Eigen::Index dim, const char* what) {
  if (dim <= 0 || !std::has_single_bit(static_cast<std::size_t>(dim))) {
    throw Error(std::string(what) + ": dimension must be a power of two");
  }
  return static_cast<std::size_t>(std::countr_zero(static_cast<std::size_t>(dim)));
}

bool graph_connected(const GraphState& g) {
  std::vector<std::size_t> alive;
  for (std::size_t q = 0; q < g.size(); ++q) {
    if (g.alive(q)) alive.push_back(q);
  }
  if (alive.size() <= 1) return true;
  std::vector<bool> seen(g.size(), false);
  std::vector<std::size_t> stack{alive.front()};
  seen[alive.front()] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    std::size_t a = stack.back();
    stack.pop_back();
    for (std::size_t b : g.neighbors(a)) {
      if (!seen[b]) {
        seen[b] = true;
        ++reached;
        stack.push_back(b);
      }
    }
  }
  return reached == alive.size();
}

}  // namespace

double fidelity(const CMatrix& rho, const CMatrix& sigma) {
  require_square(rho, "fidelity");
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) throw Error("fidelity: dimension mismatch");
  CMatrix s = hermitian_sqrt(rho);
  CMatrix m = s * sigma * s;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  double root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return std::clamp(root * root, 0.0, 1.0);
}

double fidelity(const Ket& psi, const CMatrix& sigma) {
  require_square(sigma, "fidelity");
  if (psi.size() != sigma.rows()) throw Error("fidelity: dimension mismatch");
  return std::clamp(psi.dot(sigma * psi).real(), 0.0, 1.0);
}

double purity(const CMatrix& rho) {
  require_square(rho, "purity");
  return (rho * rho).trace().real();
}

double concurrence(const CMatrix& rho) {
  require_square(rho, "concurrence");
  if (rho.rows() != 4) throw Error("concurrence: expected a two-qubit density matrix");
  Mat2 y = gates::pauli_y();
  CMatrix yy(4, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) yy(i, j) = y(i / 2, j / 2) * y(i % 2, j % 2);
  }
  // rho = W W^dagger; the square roots of the eigenvalues of rho * tilde(rho) are the singular values
  // of W^T (Y (x) Y) W. Eigenvalues at rounding level are dropped so that they do not enter as square roots.
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (rho + rho.adjoint()));
  double cutoff = 1e-14 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  CMatrix w = CMatrix::Zero(4, 4);
  for (Eigen::Index i = 0; i < 4; ++i) {
    if (es.eigenvalues()(i) > cutoff) w.col(i) = std::sqrt(es.eigenvalues()(i)) * es.eigenvectors().col(i);
  }
  Eigen::JacobiSVD<CMatrix> svd(CMatrix(w.transpose() * yy * w));
  std::vector<double> lambda(svd.singularValues().data(), svd.singularValues().data() + 4);
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

double trace_distance(const CMatrix& a, const CMatrix& b) {
  require_square(a, "trace_distance");
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error("trace_distance: dimension mismatch");
  CMatrix d = a - b;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (d + d.adjoint()), Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

std::vector<double> project_to_simplex(std::vector<double> v) {
  if (v.empty()) throw Error("project_to_simplex: empty vector");
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double tau = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cumulative += u[i];
    double t = (cumulative - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) tau = t;
  }
  for (double& x : v) x = std::max(0.0, x - tau);
  return v;
}

CMatrix project_to_density(const CMatrix& m) {
  require_square(m, "project_to_density");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()));
  const Eigen::VectorXd& ev = es.eigenvalues();
  std::vector<double> p = project_to_simplex(std::vector<double>(ev.data(), ev.data() + ev.size()));
  Eigen::VectorXd clipped = Eigen::Map<Eigen::VectorXd>(p.data(), static_cast<Eigen::Index>(p.size()));
  return es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().adjoint();
}

double max_bipartition_overlap(const Ket& psi) {
  std::size_t n = qubits_of_dim(psi.size(), "max_bipartition_overlap");
  if (n < 2) return 1.0;
  Ket normalized = psi / psi.norm();
  double best = 0.0;
  // Subsets containing qubit 0 (the most significant bit) enumerate each bipartition once.
  for (std::size_t sub = 0; sub < (std::size_t{1} << (n - 1)) - 1; ++sub) {
    std::vector<std::size_t> part_a{0}, part_b;
    for (std::size_t q = 1; q < n; ++q) ((sub >> (q - 1)) & 1u ? part_a : part_b).push_back(q);
    CMatrix m(Eigen::Index{1} << part_a.size(), Eigen::Index{1} << part_b.size());
    for (std::size_t idx = 0; idx < (std::size_t{1} << n); ++idx) {
      std::size_t ia = 0, ib = 0;
      for (std::size_t q : part_a) ia = (ia << 1) | ((idx >> (n - 1 - q)) & 1u);
      for (std::size_t q : part_b) ib = (ib << 1) | ((idx >> (n - 1 - q)) & 1u);
      m(static_cast<Eigen::Index>(ia), static_cast<Eigen::Index>(ib)) = normalized(static_cast<Eigen::Index>(idx));
    }
    Eigen::JacobiSVD<CMatrix> svd(m);
    double s = svd.singularValues()(0);
    best = std::max(best, s * s);
  }
  return best;
}

double graph_alpha(const GraphState& g) {
  if (g.alive_count() != g.size()) throw Error("graph_alpha: all qubits must be alive");
  if (g.size() > 10) throw Error("graph_alpha: at most 10 qubits");
  return max_bipartition_overlap(dense_from_graph(g).ket());
}

WitnessResult gme_witness_from_fidelity(double fidelity_value, double alpha) {
  WitnessResult r;
  r.fidelity = fidelity_value;
  r.alpha = alpha;
  r.witness = alpha - fidelity_value;
  return r;
}

WitnessResult gme_witness(const CMatrix& sigma, const GraphState& g) {
  bool connected = graph_connected(g);
  double alpha = connected ? graph_alpha(g) : 1.0;
  WitnessResult r = gme_witness_from_fidelity(fidelity(dense_from_graph(g).ket(), sigma), alpha);
  r.connected = connected;
  return r;
}

std::vector<PauliString> stabilizer_products(const GraphState& g) {
  std::vector<PauliString> gens = g.stabilizers();
  if (gens.size() > 16) throw Error("stabilizer_products: at most 16 generators");
  std::vector<PauliString> out;
  out.reserve(std::size_t{1} << gens.size());
  for (std::size_t mask = 0; mask < (std::size_t{1} << gens.size()); ++mask) {
    PauliString p(g.size());
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if ((mask >> i) & 1u) p *= gens[i];
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<MeasurementSetting> measurement_settings(const std::vector<PauliString>& products) {
  if (products.empty()) return {};
  std::size_t n = products.front().size();
  for (const PauliString& p : products) {
    if (p.size() != n) throw Error("measurement_settings: products have different sizes");
  }
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < products.size(); ++i) {
    if (products[i].weight() > 0) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return products[a].weight() > products[b].weight(); });
  auto compatible = [&](const PauliString& a, const PauliString& b) {
    for (std::size_t q = 0; q < n; ++q) {
      char la = a.letter(q), lb = b.letter(q);
      if (la != 'I' && lb != 'I' && la != lb) return false;
    }
    return true;
  };
  std::vector<bool> used(products.size(), false);
  std::vector<MeasurementSetting> settings;
  for (std::size_t oi = 0; oi < order.size(); ++oi) {
    std::size_t a = order[oi];
    if (used[a]) continue;
    used[a] = true;
    MeasurementSetting s;
    s.products.push_back(a);
    for (std::size_t oj = oi + 1; oj < order.size(); ++oj) {
      std::size_t b = order[oj];
      if (!used[b] && compatible(products[a], products[b])) {
        used[b] = true;
        s.products.push_back(b);
        break;
      }
    }
    s.bases.assign(n, 'Z');
    for (std::size_t idx : s.products) {
      for (std::size_t q = 0; q < n; ++q) {
        if (products[idx].letter(q) != 'I') s.bases[q] = products[idx].letter(q);
      }
    }
    settings.push_back(std::move(s));
  }
  return settings;
}

double expectation_from_counts(const Counts& counts, const PauliString& p, const std::string& setting_bases) {
  if (setting_bases.size() != p.size()) throw Error("expectation_from_counts: setting length mismatch");
  if (p.phase() % 2 != 0) throw Error("expectation_from_counts: Pauli must be Hermitian");
  for (std::size_t q = 0; q < p.size(); ++q) {
    if (p.letter(q) != 'I' && p.letter(q) != setting_bases[q]) {
      throw Error("expectation_from_counts: setting does not measure " + p.str());
    }
  }
  double total = 0.0, acc = 0.0;
  for (const auto& [bits, c] : counts) {
    if (bits.size() != p.size()) throw Error("expectation_from_counts: bit string length mismatch");
    int parity = 0;
    for (std::size_t q = 0; q < p.size(); ++q) {
      if (p.letter(q) != 'I' && bits[q] == '1') parity ^= 1;
    }
    acc += parity ? -c : c;
    total += c;
  }
  if (total <= 0.0) throw EmptySampleError("expectation_from_counts: no counts");
  return p.sign() * acc / total;
}

double fidelity_from_products(const std::vector<double>& product_expectations) {
  std::size_t m = product_expectations.size();
  if (m == 0 || !std::has_single_bit(m)) throw Error("fidelity_from_products: expected 2^n expectations");
  return std::accumulate(product_expectations.begin(), product_expectations.end(), 0.0) / static_cast<double>(m);
}

}  // namespace mqnc
