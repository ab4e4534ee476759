// Copyright (c) 2026 The medgate developers
//
// SPDX-License-Identifier: Apache-2.0

#include "medgate/linalg.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>

namespace medgate {

namespace {
using json = nlohmann::json;
constexpr Complex kI{0.0, 1.0};
}  // namespace

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix identity2() { return Matrix::Identity(2, 2); }

double max_norm(const Matrix& m) {
  return m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_norm(m - m.adjoint()) <= tol;
}

bool is_unitary(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_norm(m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())) <=
         tol;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols()) {
    throw DimensionError("kron requires square matrices");
  }
  const Eigen::Index ar = a.rows(), br = b.rows();
  Matrix out(ar * br, ar * br);
  for (Eigen::Index i = 0; i < ar; ++i) {
    for (Eigen::Index j = 0; j < ar; ++j) {
      out.block(i * br, j * br, br, br) = a(i, j) * b;
    }
  }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b, const Matrix& c) {
  return kron(kron(a, b), c);
}

Matrix herm_exp(const Matrix& h, double t) {
  if (!is_hermitian(h)) {
    throw DomainError("herm_exp: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Eigen::VectorXd& w = es.eigenvalues();
  const Matrix& v = es.eigenvectors();
  Vector phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    phases(k) = std::exp(-kI * w(k) * t);
  }
  return v * phases.asDiagonal() * v.adjoint();
}

QubitOrdering::QubitOrdering(std::vector<int> labels, bool has_ancilla)
    : labels_(std::move(labels)), has_ancilla_(has_ancilla) {}

QubitOrdering QubitOrdering::with_ancilla(int n_qubits) {
  if (n_qubits < 1) throw DomainError("need at least one qubit");
  std::vector<int> labels(n_qubits + 1);
  for (int i = 0; i < n_qubits; ++i) labels[i] = i + 1;
  labels[n_qubits] = n_qubits + 1;  // ancilla, stored last
  return QubitOrdering(std::move(labels), true);
}

QubitOrdering QubitOrdering::plain(int n_qubits) {
  if (n_qubits < 1) throw DomainError("need at least one qubit");
  std::vector<int> labels(n_qubits);
  for (int i = 0; i < n_qubits; ++i) labels[i] = i + 1;
  return QubitOrdering(std::move(labels), false);
}

int QubitOrdering::ancilla_label() const {
  if (!has_ancilla_) throw DomainError("ordering has no ancilla");
  return labels_.back();
}

int QubitOrdering::position_of(int label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) {
    throw DimensionError("unknown spin label " + std::to_string(label));
  }
  return static_cast<int>(it - labels_.begin());
}

Matrix transposition(const QubitOrdering& ordering, int label_i, int label_j) {
  if (label_i == label_j) throw DomainError("transposition needs i != j");
  const int n = ordering.num_spins();
  const int pi = ordering.position_of(label_i);
  const int pj = ordering.position_of(label_j);
  const int bi = n - 1 - pi;  // bit positions, first label = MSB
  const int bj = n - 1 - pj;
  const Eigen::Index dim = ordering.dim();
  Matrix p = Matrix::Zero(dim, dim);
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    const auto u = static_cast<unsigned long long>(idx);
    const unsigned long long vi = (u >> bi) & 1ULL;
    const unsigned long long vj = (u >> bj) & 1ULL;
    unsigned long long swapped = u & ~((1ULL << bi) | (1ULL << bj));
    swapped |= (vi << bj) | (vj << bi);
    p(static_cast<Eigen::Index>(swapped), idx) = 1.0;
  }
  return p;
}

Matrix embed_operator(const QubitOrdering& ordering, const Matrix& op,
                      const std::vector<int>& labels) {
  const int n = ordering.num_spins();
  const int k = static_cast<int>(labels.size());
  if (op.rows() != (Eigen::Index(1) << k)) {
    throw DimensionError("embed_operator: operator/label count mismatch");
  }
  std::vector<int> bits(k);
  for (int a = 0; a < k; ++a) {
    bits[a] = n - 1 - ordering.position_of(labels[a]);
  }
  const Eigen::Index dim = ordering.dim();
  Matrix out = Matrix::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const auto u = static_cast<unsigned long long>(col);
    unsigned long long sub = 0;
    for (int a = 0; a < k; ++a) sub = (sub << 1) | ((u >> bits[a]) & 1ULL);
    unsigned long long rest = u;
    for (int a = 0; a < k; ++a) rest &= ~(1ULL << bits[a]);
    for (unsigned long long srow = 0; srow < (1ULL << k); ++srow) {
      const Complex amp = op(static_cast<Eigen::Index>(srow),
                             static_cast<Eigen::Index>(sub));
      if (amp == 0.0) continue;
      unsigned long long row = rest;
      for (int a = 0; a < k; ++a) {
        row |= ((srow >> (k - 1 - a)) & 1ULL) << bits[a];
      }
      out(static_cast<Eigen::Index>(row), col) += amp;
    }
  }
  return out;
}

Matrix partial_trace(const Matrix& rho, const QubitOrdering& ordering,
                     const std::vector<int>& keep) {
  if (keep.empty()) throw DomainError("partial_trace: empty keep set");
  const int n = ordering.num_spins();
  if (rho.rows() != ordering.dim() || rho.cols() != ordering.dim()) {
    throw DimensionError("partial_trace: dimension mismatch");
  }
  std::vector<int> keep_bits;
  for (int label : keep) keep_bits.push_back(n - 1 - ordering.position_of(label));
  std::vector<int> drop_bits;
  for (int b = 0; b < n; ++b) {
    if (std::find(keep_bits.begin(), keep_bits.end(), b) == keep_bits.end()) {
      drop_bits.push_back(b);
    }
  }
  const int k = static_cast<int>(keep_bits.size());
  const int d = static_cast<int>(drop_bits.size());
  const Eigen::Index out_dim = Eigen::Index(1) << k;
  Matrix out = Matrix::Zero(out_dim, out_dim);
  auto compose = [&](unsigned long long kept, unsigned long long dropped) {
    unsigned long long idx = 0;
    for (int a = 0; a < k; ++a) {
      idx |= ((kept >> (k - 1 - a)) & 1ULL) << keep_bits[a];
    }
    for (int a = 0; a < d; ++a) {
      idx |= ((dropped >> (d - 1 - a)) & 1ULL) << drop_bits[a];
    }
    return static_cast<Eigen::Index>(idx);
  };
  for (unsigned long long i = 0; i < (1ULL << k); ++i) {
    for (unsigned long long j = 0; j < (1ULL << k); ++j) {
      Complex sum = 0.0;
      for (unsigned long long e = 0; e < (1ULL << d); ++e) {
        sum += rho(compose(i, e), compose(j, e));
      }
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = sum;
    }
  }
  return out;
}

Matrix partial_trace(const Vector& psi, const QubitOrdering& ordering,
                     const std::vector<int>& keep) {
  const Matrix rho = psi * psi.adjoint();
  return partial_trace(rho, ordering, keep);
}

bool is_normalized(const Vector& psi, double tol) {
  return std::abs(psi.squaredNorm() - 1.0) <= tol;
}

double operator_distance(const Matrix& a, const Matrix& b, bool phase_free) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("operator_distance: dimension mismatch");
  }
  if (!phase_free) return (a - b).norm();
  const double na = a.squaredNorm();
  const double nb = b.squaredNorm();
  const double overlap = std::abs((a.adjoint() * b).trace());
  return std::sqrt(std::max(0.0, na + nb - 2.0 * overlap));
}

std::string matrix_to_json(const Matrix& m) {
  json j;
  j["dim"] = m.rows();
  json entries = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      entries.push_back({m(i, k).real(), m(i, k).imag()});
    }
  }
  j["entries"] = entries;
  return j.dump();
}

Matrix matrix_from_json(const std::string& text) {
  const json j = json::parse(text);
  const Eigen::Index dim = j.at("dim").get<Eigen::Index>();
  const auto& entries = j.at("entries");
  if (static_cast<Eigen::Index>(entries.size()) != dim * dim) {
    throw DimensionError("matrix_from_json: entry count != dim^2");
  }
  Matrix m(dim, dim);
  Eigen::Index idx = 0;
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index k = 0; k < dim; ++k, ++idx) {
      m(i, k) = Complex(entries[idx][0].get<double>(),
                        entries[idx][1].get<double>());
    }
  }
  return m;
}

std::string state_to_json(const Vector& v) {
  json j;
  j["dim"] = v.size();
  json entries = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    entries.push_back({v(i).real(), v(i).imag()});
  }
  j["entries"] = entries;
  return j.dump();
}

Vector state_from_json(const std::string& text) {
  const json j = json::parse(text);
  const Eigen::Index dim = j.at("dim").get<Eigen::Index>();
  const auto& entries = j.at("entries");
  if (static_cast<Eigen::Index>(entries.size()) != dim) {
    throw DimensionError("state_from_json: entry count != dim");
  }
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    v(i) = Complex(entries[i][0].get<double>(), entries[i][1].get<double>());
  }
  return v;
}

}  // namespace medgate
