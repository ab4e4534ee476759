// Copyright (c) 2026 The medgate developers
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace medgate {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Default tolerance for invariant checks (unitarity, hermiticity,
/// normalization). Optimizer convergence uses the much tighter 1e-14
/// threshold declared in synthesis.hpp.
inline constexpr double kDefaultTol = 1e-10;

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Pauli matrices and the 2x2 identity.
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix identity2();

/// Max-norm (elementwise) of a matrix; the project-wide equality metric.
double max_norm(const Matrix& m);

inline bool approx_equal(const Matrix& a, const Matrix& b,
                         double tol = kDefaultTol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return max_norm(a - b) <= tol;
}

bool is_hermitian(const Matrix& m, double tol = kDefaultTol);
bool is_unitary(const Matrix& m, double tol = kDefaultTol);

/// Kronecker product. Both factors must be square.
Matrix kron(const Matrix& a, const Matrix& b);
Matrix kron(const Matrix& a, const Matrix& b, const Matrix& c);

/// Spectral exponential e^{-i h t} of a Hermitian matrix. Throws
/// DomainError if h is not Hermitian within kDefaultTol.
Matrix herm_exp(const Matrix& h, double t);

/// Spin labels with the ancilla stored last; the first label is the most
/// significant bit of the computational basis index.
class QubitOrdering {
 public:
  /// n_qubits data qubits labeled 1..n_qubits followed by one ancilla.
  static QubitOrdering with_ancilla(int n_qubits);
  /// Plain register without an ancilla (labels 1..n).
  static QubitOrdering plain(int n_qubits);

  int num_spins() const { return static_cast<int>(labels_.size()); }
  int num_qubits() const { return has_ancilla_ ? num_spins() - 1 : num_spins(); }
  bool has_ancilla() const { return has_ancilla_; }
  int ancilla_label() const;
  Eigen::Index dim() const { return Eigen::Index(1) << num_spins(); }

  /// Position of a label in the register (0 = most significant bit).
  int position_of(int label) const;
  const std::vector<int>& labels() const { return labels_; }

 private:
  QubitOrdering(std::vector<int> labels, bool has_ancilla);
  std::vector<int> labels_;
  bool has_ancilla_;
};

/// Permutation matrix exchanging the computational roles of spins i and j.
/// Entries are exactly 0/1; P = P^T = P^{-1}.
Matrix transposition(const QubitOrdering& ordering, int label_i, int label_j);

/// Embed an operator acting on a subset of spins (given by labels, in the
/// operator's own tensor order) into the full register.
Matrix embed_operator(const QubitOrdering& ordering, const Matrix& op,
                      const std::vector<int>& labels);

/// Density-matrix reduction onto the spins in `keep` (register order).
/// Accepts a density matrix of the full register dimension.
Matrix partial_trace(const Matrix& rho, const QubitOrdering& ordering,
                     const std::vector<int>& keep);

/// Pure-state convenience overload: traces |psi><psi|.
Matrix partial_trace(const Vector& psi, const QubitOrdering& ordering,
                     const std::vector<int>& keep);

bool is_normalized(const Vector& psi, double tol = kDefaultTol);

/// Frobenius norm distance, optionally minimized over a global phase on b.
double operator_distance(const Matrix& a, const Matrix& b, bool phase_free);

// JSON serialization: {"dim": d, "entries": [[re, im], ...]} row-major,
// 17 significant digits.
std::string matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const std::string& text);
std::string state_to_json(const Vector& v);
Vector state_from_json(const std::string& text);

}  // namespace medgate
