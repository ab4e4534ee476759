// Copyright (c) 2026 The medgate developers
//
// SPDX-License-Identifier: Apache-2.0

#include "medgate/entanglement.hpp"

#include "medgate/optimize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace medgate {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

Matrix magic_basis() {
  Matrix m(4, 4);
  const double r = 1.0 / std::sqrt(2.0);
  m << r, 0, 0, kI * r,  //
      0, kI * r, r, 0,   //
      0, kI * r, -r, 0,  //
      r, 0, 0, -kI * r;
  return m;
}

void require_unitary4(const Matrix& u) {
  if (u.rows() != 4 || u.cols() != 4)
    throw DimensionError("expected a 4x4 matrix");
  if (!is_unitary(u)) throw DomainError("matrix is not unitary");
}

/// SU(4) representative and the magic-basis Gram matrix m = (M^+ U M)^T
/// (M^+ U M).
Matrix magic_gram(const Matrix& u) {
  Matrix u0 = u / std::pow(u.determinant(), 0.25);
  static const Matrix m = magic_basis();
  Matrix v = m.adjoint() * u0 * m;
  return v.transpose() * v;
}

MakhlinInvariants invariants_of_gram(const Matrix& m2) {
  Complex t = m2.trace();
  MakhlinInvariants out;
  out.g1 = t * t / 16.0;
  out.g2 = ((t * t - (m2 * m2).trace()) / 4.0).real();
  return out;
}

/// All chamber-consistent foldings of a raw candidate coordinate vector.
std::vector<std::array<double, 3>> fold(const std::array<double, 3>& c) {
  static const int flips[4][3] = {
      {0, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
  std::vector<std::array<double, 3>> out;
  std::array<double, 3> base;
  for (int i = 0; i < 3; ++i) {
    base[i] = std::fmod(c[i], kPi);
    if (base[i] < 0) base[i] += kPi;
  }
  for (auto& flip : flips) {
    std::array<double, 3> v;
    for (int i = 0; i < 3; ++i) {
      v[i] = flip[i] ? kPi - base[i] : base[i];
      v[i] = std::fmod(v[i], kPi);
      if (v[i] < 0) v[i] += kPi;
    }
    std::sort(v.begin(), v.end(), std::greater<double>());
    if (kPi - v[1] >= v[0] - 1e-12) out.push_back(v);
  }
  return out;
}

}  // namespace

bool WeylPoint::in_chamber(double tol) const {
  return c1 >= c2 - tol && c2 >= c3 - tol && c3 >= -tol &&
         kPi - c2 >= c1 - tol;
}

Matrix canonical_gate(double c1, double c2, double c3) {
  Matrix a = c1 * kron(pauli_x(), pauli_x()) +
             c2 * kron(pauli_y(), pauli_y()) + c3 * kron(pauli_z(), pauli_z());
  return herm_exp(a, -0.5);  // exp(+i A / 2)
}

MakhlinInvariants makhlin_invariants(const Matrix& u) {
  require_unitary4(u);
  return invariants_of_gram(magic_gram(u));
}

MakhlinInvariants makhlin_from_weyl(const WeylPoint& w) {
  double cc = std::cos(w.c1) * std::cos(w.c2) * std::cos(w.c3);
  double ss = std::sin(w.c1) * std::sin(w.c2) * std::sin(w.c3);
  MakhlinInvariants out;
  out.g1 = cc * cc - ss * ss +
           0.25 * kI * std::sin(2 * w.c1) * std::sin(2 * w.c2) *
               std::sin(2 * w.c3);
  out.g2 = 4 * cc * cc - 4 * ss * ss -
           std::cos(2 * w.c1) * std::cos(2 * w.c2) * std::cos(2 * w.c3);
  return out;
}

WeylPoint weyl_coordinates(const Matrix& u) {
  require_unitary4(u);
  Matrix m2 = magic_gram(u);
  Eigen::ComplexEigenSolver<Matrix> es(m2);
  std::array<double, 4> theta;
  for (int i = 0; i < 4; ++i) theta[size_t(i)] = std::arg(es.eigenvalues()(i));
  MakhlinInvariants ref = invariants_of_gram(m2);

  std::vector<std::array<double, 3>> candidates;
  std::array<int, 4> perm = {0, 1, 2, 3};
  std::sort(perm.begin(), perm.end());
  do {
    double a = theta[size_t(perm[0])], b = theta[size_t(perm[1])],
           c = theta[size_t(perm[2])];
    std::array<double, 3> raw = {(a + c) / 2, (b + c) / 2, (a + b) / 2};
    for (const auto& v : fold(raw)) {
      auto got = makhlin_from_weyl({v[0], v[1], v[2]});
      if (std::abs(got.g1 - ref.g1) < 1e-6 && std::abs(got.g2 - ref.g2) < 1e-6)
        candidates.push_back(v);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  // Dedupe and canonicalize: on the chamber base (c3 = 0) prefer the
  // representative with the smaller c1.
  std::sort(candidates.begin(), candidates.end(),
            [](const auto& a, const auto& b) {
              bool abase = std::abs(a[2]) < 1e-7, bbase = std::abs(b[2]) < 1e-7;
              if (abase != bbase) return abase;
              return a[0] < b[0];
            });
  if (candidates.empty()) throw DomainError("no chamber point matched");
  const auto& v = candidates.front();
  return {v[0], v[1], v[2]};
}

bool is_perfect_entangler(const WeylPoint& w) {
  const double tol = 1e-9;
  return w.c1 + w.c2 >= kPi / 2 - tol && w.c1 - w.c2 <= kPi / 2 + tol &&
         w.c2 + w.c3 <= kPi / 2 + tol;
}

bool is_perfect_entangler(const Matrix& u) {
  return is_perfect_entangler(weyl_coordinates(u));
}

double concurrence(const Vector& state) {
  if (state.size() != 4) throw DimensionError("expected a two-qubit state");
  if (!is_normalized(state)) throw DomainError("state is not normalized");
  return 2.0 * std::abs(state(0) * state(3) - state(1) * state(2));
}

double max_concurrence(const Matrix& u, int restarts, std::uint32_t seed) {
  require_unitary4(u);
  auto objective = [&u](const std::vector<double>& p) {
    auto bloch = [](double t, double ph) {
      Vector v(2);
      v << std::cos(t / 2), std::exp(Complex(0, ph)) * std::sin(t / 2);
      return v;
    };
    Vector a = bloch(p[0], p[1]), b = bloch(p[2], p[3]);
    Vector in(4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) in(2 * i + j) = a(i) * b(j);
    Vector out = u * in;
    return -2.0 * std::abs(out(0) * out(3) - out(1) * out(2));
  };
  MultistartOptions opts;
  opts.starts = restarts;
  opts.seed = seed;
  opts.local.restart_threshold = -2.0;  // objective is negated concurrence
  auto res = multistart_minimize(objective, 4, opts);
  return std::clamp(-res.value, 0.0, 1.0);
}

double state_fidelity(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionError("dimension mismatch");
  double f = std::norm(a.dot(b));
  return std::clamp(f, 0.0, 1.0);
}

double operator_error(const Matrix& a, const Matrix& b, bool phase_free) {
  return operator_distance(a, b, phase_free);
}

}  // namespace medgate
