// Copyright (c) 2026 The medgate developers
//
// SPDX-License-Identifier: Apache-2.0

#include "medgate/dynamics.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <numbers>

namespace medgate {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

/// Evolution with a cached eigensystem, for dense time scans.
class CachedEvolution {
 public:
  explicit CachedEvolution(const Matrix& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    w_ = es.eigenvalues();
    v_ = es.eigenvectors();
  }
  Matrix at(double t) const {
    Vector phases(w_.size());
    for (Eigen::Index k = 0; k < w_.size(); ++k) {
      phases(k) = std::exp(-kI * w_(k) * t);
    }
    return v_ * phases.asDiagonal() * v_.adjoint();
  }

 private:
  Eigen::VectorXd w_;
  Matrix v_;
};

/// Golden-section refinement of a V-shaped residual minimum.
double golden_minimize(const std::function<double(double)>& f, double a,
                       double b, double rel_tol) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - phi * (b - a);
  double x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while ((b - a) > rel_tol * std::max(1.0, std::abs(a) + std::abs(b))) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

GateTag classify_gate(const Matrix& raw, const std::vector<Matrix>& powers,
                      double tol = 1e-8) {
  // powers[k] holds U^{k+1}; the last entry is expected to be (-)I.
  const Eigen::Index d = raw.rows();
  if (max_norm(raw - Matrix::Identity(d, d)) < tol) return GateTag::kIdentity;
  if (max_norm(raw + Matrix::Identity(d, d)) < tol) {
    return GateTag::kMinusIdentity;
  }
  static const std::array<GateTag, 3> tags = {GateTag::kU, GateTag::kUSquared,
                                              GateTag::kUCubed};
  for (std::size_t k = 0; k < powers.size() && k < tags.size(); ++k) {
    if (max_norm(raw - powers[k]) < tol) return tags[k];
  }
  return GateTag::kOther;
}

}  // namespace

SpinGeometry SpinGeometry::linear3(double j1, double j2) {
  if (j1 <= 0.0 || j2 <= 0.0) {
    throw DomainError("couplings must be strictly positive");
  }
  SpinGeometry g{QubitOrdering::with_ancilla(2), {}, Topology::kLinear3};
  g.couplings[1] = j1;
  g.couplings[2] = j2;
  return g;
}

SpinGeometry SpinGeometry::star(int n_qubits, double j) {
  if (n_qubits < 1) throw DomainError("star geometry needs >= 1 qubit");
  if (j <= 0.0) throw DomainError("couplings must be strictly positive");
  SpinGeometry g{QubitOrdering::with_ancilla(n_qubits), {}, Topology::kStarN};
  for (int q = 1; q <= n_qubits; ++q) g.couplings[q] = j;
  return g;
}

bool SpinGeometry::equal_couplings(double tol) const {
  const double j0 = couplings.begin()->second;
  for (const auto& [label, j] : couplings) {
    if (std::abs(j - j0) > tol * std::max(1.0, std::abs(j0))) return false;
  }
  return true;
}

double SpinGeometry::coupling() const {
  if (!equal_couplings()) {
    throw DomainError("geometry does not have equal couplings");
  }
  return couplings.begin()->second;
}

Matrix build_hamiltonian(const SpinGeometry& g) {
  const Eigen::Index dim = g.ordering.dim();
  const int anc = g.ordering.ancilla_label();
  Matrix h = Matrix::Zero(dim, dim);
  const std::array<Matrix, 3> paulis = {pauli_x(), pauli_y(), pauli_z()};
  for (const auto& [label, j] : g.couplings) {
    if (j <= 0.0) throw DomainError("couplings must be strictly positive");
    for (const Matrix& s : paulis) {
      h += (j / 4.0) * embed_operator(g.ordering, kron(s, s), {label, anc});
    }
  }
  return h;
}

FactorizationResult detect_factorization(const Matrix& u,
                                         const QubitOrdering& ordering,
                                         double tolerance) {
  const Eigen::Index dim = u.rows();
  if (dim != ordering.dim() || !ordering.has_ancilla()) {
    throw DimensionError("detect_factorization: dimension/ordering mismatch");
  }
  const Eigen::Index qd = dim / 2;
  // Least-squares optimal qubit factor for U ~ A (x) I_2: ancilla-diagonal
  // average of the 2x2 blocks (ancilla is the least significant bit).
  Matrix a0(qd, qd);
  for (Eigen::Index i = 0; i < qd; ++i) {
    for (Eigen::Index j = 0; j < qd; ++j) {
      a0(i, j) = 0.5 * (u(2 * i, 2 * j) + u(2 * i + 1, 2 * j + 1));
    }
  }
  FactorizationResult res;
  res.raw_gate = a0;
  res.residual = max_norm(u - kron(a0, identity2()));
  res.factorizes = res.residual <= tolerance;
  if (res.factorizes) {
    // Determinant-normalized representative; the raw gate keeps the phase.
    const Complex det = a0.determinant();
    const Complex phase =
        std::exp(kI * std::arg(det) / static_cast<double>(qd));
    res.global_phase = phase;
    res.qubit_gate = a0 / phase;
  }
  return res;
}

std::vector<GatePeriod> scan_factorization_windows(const SpinGeometry& g,
                                                   double t_max, int grid,
                                                   double threshold) {
  if (grid < 8) throw DomainError("scan grid too coarse");
  const CachedEvolution evo(build_hamiltonian(g));
  const QubitOrdering& ord = g.ordering;
  auto residual = [&](double t) {
    return detect_factorization(evo.at(t), ord).residual;
  };
  const double dt = t_max / grid;
  std::vector<double> r(grid + 1);
  for (int i = 0; i <= grid; ++i) r[i] = residual(i * dt);
  std::vector<GatePeriod> windows;
  for (int i = 1; i < grid; ++i) {
    if (r[i] <= r[i - 1] && r[i] <= r[i + 1]) {
      const double t =
          golden_minimize(residual, (i - 1) * dt, (i + 1) * dt, 1e-13);
      const double res = residual(t);
      if (res < threshold && t > dt / 2) {
        GatePeriod w;
        w.t = t;
        w.residual = res;
        w.gate = detect_factorization(evo.at(t), ord).raw_gate;
        // Deduplicate refined minima that collapse to the same period.
        if (windows.empty() ||
            std::abs(windows.back().t - t) > 1e-6 * std::max(1.0, t)) {
          windows.push_back(std::move(w));
        }
      }
    }
  }
  return windows;
}

GatePeriodFamily scan_mediated_gates(const SpinGeometry& g, double t_max,
                                     int grid) {
  if (!g.equal_couplings()) {
    throw DomainError(
        "mediated gates require equal couplings (the linear-3 factorization "
        "is unique at J1 = J2; star gates are derived for equal J)");
  }
  auto windows = scan_factorization_windows(g, t_max, grid, 1e-9);
  GatePeriodFamily fam;
  std::vector<Matrix> powers;
  const int nq = g.ordering.num_qubits();
  const Matrix base = (g.topology == Topology::kLinear3)
                          ? mediated_gate_constant(MediatedGate::kU2)
                          : mediated_gate_star(nq);
  powers.push_back(base);
  powers.push_back(base * base);
  powers.push_back(base * base * base);
  for (auto& w : windows) {
    w.tag = classify_gate(w.gate, powers);
    if (fam.base_period == 0.0 && w.tag != GateTag::kIdentity) {
      fam.base_period = w.t;
    }
    fam.members.push_back(w);
  }
  return fam;
}

Matrix mediated_gate_constant(MediatedGate tag) {
  const double r3 = std::sqrt(3.0);
  Matrix u2(4, 4);
  u2.setZero();
  u2(0, 0) = u2(3, 3) = -Complex(1.0, r3) / 2.0;
  u2(1, 1) = u2(2, 2) = -Complex(-1.0, r3) / 4.0;
  u2(1, 2) = u2(2, 1) = -Complex(3.0, r3) / 4.0;
  switch (tag) {
    case MediatedGate::kU2:
      return u2;
    case MediatedGate::kU2Squared:
      return u2 * u2;
    case MediatedGate::kU3:
      return mediated_gate_star(3);
    case MediatedGate::kU3Cubed:
      return -mediated_gate_star(3);
  }
  throw DomainError("unknown mediated gate tag");
}

Matrix mediated_gate_star(int n_qubits) {
  if (n_qubits == 3) {
    Matrix u3(8, 8);
    u3.setZero();
    const double a = -1.0 / 3.0, b = 2.0 / 3.0;
    u3(0, 0) = u3(7, 7) = 1.0;
    u3(1, 1) = u3(2, 2) = u3(4, 4) = a;
    u3(1, 2) = u3(2, 1) = u3(1, 4) = u3(4, 1) = u3(2, 4) = u3(4, 2) = b;
    u3(3, 3) = u3(5, 5) = u3(6, 6) = a;
    u3(3, 5) = u3(5, 3) = u3(3, 6) = u3(6, 3) = u3(5, 6) = u3(6, 5) = b;
    return kI * u3;
  }
  // General odd star: evaluate the evolution at the first gate period
  // t = 2*pi (J = 1) and factor out the ancilla.
  if (n_qubits < 1 || n_qubits % 2 == 0) {
    throw DomainError("star mediated gates exist for an odd qubit count");
  }
  const SpinGeometry g = SpinGeometry::star(n_qubits, 1.0);
  const Matrix u = herm_exp(build_hamiltonian(g), 2.0 * kPi);
  const auto fact = detect_factorization(u, g.ordering, 1e-8);
  if (!fact.factorizes) {
    throw DomainError("star evolution does not factor at t = 2*pi");
  }
  return fact.raw_gate;
}

std::array<double, 6> s3_closed_form_coefficients(double j_ratio, int n) {
  const double j = j_ratio;
  const double p = 1.0 + j;
  const double q = 1.0 - j + j * j;
  std::array<double, 6> c{};  // order: a, b, c, d, e, f
  if (n % 2 == 0) {
    const double qn = std::pow(q, n / 2);
    c[0] = c[1] = (std::pow(p, n) - qn) / 3.0;
    c[5] = (std::pow(p, n) + 2.0 * qn) / 3.0;
  } else {
    const double qn = std::pow(q, (n - 1) / 2);
    c[2] = (std::pow(p, n) + (2.0 * j - 1.0) * qn) / 3.0;
    c[3] = (std::pow(p, n) - (1.0 + j) * qn) / 3.0;
    c[4] = (std::pow(p, n) + (2.0 - j) * qn) / 3.0;
  }
  return c;
}

std::vector<std::array<double, 6>> s3_recursion_coefficients(double j_ratio,
                                                             int n_max) {
  const double j = j_ratio;
  // State order (f, c, e, a, b, d), matching the recursion matrix T.
  std::array<double, 6> v = {1, 0, 0, 0, 0, 0};
  std::vector<std::array<double, 6>> out;
  auto record = [&](const std::array<double, 6>& s) {
    // Re-order to (a, b, c, d, e, f) for the caller.
    out.push_back({s[3], s[4], s[1], s[5], s[2], s[0]});
  };
  record(v);
  for (int n = 0; n < n_max; ++n) {
    std::array<double, 6> w{};
    w[0] = j * v[1] + v[2];
    w[1] = j * v[0] + v[3];
    w[2] = v[0] + j * v[4];
    w[3] = v[1] + j * v[5];
    w[4] = j * v[2] + v[5];
    w[5] = j * v[3] + v[4];
    v = w;
    record(v);
  }
  return out;
}

Matrix closed_form_u(double j_ratio, double j_b, double t) {
  if (j_b == 0.0) throw DomainError("closed_form_u requires J_b != 0");
  const double j = j_ratio;
  const double s = std::sqrt(1.0 - j + j * j);
  const double a = j_b * t * (1.0 + j) / 2.0;
  const double b = j_b * t * s / 2.0;
  const double ca = std::cos(a), cb = std::cos(b);
  const double sa = std::sin(a), sb = std::sin(b);

  // Appendix labeling: spins 1 and 3 are the qubits, spin 2 the ancilla.
  // In register order (qubit1, qubit2, ancilla) that means
  //   p12 -> swap(qubit1, ancilla), p23 -> swap(ancilla, qubit2),
  //   p13 -> swap(qubit1, qubit2).
  const QubitOrdering ord = QubitOrdering::with_ancilla(2);
  const int anc = ord.ancilla_label();
  const Matrix p12 = transposition(ord, 1, anc);
  const Matrix p23 = transposition(ord, 2, anc);
  const Matrix p13 = transposition(ord, 1, 2);
  const Matrix p231 = p23 * p12;
  const Matrix p312 = p12 * p23;
  const Matrix id = Matrix::Identity(8, 8);

  const Complex prefactor = std::exp(kI * j_b * t * (1.0 + j) / 4.0) / 3.0;
  Matrix u = (ca - cb) * (p231 + p312) + (ca + 2.0 * cb) * id;
  u -= kI * (sa + (2.0 * j - 1.0) / s * sb) * p12;
  u -= kI * (sa - (1.0 + j) / s * sb) * p13;
  u -= kI * (sa + (2.0 - j) / s * sb) * p23;
  return prefactor * u;
}

double detuning_fidelity(double delta) {
  const double t_g = 4.0 * kPi / 3.0;
  const SpinGeometry ideal = SpinGeometry::linear3(1.0, 1.0);
  const SpinGeometry detuned = SpinGeometry::linear3(1.0, 1.0 + delta);
  const Matrix u0 = herm_exp(build_hamiltonian(ideal), t_g);
  const Matrix ud = herm_exp(build_hamiltonian(detuned), t_g);
  const double denom = (u0.adjoint() * u0).trace().real();
  return std::abs((ud.adjoint() * u0).trace()) / denom;
}

ScalingReport scaling_report(int bus_size) {
  if (bus_size < 1 || bus_size % 2 == 0) {
    throw DomainError("spin bus length must be odd");
  }
  ScalingReport rep;
  rep.bus_size = bus_size;
  rep.mediated_depth = 2;  // Bell protocol, independent of N
  rep.mediated_time_factor = std::sqrt(static_cast<double>(bus_size));
  rep.pairwise_depth = 2 + 2 * bus_size;  // CNOT core plus the SWAP chain
  return rep;
}

std::string gate_tag_name(GateTag tag) {
  switch (tag) {
    case GateTag::kIdentity:
      return "I";
    case GateTag::kU:
      return "U";
    case GateTag::kUSquared:
      return "U^2";
    case GateTag::kUCubed:
      return "-U";
    case GateTag::kMinusIdentity:
      return "-I";
    case GateTag::kOther:
      return "other";
  }
  return "other";
}

}  // namespace medgate
