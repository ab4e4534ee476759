// Copyright (c) 2026 The medgate developers
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "medgate/linalg.hpp"

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace medgate {

enum class Topology { kLinear3, kStarN };

/// Coupling graph: every listed qubit couples to the central ancilla with
/// strength J (energy units, hbar = 1).
struct SpinGeometry {
  QubitOrdering ordering;
  std::map<int, double> couplings;  // qubit label -> J
  Topology topology;

  /// linear-3: qubits 1,2 coupled to ancilla with strengths j1, j2.
  static SpinGeometry linear3(double j1, double j2);
  /// star-N: N qubits coupled to the ancilla with equal strength j.
  static SpinGeometry star(int n_qubits, double j);

  bool equal_couplings(double tol = 1e-12) const;
  double coupling() const;  // requires equal couplings
};

/// H = sum_k J_k s_k . s_c with spin-1/2 operators s = sigma/2.
Matrix build_hamiltonian(const SpinGeometry& g);

/// Result of projecting a register unitary onto (qubit gate) x (identity
/// on the ancilla), with the best gate in Frobenius norm. `raw_gate`
/// carries the natural phase (U = raw_gate x I when residual vanishes);
/// `qubit_gate` is the determinant-normalized representative and
/// `global_phase * qubit_gate == raw_gate`.
struct FactorizationResult {
  bool factorizes = false;
  double residual = 0.0;
  Complex global_phase{1.0, 0.0};
  std::optional<Matrix> qubit_gate;
  Matrix raw_gate;
};

FactorizationResult detect_factorization(const Matrix& u,
                                         const QubitOrdering& ordering,
                                         double tolerance = kDefaultTol);

enum class GateTag { kIdentity, kU, kUSquared, kUCubed, kMinusIdentity, kOther };

std::string gate_tag_name(GateTag tag);

struct GatePeriod {
  double t = 0.0;
  double residual = 0.0;
  GateTag tag = GateTag::kOther;
  Matrix gate;  // raw qubit-space gate at the period (natural phase)
};

/// Mediated-gate periods found on (0, t_max]; base_period is the first
/// nontrivial one.
struct GatePeriodFamily {
  double base_period = 0.0;
  std::vector<GatePeriod> members;
};

/// Scan t in (0, t_max] for factorization windows and refine each to
/// relative precision ~1e-12. Requires equal couplings.
GatePeriodFamily scan_mediated_gates(const SpinGeometry& g, double t_max,
                                     int grid = 2048);

/// Residual-only scan (no equal-coupling requirement); returns refined
/// windows with residual below `threshold`. Used for uniqueness checks.
std::vector<GatePeriod> scan_factorization_windows(const SpinGeometry& g,
                                                   double t_max, int grid,
                                                   double threshold);

enum class MediatedGate { kU2, kU3, kU2Squared, kU3Cubed };

/// Closed-form constant matrices: U2 of the two-qubit mediated gate family
/// and U3 of the star-3 family, with algebraically exact entries.
Matrix mediated_gate_constant(MediatedGate tag);

/// Mediated gate on 2N+1 qubits (star geometry, equal couplings J=1,
/// evaluated at the first nontrivial period t = 2*pi). N=1 reproduces U3.
Matrix mediated_gate_star(int n_qubits);

/// Appendix-style closed-form evolution of the linear-3 chain: the
/// six-term S3 expansion with J = j_ratio = J_a/J_b. Dim 8; equals
/// herm_exp(build_hamiltonian(linear3(j_ratio*j_b, j_b)), t).
Matrix closed_form_u(double j_ratio, double j_b, double t);

/// Integer-coefficient recursion v_{n+1} = T v_n for the S3 expansion of
/// Q^n (coefficient order f, c, e, a, b, d). Exposed for oracle tests.
std::vector<std::array<double, 6>> s3_recursion_coefficients(double j_ratio,
                                                             int n_max);
/// Closed-form coefficients (a_n..f_n) for the same expansion.
std::array<double, 6> s3_closed_form_coefficients(double j_ratio, int n);

/// Trace fidelity of the linear-3 mediated gate under detuning
/// J2 = J1 (1 + delta), evolved for the unperturbed period 4*pi/3.
double detuning_fidelity(double delta);

/// Spin-bus scaling proportionalities for an odd bus of length N.
struct ScalingReport {
  int bus_size = 1;
  int mediated_depth = 2;        // Bell protocol depth, independent of N
  double mediated_time_factor = 1.0;  // T_g scales as sqrt(N)
  int pairwise_depth = 4;        // SWAP-chain Bell protocol, O(N)
};

ScalingReport scaling_report(int bus_size);

}  // namespace medgate
