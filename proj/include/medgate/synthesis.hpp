// Copyright (c) 2026 The medgate developers
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "medgate/linalg.hpp"
#include "medgate/optimize.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace medgate {

/// ZYZ Euler rotation U1 = Rz(gamma) Ry(beta) Rz(alpha), applied alpha
/// first. R_a(t) = exp(-i t sigma_a / 2).
struct Rotation {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  Matrix matrix() const;
};

/// One rotation per qubit (identity = all-zero angles).
struct LocalLayer {
  std::vector<Rotation> rotations;
};

enum class EntanglerTag { kU2, kU3, kUStar };

/// One mediated gate acting on an explicit qubit subset.
struct Entangler {
  EntanglerTag tag = EntanglerTag::kU2;
  std::vector<int> qubits;  // labels, e.g. {1,2} for U2(1,2)
};

/// Entanglers applied simultaneously; disjoint subsets count as depth 1.
struct EntanglerLayer {
  std::vector<Entangler> gates;
};

/// Alternating local/entangler structure
///   L_n  E_{n-1}  ...  E_1  L_1  E_0  L_0   (L_0 applied first),
/// with locals.size() == entanglers.size() + 1.
struct Circuit {
  QubitOrdering ordering = QubitOrdering::plain(2);
  std::vector<LocalLayer> locals;
  std::vector<EntanglerLayer> entanglers;

  int depth() const;  // number of entangler layers
  int parameter_count() const { return 3 * ordering.num_qubits() * int(locals.size()); }
  /// Flattened [LocalLayer0 angles..., LocalLayer1 angles, ...], three
  /// ZYZ angles per qubit per layer.
  std::vector<double> parameters() const;
  void set_parameters(const std::vector<double>& p);

  static Circuit uniform(int n_qubits, const std::vector<EntanglerLayer>& seq);
};

/// Composes the circuit into a unitary on the plain qubit register;
/// entanglers are inserted as their constant qubit-space matrices.
Matrix evaluate_circuit(const Circuit& c);

double objective_state(const Circuit& c, const Vector& target,
                       const Vector& input);
double objective_gate(const Circuit& c, const Matrix& target);

struct SynthesisTarget {
  enum class Kind { kState, kGate };
  Kind kind = Kind::kGate;
  std::string name;
  Matrix gate;    // kind == kGate
  Vector state;   // kind == kState (input is |0...0> unless stated)
  std::optional<int> mediated_depth;  // Table reference depths
  std::optional<int> pairwise_depth;

  static SynthesisTarget for_state(std::string name, Vector s,
                                   std::optional<int> med = {},
                                   std::optional<int> pair = {});
  static SynthesisTarget for_gate(std::string name, Matrix g,
                                  std::optional<int> med = {},
                                  std::optional<int> pair = {});
};

struct SynthesisConfig {
  int restarts = 48;
  std::uint32_t seed = 20120621;
  double cluster_radius = 0.7853981633974483;  // pi/4
  double convergence_threshold = 1e-14;
  NelderMeadOptions local{};
  /// Depth policy: fixed depth when set, otherwise increment from 1.
  std::optional<int> fixed_depth;
  int max_depth = 6;
  /// Wall-clock budget per depth step; <= 0 disables the cap.
  double time_budget_seconds = 0.0;
};

struct SynthesisReport {
  std::string target;
  std::string kind;  // "state" | "gate"
  int depth = 0;
  std::vector<std::pair<std::string, std::vector<int>>> gate_sequence;
  std::vector<double> angles;
  double objective = 0.0;
  std::uint32_t seed = 0;
  int restarts = 0;
  double wall_time_ms = 0.0;
  bool converged = false;
  std::string norm = "frobenius";
  /// "caption-exact", "figure-derived", or "synthesized".
  std::string provenance = "synthesized";
  Circuit circuit;
};

std::string report_to_json(const SynthesisReport& r);

/// Appendix-style two-stage global search (multistart clustering +
/// Nelder-Mead) over the local-layer angles of circuits built from the
/// entangler-layer menu. The menu entry for layer i of an n-layer circuit
/// is menu[i % menu.size()].
SynthesisReport synthesize(const SynthesisTarget& target,
                           const std::vector<EntanglerLayer>& menu,
                           const SynthesisConfig& cfg = {});

/// The ten reference targets with their recorded mediated/pairwise depths.
std::vector<SynthesisTarget> target_registry();

/// Recorded figure circuits. Caption-recovered layouts replay the printed
/// angles; the remaining figures replay deterministic re-synthesized
/// solutions at the published depth (provenance = "figure-derived").
SynthesisReport replay_figure(const std::string& id);
std::vector<std::string> replay_figure_ids();

/// |W_{2N+1}> = (U1 x U1) U_{2N+1} (U1 x U1) |Psi-> |0>^(2N-1), rotations
/// on qubits 1 and 2 only. N in {1,2,3} is the verified range.
SynthesisReport synthesize_w_odd(int n, const SynthesisConfig& cfg = {});

/// z-measurement of one qubit of |W_{2N+1}>: outcome 0 collapses the rest
/// to |W_{2N}> with probability 2N/(2N+1).
std::pair<Vector, double> project_even_w(int n, int measured_qubit,
                                         int outcome);

}  // namespace medgate
