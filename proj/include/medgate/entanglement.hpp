// Copyright (c) 2026 The medgate developers
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "medgate/linalg.hpp"

#include <cstdint>

namespace medgate {

/// Canonical Cartan coordinates folded into the Weyl chamber:
/// pi - c2 >= c1 >= c2 >= c3 >= 0.
struct WeylPoint {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  bool in_chamber(double tol = 1e-9) const;
};

struct MakhlinInvariants {
  Complex g1{0.0, 0.0};
  double g2 = 0.0;
};

/// exp(i/2 (c1 XX + c2 YY + c3 ZZ)), the nonlocal kernel of the Cartan
/// decomposition at the given chamber point.
Matrix canonical_gate(double c1, double c2, double c3);

/// Magic-basis Makhlin invariants of a 4x4 unitary (global phase removed).
MakhlinInvariants makhlin_invariants(const Matrix& u);

/// Invariants evaluated directly from chamber coordinates.
MakhlinInvariants makhlin_from_weyl(const WeylPoint& w);

/// Cartan coordinates of a 4x4 unitary, folded into the chamber. On the
/// chamber base (c3 = 0) the representative with c1 <= pi - c1 is chosen
/// when both fold targets are consistent with the invariants.
WeylPoint weyl_coordinates(const Matrix& u);

/// Membership in the perfect-entangler polyhedron (inclusive boundaries).
bool is_perfect_entangler(const Matrix& u);
bool is_perfect_entangler(const WeylPoint& w);

/// Pure two-qubit state concurrence C = 2 |a00 a11 - a01 a10|.
double concurrence(const Vector& state);

/// Maximum concurrence u can generate from a product input, by multistart
/// search over the two Bloch spheres.
double max_concurrence(const Matrix& u, int restarts = 64,
                       std::uint32_t seed = 20120621);

/// |<a|b>|^2.
double state_fidelity(const Vector& a, const Vector& b);

/// Frobenius-norm operator error, optionally phase-free.
double operator_error(const Matrix& a, const Matrix& b, bool phase_free);

}  // namespace medgate
