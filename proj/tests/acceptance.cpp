// Copyright (c) 2026 The medgate developers
//
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance gate: one pass/fail line per criterion. Exit 0 iff all pass.
// MEDGATE_ACCEPT_FAST=1 trims the per-target optimizer budgets of the
// long-running criteria (8, 9) without changing what is asserted.

#include "medgate/dynamics.hpp"
#include "medgate/entanglement.hpp"
#include "medgate/synthesis.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

using namespace medgate;

namespace {

constexpr double kPi = std::numbers::pi;

int g_failures = 0;

void criterion(int n, const std::string& desc,
               const std::function<bool()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string err;
  try {
    ok = body();
  } catch (const std::exception& e) {
    err = e.what();
  }
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  std::printf("criterion %2d: %s — %s (%.1f s)%s%s\n", n,
              ok ? "PASS" : "FAIL", desc.c_str(), secs,
              err.empty() ? "" : " error: ", err.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

Matrix random_unitary(int dim, std::mt19937& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = Complex(n(rng), n(rng));
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
  return q;
}

Vector random_state(int dim, std::mt19937& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(n(rng), n(rng));
  return v / v.norm();
}

double phase_free_max_norm(const Matrix& a, const Matrix& b) {
  Complex tr = (a.adjoint() * b).trace();
  Complex phase = tr / std::abs(tr);
  return max_norm(a * phase - b);
}

bool fast_mode() {
  const char* env = std::getenv("MEDGATE_ACCEPT_FAST");
  return env && env[0] == '1';
}

EntanglerLayer u2_on(std::vector<int> q) {
  return EntanglerLayer{{Entangler{EntanglerTag::kU2, std::move(q)}}};
}
EntanglerLayer u3_on(std::vector<int> q) {
  return EntanglerLayer{{Entangler{EntanglerTag::kU3, std::move(q)}}};
}

// Criterion 8 helper: fresh synthesis at depth n must converge below 1e-14
// and the same pipeline at depth n-1 must not.
bool fresh_at_depth(const SynthesisTarget& t,
                    const std::vector<EntanglerLayer>& menu_n,
                    const std::vector<EntanglerLayer>& menu_nm1,
                    int restarts_pass, int restarts_fail) {
  SynthesisConfig cfg;
  cfg.restarts = restarts_pass;
  cfg.fixed_depth = int(menu_n.size());
  SynthesisConfig cfg1 = cfg;
  // Full menus are passed layer-by-layer: fixed_depth equals menu length,
  // so menu[i % size] enumerates exactly the given sequence.
  SynthesisReport at_n = synthesize(t, menu_n, cfg);
  if (!at_n.converged) {
    std::fprintf(stderr, "  [%s] depth %d objective %.3e (not converged)\n",
                 t.name.c_str(), at_n.depth, at_n.objective);
    return false;
  }
  if (menu_nm1.empty()) return true;
  cfg1.fixed_depth = int(menu_nm1.size());
  cfg1.restarts = restarts_fail;
  SynthesisReport below = synthesize(t, menu_nm1, cfg1);
  if (below.converged) {
    std::fprintf(stderr, "  [%s] unexpectedly converged at depth %d\n",
                 t.name.c_str(), below.depth);
    return false;
  }
  return true;
}

}  // namespace

int main() {
  const bool fast = fast_mode();

  criterion(1, "linear-3 scan factorizes at 4*pi/3 onto U2", [] {
    SpinGeometry g = SpinGeometry::linear3(1.0, 1.0);
    GatePeriodFamily fam = scan_mediated_gates(g, 5.0);
    if (fam.members.empty()) return false;
    const GatePeriod& p = fam.members.front();
    if (std::abs(p.t - 4.0 * kPi / 3.0) > 1e-6) return false;
    return phase_free_max_norm(p.gate,
                               mediated_gate_constant(MediatedGate::kU2)) <
           1e-9;
  });

  criterion(2, "closed-form linear-3 evolution matches spectral oracle", [] {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> jr(0.05, 3.0), tt(0.0, 25.0);
    for (int k = 0; k < 200; ++k) {
      double ratio = jr(rng), t = tt(rng);
      Matrix closed = closed_form_u(ratio, 1.0, t);
      Matrix spectral = herm_exp(
          build_hamiltonian(SpinGeometry::linear3(ratio, 1.0)), t);
      if (max_norm(closed - spectral) > 1e-9) return false;
    }
    return true;
  });

  criterion(3, "star-3 four-period family {U3, -I, -U3, I}", [] {
    SpinGeometry g = SpinGeometry::star(3, 1.0);
    GatePeriodFamily fam = scan_mediated_gates(g, 8.0 * kPi + 0.5);
    if (fam.members.size() < 4) return false;
    const Matrix u3 = mediated_gate_constant(MediatedGate::kU3);
    const Matrix id = Matrix::Identity(8, 8);
    struct Expect {
      double t;
      Matrix m;
      GateTag tag;
    };
    const std::vector<Expect> expects = {
        {2 * kPi, u3, GateTag::kU},
        {4 * kPi, -id, GateTag::kMinusIdentity},
        {6 * kPi, -u3, GateTag::kUCubed},
        {8 * kPi, id, GateTag::kIdentity}};
    for (size_t i = 0; i < expects.size(); ++i) {
      const GatePeriod& p = fam.members[i];
      if (std::abs(p.t - expects[i].t) > 1e-6) return false;
      if (p.tag != expects[i].tag) return false;
      if (phase_free_max_norm(p.gate, expects[i].m) > 1e-9) return false;
    }
    return true;
  });

  criterion(4, "Weyl coordinates of the named gates and U2", [] {
    auto check = [](const Matrix& u, double c1, double c2, double c3) {
      WeylPoint w = weyl_coordinates(u);
      return std::abs(w.c1 - c1) < 1e-8 && std::abs(w.c2 - c2) < 1e-8 &&
             std::abs(w.c3 - c3) < 1e-8;
    };
    Matrix cnot = Matrix::Zero(4, 4);
    cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
    Matrix swap = Matrix::Zero(4, 4);
    swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
    Matrix sq = Matrix::Zero(4, 4);
    sq(0, 0) = sq(3, 3) = 1.0;
    sq(1, 1) = sq(2, 2) = Complex(0.5, -0.5);
    sq(1, 2) = sq(2, 1) = Complex(0.5, 0.5);
    const Matrix u2 = mediated_gate_constant(MediatedGate::kU2);
    bool ok = check(Matrix::Identity(4, 4), 0, 0, 0) &&
              check(cnot, kPi / 2, 0, 0) &&
              check(swap, kPi / 2, kPi / 2, kPi / 2) &&
              check(sq, kPi / 4, kPi / 4, kPi / 4) &&
              check(canonical_gate(kPi / 2, kPi / 4, 0), kPi / 2, kPi / 4,
                    0) &&
              check(canonical_gate(kPi / 2, kPi / 2, 0), kPi / 2, kPi / 2,
                    0) &&
              check(u2, 2 * kPi / 3, kPi / 3, kPi / 3);
    ok = ok && is_perfect_entangler(cnot) && !is_perfect_entangler(u2) &&
         !is_perfect_entangler(Matrix::Identity(4, 4));
    return ok;
  });

  criterion(5, "max concurrence: U2 -> sqrt(3)/2, CNOT -> 1", [] {
    double c_u2 = max_concurrence(mediated_gate_constant(MediatedGate::kU2));
    Matrix cnot = Matrix::Zero(4, 4);
    cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
    double c_cnot = max_concurrence(cnot);
    return std::abs(c_u2 - std::sqrt(3.0) / 2.0) < 1e-6 &&
           std::abs(c_cnot - 1.0) < 1e-6;
  });

  criterion(6, "detuning robustness coefficient 0.97 +/- 0.02", [] {
    double num = 0, den = 0;
    for (int i = 0; i <= 40; ++i) {
      double d = 0.4 * i / 40.0;
      double y = 1.0 - detuning_fidelity(d);
      num += d * d * y;
      den += d * d * d * d;
    }
    double coeff = num / den;
    return std::abs(coeff - 0.97) < 0.02;
  });

  criterion(7, "figure replays meet their objective bounds", [] {
    if (replay_figure("fig3a").objective > 1e-10) return false;
    if (replay_figure("fig6").objective > 1e-8) return false;
    for (const char* id : {"fig4a", "fig4c", "fig4e", "fig4g", "fig5d"})
      if (replay_figure(id).objective > 1e-6) return false;
    return true;
  });

  criterion(8, "fresh synthesis at reference depths, failing one lower",
            [fast] {
    const int rp = fast ? 16 : 32;   // restarts for the converging run
    const int rf = fast ? 8 : 16;    // restarts for the n-1 run
    auto reg = target_registry();
    auto get = [&](const std::string& n) -> const SynthesisTarget& {
      for (const auto& t : reg)
        if (t.name == n) return t;
      throw DomainError("missing target " + n);
    };
    std::vector<EntanglerLayer> u2_12(6, u2_on({1, 2}));
    auto span = [&](int n) {
      return std::vector<EntanglerLayer>(u2_12.begin(), u2_12.begin() + n);
    };
    std::vector<EntanglerLayer> w3_menu(2, u3_on({1, 2, 3}));
    std::vector<EntanglerLayer> ghz_menu(1, u3_on({1, 2, 3}));
    std::vector<EntanglerLayer> c4_menu = {u3_on({2, 3, 4}), u3_on({1, 2, 3}),
                                           u3_on({1, 2, 4}),
                                           u3_on({1, 2, 3})};
    std::vector<EntanglerLayer> c4_menu3(c4_menu.begin(), c4_menu.end() - 1);
    bool ok = true;
    ok &= fresh_at_depth(get("PsiMinus"), span(2), span(1), rp, rf);
    ok &= fresh_at_depth(get("GHZ3"), ghz_menu, {}, rp, rf);
    ok &= fresh_at_depth(get("W3"), w3_menu,
                         {w3_menu.begin(), w3_menu.begin() + 1}, rp, rf);
    ok &= fresh_at_depth(get("CNOT"), span(4), span(3), rp, rf);
    ok &= fresh_at_depth(get("B"), span(5), span(4), rp, rf);
    ok &= fresh_at_depth(get("SWAP"), span(5), span(4), rp, rf);
    ok &= fresh_at_depth(get("sqrtSWAP"), span(4), span(3), rp, rf);
    ok &= fresh_at_depth(get("C4"), c4_menu, c4_menu3, rp, rf);
    return ok;
  });

  criterion(9, "odd-W synthesis at depth 3 and even-W projection", [fast] {
    SynthesisConfig cfg;
    cfg.restarts = fast ? 12 : 24;
    SynthesisReport w5 = synthesize_w_odd(2, cfg);
    if (!(w5.converged && w5.depth == 3 && w5.objective < 1e-14))
      return false;
    SynthesisReport w7 = synthesize_w_odd(3, cfg);
    if (!(w7.converged && w7.depth == 3 && w7.objective < 1e-14))
      return false;
    for (int n : {1, 2, 3}) {
      auto [s0, p0] = project_even_w(n, 2 * n + 1, 0);
      auto [s1, p1] = project_even_w(n, 2 * n + 1, 1);
      double expect0 = 2.0 * n / (2.0 * n + 1.0);
      if (std::abs(p0 - expect0) > 1e-12) return false;
      if (std::abs(p0 + p1 - 1.0) > 1e-12) return false;
      // Outcome 0 leaves W_{2N}; outcome 1 leaves the all-zero state.
      Vector w2n = Vector::Zero(Eigen::Index(1) << (2 * n));
      for (int k = 0; k < 2 * n; ++k)
        w2n(Eigen::Index(1) << k) = 1.0 / std::sqrt(2.0 * n);
      if ((s0 - w2n).norm() > 1e-12) return false;
      if (std::abs(s1(0) - Complex(1.0, 0.0)) > 1e-12) return false;
    }
    return true;
  });

  criterion(10, "mixed U2/U3 menu machinery (random depth-4 target)", [fast] {
    // Generate a random realizable 3-qubit target from a mixed menu, then
    // recover it from scratch with the same menu.
    std::vector<EntanglerLayer> menu = {u2_on({1, 2}), u3_on({1, 2, 3}),
                                        u2_on({2, 3}), u3_on({1, 2, 3})};
    Circuit c = Circuit::uniform(3, menu);
    std::mt19937 rng(987654);
    std::uniform_real_distribution<double> dist(-kPi, kPi);
    std::vector<double> p(size_t(c.parameter_count()));
    for (auto& x : p) x = dist(rng);
    c.set_parameters(p);
    Vector zero = Vector::Zero(8);
    zero(0) = 1.0;
    Vector target = evaluate_circuit(c) * zero;
    SynthesisConfig cfg;
    cfg.restarts = fast ? 16 : 32;
    cfg.fixed_depth = 4;
    SynthesisReport r = synthesize(
        SynthesisTarget::for_state("mixed-menu-random", target), menu, cfg);
    return r.converged && r.objective < 1e-14;
  });

  criterion(11, "property suites: restoration, invariance, algebra", [] {
    std::mt19937 rng(2024);
    // Ancilla restoration for 50 random register states of the linear-3
    // chain evolved to the gate period.
    SpinGeometry g = SpinGeometry::linear3(1.0, 1.0);
    Matrix u = herm_exp(build_hamiltonian(g), 4.0 * kPi / 3.0);
    for (int k = 0; k < 50; ++k) {
      Vector chi = random_state(4, rng);
      Vector in(8);  // |chi> on qubits 1,2 with the ancilla in |0>
      for (int i = 0; i < 4; ++i) {
        in(2 * i) = chi(i);
        in(2 * i + 1) = 0.0;
      }
      Vector out = u * in;
      Matrix rho = partial_trace(out, g.ordering, {g.ordering.ancilla_label()});
      Matrix anc_rho = rho;
      if (std::abs(anc_rho(0, 0).real() - 1.0) > 1e-10) return false;
    }
    // Local-unitary invariance of Weyl coordinates and concurrence.
    const Matrix u2 = mediated_gate_constant(MediatedGate::kU2);
    WeylPoint ref = weyl_coordinates(u2);
    for (int k = 0; k < 100; ++k) {
      Matrix l = kron(random_unitary(2, rng), random_unitary(2, rng));
      Matrix r = kron(random_unitary(2, rng), random_unitary(2, rng));
      WeylPoint w = weyl_coordinates(l * u2 * r);
      if (std::abs(w.c1 - ref.c1) + std::abs(w.c2 - ref.c2) +
              std::abs(w.c3 - ref.c3) >
          1e-8)
        return false;
      Vector psi = random_state(4, rng);
      Matrix loc = kron(random_unitary(2, rng), random_unitary(2, rng));
      if (std::abs(concurrence(loc * psi) - concurrence(psi)) > 1e-10)
        return false;
    }
    // S3 expansion: recursion equals closed form.
    auto rec = s3_recursion_coefficients(0.7, 12);
    for (int n = 0; n <= 12; ++n) {
      auto closed = s3_closed_form_coefficients(0.7, n);
      for (int i = 0; i < 6; ++i)
        if (std::abs(rec[size_t(n)][size_t(i)] - closed[size_t(i)]) > 1e-9)
          return false;
    }
    // Gate-power identities.
    const Matrix u3 = mediated_gate_constant(MediatedGate::kU3);
    if (max_norm(u2 * u2 * u2 - Matrix::Identity(4, 4)) > 1e-12) return false;
    if (max_norm(u3 * u3 + Matrix::Identity(8, 8)) > 1e-12) return false;
    return true;
  });

  std::printf("%s: %d criterion(s) failed\n",
              g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
              g_failures);
  return g_failures == 0 ? 0 : 1;
}
