// Copyright (c) 2026 The medgate developers
//
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "medgate/dynamics.hpp"
#include "medgate/entanglement.hpp"
#include "medgate/synthesis.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace medgate;

namespace {

constexpr double kPi = std::numbers::pi;

Vector basis_state(int dim, int k) {
  Vector v = Vector::Zero(dim);
  v(k) = 1.0;
  return v;
}

Vector bell_minus() {
  Vector v = Vector::Zero(4);
  v(1) = 1.0 / std::sqrt(2.0);
  v(2) = -1.0 / std::sqrt(2.0);
  return v;
}

EntanglerLayer u2_layer() {
  return EntanglerLayer{{Entangler{EntanglerTag::kU2, {1, 2}}}};
}

EntanglerLayer u3_layer() {
  return EntanglerLayer{{Entangler{EntanglerTag::kU3, {1, 2, 3}}}};
}

const SynthesisTarget& find_target(const std::vector<SynthesisTarget>& reg,
                                   const std::string& name) {
  for (const auto& t : reg)
    if (t.name == name) return t;
  REQUIRE(false);
  return reg.front();
}

}  // namespace

TEST_CASE("rotation matrix is the ZYZ Euler form") {
  // herm_exp(h, t) = exp(-i h t), so Rz(a) = herm_exp(Z, a / 2).
  Rotation r{0.3, -0.7, 1.1};
  CHECK(approx_equal(r.matrix(),
                     herm_exp(pauli_z(), 1.1 / 2) *
                         herm_exp(pauli_y(), -0.7 / 2) *
                         herm_exp(pauli_z(), 0.3 / 2),
                     1e-12));
  CHECK(is_unitary(r.matrix()));
  CHECK(approx_equal(Rotation{}.matrix(), Matrix::Identity(2, 2), 1e-15));
}

TEST_CASE("circuit parameter round-trip and counting") {
  Circuit c = Circuit::uniform(2, {u2_layer(), u2_layer()});
  CHECK(c.depth() == 2);
  CHECK(c.parameter_count() == 18);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-kPi, kPi);
  std::vector<double> p(18);
  for (auto& x : p) x = dist(rng);
  c.set_parameters(p);
  CHECK(c.parameters() == p);
  CHECK_THROWS_AS(c.set_parameters(std::vector<double>(17)), DimensionError);
}

TEST_CASE("evaluate_circuit composes locals and entanglers in order") {
  // Depth-0 circuit: just one local layer, must equal the kron product.
  Circuit c = Circuit::uniform(2, {});
  c.locals[0].rotations[0] = Rotation{0.4, 0.2, -0.9};
  c.locals[0].rotations[1] = Rotation{-1.3, 0.8, 0.1};
  Matrix expect = kron(c.locals[0].rotations[0].matrix(),
                       c.locals[0].rotations[1].matrix());
  CHECK(approx_equal(evaluate_circuit(c), expect, 1e-12));

  // Depth-1 with identity locals: the bare entangler.
  Circuit e = Circuit::uniform(2, {u2_layer()});
  CHECK(approx_equal(evaluate_circuit(e),
                     mediated_gate_constant(MediatedGate::kU2), 1e-12));

  // Structural validation.
  Circuit bad = Circuit::uniform(2, {u2_layer()});
  bad.locals.pop_back();
  CHECK_THROWS_AS(evaluate_circuit(bad), DimensionError);
  Circuit overlap = Circuit::uniform(3, {});
  overlap.entanglers.push_back(EntanglerLayer{
      {Entangler{EntanglerTag::kU2, {1, 2}},
       Entangler{EntanglerTag::kU2, {2, 3}}}});
  overlap.locals.emplace_back(LocalLayer{std::vector<Rotation>(3)});
  CHECK_THROWS_AS(evaluate_circuit(overlap), DimensionError);
}

TEST_CASE("adjacent local rotations collapse without changing the circuit") {
  // (U1 x U1)(U1' x U1') redundancy: splitting a local layer into two
  // consecutive rotations on the same wire leaves the evaluation fixed.
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(-kPi, kPi);
  for (int rep = 0; rep < 5; ++rep) {
    Rotation a{dist(rng), dist(rng), dist(rng)};
    Rotation b{dist(rng), dist(rng), dist(rng)};
    // Collapse the pair to explicit ZYZ angles of the product.
    Matrix prod = b.matrix() * a.matrix();
    // Extract Euler angles of prod (up to global phase).
    Complex det = prod.determinant();
    Matrix su = prod / std::sqrt(det);
    double beta = 2.0 * std::atan2(std::abs(su(1, 0)), std::abs(su(0, 0)));
    double apg = -2.0 * std::arg(su(0, 0));   // alpha + gamma
    double amg = -2.0 * std::arg(su(1, 0));   // alpha - gamma
    Rotation collapsed{(apg + amg) / 2, beta, (apg - amg) / 2};
    CHECK(operator_distance(collapsed.matrix(), prod, true) < 1e-9);

    // Split form: depth-0 prefix holding `a`, then the main circuit whose
    // first local layer holds `b`. Collapsed form: one layer holding the
    // ZYZ product. Both evaluate to the same unitary (up to phase) and
    // the same depth.
    Circuit prefix = Circuit::uniform(2, {});
    prefix.locals[0].rotations[0] = a;
    Circuit main_c = Circuit::uniform(2, {u2_layer()});
    main_c.locals[0].rotations[0] = b;
    Circuit collapsed_c = Circuit::uniform(2, {u2_layer()});
    collapsed_c.locals[0].rotations[0] = collapsed;
    Matrix u_split = evaluate_circuit(main_c) * evaluate_circuit(prefix);
    CHECK(operator_distance(u_split, evaluate_circuit(collapsed_c), true) <
          1e-10);
    CHECK(main_c.depth() == collapsed_c.depth());
  }
}

TEST_CASE("objectives are non-negative and zero at exact solutions") {
  Circuit c = Circuit::uniform(2, {});
  Vector zero2 = basis_state(4, 0);
  CHECK(objective_state(c, zero2, zero2) == doctest::Approx(0.0));
  CHECK(objective_state(c, bell_minus(), zero2) == doctest::Approx(1.0));
  CHECK(objective_gate(c, Matrix::Identity(4, 4)) == doctest::Approx(0.0));
  // Phase freedom: a global phase on the target costs nothing.
  CHECK(objective_gate(c, std::exp(Complex(0, 0.77)) *
                              Matrix::Identity(4, 4)) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(objective_state(c, basis_state(8, 0), zero2),
                  DimensionError);
}

TEST_CASE("synthesize reaches the Bell state at depth 2") {
  SynthesisConfig cfg;
  cfg.restarts = 24;
  SynthesisReport r = synthesize(
      SynthesisTarget::for_state("PsiMinus", bell_minus()), {u2_layer()}, cfg);
  CHECK(r.converged);
  CHECK(r.depth == 2);
  CHECK(r.objective < 1e-14);
  // Replaying the angles through the evaluator reproduces the objective.
  Circuit c = r.circuit;
  c.set_parameters(r.angles);
  CHECK(objective_state(c, bell_minus(), basis_state(4, 0)) ==
        doctest::Approx(r.objective).epsilon(1e-12));
}

TEST_CASE("synthesize reaches GHZ3 at depth 1") {
  Vector ghz = Vector::Zero(8);
  ghz(0) = ghz(7) = 1.0 / std::sqrt(2.0);
  SynthesisConfig cfg;
  cfg.restarts = 24;
  SynthesisReport r =
      synthesize(SynthesisTarget::for_state("GHZ3", ghz), {u3_layer()}, cfg);
  CHECK(r.converged);
  CHECK(r.depth == 1);
}

TEST_CASE("CNOT synthesis fails at depth 3 and succeeds at depth 4") {
  Matrix cnot = Matrix::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
  SynthesisTarget t = SynthesisTarget::for_gate("CNOT", cnot);

  SynthesisConfig cfg3;
  cfg3.fixed_depth = 3;
  cfg3.restarts = 16;
  cfg3.local.max_iterations = 20000;
  SynthesisReport r3 = synthesize(t, {u2_layer()}, cfg3);
  CHECK_FALSE(r3.converged);
  CHECK(r3.objective > 1e-6);

  SynthesisConfig cfg4;
  cfg4.fixed_depth = 4;
  cfg4.restarts = 24;
  SynthesisReport r4 = synthesize(t, {u2_layer()}, cfg4);
  CHECK(r4.converged);
  // Local-invariant consistency: the synthesized unitary shares the
  // target's Weyl coordinates.
  Circuit c = r4.circuit;
  WeylPoint a = weyl_coordinates(evaluate_circuit(c));
  WeylPoint b = weyl_coordinates(cnot);
  CHECK(std::abs(a.c1 - b.c1) < 1e-6);
  CHECK(std::abs(a.c2 - b.c2) < 1e-6);
  CHECK(std::abs(a.c3 - b.c3) < 1e-6);
}

TEST_CASE("identical seed and config reproduce the report bit-for-bit") {
  SynthesisConfig cfg;
  cfg.restarts = 12;
  SynthesisTarget t = SynthesisTarget::for_state("PsiMinus", bell_minus());
  SynthesisReport a = synthesize(t, {u2_layer()}, cfg);
  SynthesisReport b = synthesize(t, {u2_layer()}, cfg);
  CHECK(a.angles == b.angles);
  CHECK(a.objective == b.objective);
  CHECK(a.depth == b.depth);
}

TEST_CASE("target registry carries all ten rows with reference depths") {
  auto reg = target_registry();
  CHECK(reg.size() == 10);
  const auto& bell = find_target(reg, "PsiMinus");
  CHECK(bell.mediated_depth == 2);
  CHECK(bell.pairwise_depth == 4);
  const auto& toff = find_target(reg, "Toffoli");
  CHECK(toff.mediated_depth == 12);
  CHECK(toff.pairwise_depth == 16);
  const auto& wn = find_target(reg, "W_N");
  CHECK(wn.mediated_depth == 3);
  CHECK(wn.pairwise_depth == 4);  // N - 1 for the N = 5 payload
  CHECK(wn.state.size() == 32);
  const auto& b = find_target(reg, "B");
  WeylPoint wp = weyl_coordinates(b.gate);
  CHECK(wp.c1 == doctest::Approx(kPi / 2).epsilon(1e-9));
  CHECK(wp.c2 == doctest::Approx(kPi / 4).epsilon(1e-9));
}

TEST_CASE("figure replays meet their recorded bounds") {
  CHECK(replay_figure("fig3a").objective < 1e-10);
  CHECK(replay_figure("fig6").objective < 1e-8);
  for (const auto& id : replay_figure_ids()) {
    SynthesisReport r = replay_figure(id);
    CHECK(r.objective < 1e-6);
  }
  CHECK_THROWS_AS(replay_figure("fig9z"), DomainError);
}

TEST_CASE("synthesize_w_odd builds W3 and W5") {
  SynthesisConfig cfg;
  cfg.restarts = 24;
  SynthesisReport r1 = synthesize_w_odd(1, cfg);
  CHECK(r1.converged);
  CHECK(r1.depth == 3);
  CHECK(r1.target == "W3");

  SynthesisReport r2 = synthesize_w_odd(2, cfg);
  CHECK(r2.converged);
  CHECK(r2.objective < 1e-14);
  CHECK(r2.depth == 3);
}

TEST_CASE("projective measurement of W states") {
  auto [s0, p0] = project_even_w(1, 3, 0);
  CHECK(p0 == doctest::Approx(2.0 / 3.0));
  Vector w2 = Vector::Zero(4);
  w2(1) = w2(2) = 1.0 / std::sqrt(2.0);
  CHECK((s0 - w2).norm() < 1e-12);

  auto [s1, p1] = project_even_w(1, 3, 1);
  CHECK(p1 == doctest::Approx(1.0 / 3.0));
  CHECK(std::abs(s1(0) - Complex(1.0, 0.0)) < 1e-12);
  CHECK(p0 + p1 == doctest::Approx(1.0));

  CHECK_THROWS_AS(project_even_w(1, 4, 0), DimensionError);
}

TEST_CASE("report serializes to JSON with the documented keys") {
  SynthesisReport r = replay_figure("fig3a");
  std::string j = report_to_json(r);
  for (const char* key :
       {"target", "kind", "depth", "gate_sequence", "angles", "objective",
        "seed", "restarts", "wall_time_ms", "converged", "norm",
        "provenance"})
    CHECK(j.find(std::string("\"") + key + "\"") != std::string::npos);
}
