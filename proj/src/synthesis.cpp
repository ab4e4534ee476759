// Copyright (c) 2026 The medgate developers
//
// SPDX-License-Identifier: Apache-2.0

#include "medgate/synthesis.hpp"

#include "medgate/dynamics.hpp"
#include "medgate/entanglement.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <numbers>
#include <set>

namespace medgate {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

Matrix rz(double t) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = std::exp(-kI * (t / 2));
  m(1, 1) = std::exp(kI * (t / 2));
  return m;
}

Matrix ry(double t) {
  Matrix m(2, 2);
  m << std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2), std::cos(t / 2);
  return m;
}

Matrix entangler_matrix(const Entangler& e) {
  switch (e.tag) {
    case EntanglerTag::kU2:
      if (e.qubits.size() != 2)
        throw DimensionError("U2 acts on exactly two qubits");
      return mediated_gate_constant(MediatedGate::kU2);
    case EntanglerTag::kU3:
      if (e.qubits.size() != 3)
        throw DimensionError("U3 acts on exactly three qubits");
      return mediated_gate_constant(MediatedGate::kU3);
    case EntanglerTag::kUStar:
      return mediated_gate_star(static_cast<int>(e.qubits.size()));
  }
  throw DomainError("unknown entangler tag");
}

std::string entangler_name(EntanglerTag tag, size_t n) {
  switch (tag) {
    case EntanglerTag::kU2:
      return "U2";
    case EntanglerTag::kU3:
      return "U3";
    case EntanglerTag::kUStar:
      return "U" + std::to_string(n);
  }
  return "?";
}

void validate(const Circuit& c) {
  if (c.locals.size() != c.entanglers.size() + 1)
    throw DimensionError("circuit must alternate local/entangler layers");
  const int nq = c.ordering.num_qubits();
  for (const auto& l : c.locals)
    if (static_cast<int>(l.rotations.size()) != nq)
      throw DimensionError("local layer must carry one rotation per qubit");
  for (const auto& el : c.entanglers) {
    std::set<int> seen;
    for (const auto& e : el.gates)
      for (int q : e.qubits) {
        c.ordering.position_of(q);  // throws on unknown label
        if (!seen.insert(q).second)
          throw DimensionError("parallel entanglers must act on disjoint qubits");
      }
  }
}

}  // namespace

Matrix Rotation::matrix() const {
  return rz(gamma) * ry(beta) * rz(alpha);
}

int Circuit::depth() const { return static_cast<int>(entanglers.size()); }

std::vector<double> Circuit::parameters() const {
  std::vector<double> p;
  p.reserve(static_cast<size_t>(parameter_count()));
  for (const auto& l : locals)
    for (const auto& r : l.rotations) {
      p.push_back(r.alpha);
      p.push_back(r.beta);
      p.push_back(r.gamma);
    }
  return p;
}

void Circuit::set_parameters(const std::vector<double>& p) {
  if (static_cast<int>(p.size()) != parameter_count())
    throw DimensionError("parameter vector length mismatch");
  size_t k = 0;
  for (auto& l : locals)
    for (auto& r : l.rotations) {
      r.alpha = p[k++];
      r.beta = p[k++];
      r.gamma = p[k++];
    }
}

Circuit Circuit::uniform(int n_qubits, const std::vector<EntanglerLayer>& seq) {
  Circuit c;
  c.ordering = QubitOrdering::plain(n_qubits);
  c.entanglers = seq;
  c.locals.assign(seq.size() + 1,
                  LocalLayer{std::vector<Rotation>(
                      static_cast<size_t>(n_qubits))});
  return c;
}

Matrix evaluate_circuit(const Circuit& c) {
  validate(c);
  const auto dim = c.ordering.dim();
  Matrix u = Matrix::Identity(dim, dim);
  for (size_t i = 0; i < c.locals.size(); ++i) {
    const auto& layer = c.locals[i];
    for (size_t q = 0; q < layer.rotations.size(); ++q) {
      const auto& r = layer.rotations[q];
      if (r.alpha == 0.0 && r.beta == 0.0 && r.gamma == 0.0) continue;
      int label = c.ordering.labels()[q];
      u = embed_operator(c.ordering, r.matrix(), {label}) * u;
    }
    if (i < c.entanglers.size())
      for (const auto& e : c.entanglers[i].gates)
        u = embed_operator(c.ordering, entangler_matrix(e), e.qubits) * u;
  }
  return u;
}

double objective_state(const Circuit& c, const Vector& target,
                       const Vector& input) {
  if (target.size() != c.ordering.dim() || input.size() != target.size())
    throw DimensionError("state dimension mismatch");
  Vector out = evaluate_circuit(c) * input;
  double f = std::norm(target.dot(out));
  return std::max(0.0, 1.0 - f);
}

// Normalized squared phase-free Frobenius distance, 1 - |tr(T^dag U)| / d.
// Quadratic in the error amplitude, so machine-precision matches reach the
// 1e-14 convergence threshold (the plain Frobenius norm, being a square
// root, bottoms out near 1e-8).
double objective_gate(const Circuit& c, const Matrix& target) {
  if (target.rows() != c.ordering.dim())
    throw DimensionError("gate dimension mismatch");
  const double d = static_cast<double>(target.rows());
  const double overlap =
      std::abs((target.adjoint() * evaluate_circuit(c)).trace());
  return std::max(0.0, 1.0 - overlap / d);
}

SynthesisTarget SynthesisTarget::for_state(std::string name, Vector s,
                                           std::optional<int> med,
                                           std::optional<int> pair) {
  SynthesisTarget t;
  t.kind = Kind::kState;
  t.name = std::move(name);
  t.state = std::move(s);
  t.mediated_depth = med;
  t.pairwise_depth = pair;
  return t;
}

SynthesisTarget SynthesisTarget::for_gate(std::string name, Matrix g,
                                          std::optional<int> med,
                                          std::optional<int> pair) {
  SynthesisTarget t;
  t.kind = Kind::kGate;
  t.name = std::move(name);
  t.gate = std::move(g);
  t.mediated_depth = med;
  t.pairwise_depth = pair;
  return t;
}

std::string report_to_json(const SynthesisReport& r) {
  nlohmann::json seq = nlohmann::json::array();
  for (const auto& [tag, qubits] : r.gate_sequence)
    seq.push_back({{"tag", tag}, {"qubits", qubits}});
  nlohmann::json j{
      {"target", r.target},       {"kind", r.kind},
      {"depth", r.depth},         {"gate_sequence", seq},
      {"angles", r.angles},       {"objective", r.objective},
      {"seed", r.seed},           {"restarts", r.restarts},
      {"wall_time_ms", r.wall_time_ms}, {"converged", r.converged},
      {"norm", r.norm},           {"provenance", r.provenance}};
  return j.dump(2);
}

SynthesisReport synthesize(const SynthesisTarget& target,
                           const std::vector<EntanglerLayer>& menu,
                           const SynthesisConfig& cfg) {
  if (menu.empty()) throw DimensionError("empty gate menu");
  const int nq = target.kind == SynthesisTarget::Kind::kState
                     ? static_cast<int>(std::lround(
                           std::log2(double(target.state.size()))))
                     : static_cast<int>(std::lround(
                           std::log2(double(target.gate.rows()))));
  auto t0 = std::chrono::steady_clock::now();

  SynthesisReport best;
  best.target = target.name;
  best.kind = target.kind == SynthesisTarget::Kind::kState ? "state" : "gate";
  best.seed = cfg.seed;
  best.objective = std::numeric_limits<double>::infinity();

  int n_start = cfg.fixed_depth.value_or(1);
  int n_end = cfg.fixed_depth.value_or(cfg.max_depth);
  for (int n = n_start; n <= n_end; ++n) {
    std::vector<EntanglerLayer> seq;
    for (int i = 0; i < n; ++i) seq.push_back(menu[size_t(i) % menu.size()]);
    Circuit c = Circuit::uniform(nq, seq);
    Vector input;
    if (target.kind == SynthesisTarget::Kind::kState) {
      input = Vector::Zero(c.ordering.dim());
      input(0) = 1.0;
    }
    auto objective = [&](const std::vector<double>& p) {
      Circuit trial = c;
      trial.set_parameters(p);
      return target.kind == SynthesisTarget::Kind::kState
                 ? objective_state(trial, target.state, input)
                 : objective_gate(trial, target.gate);
    };
    MultistartOptions opts;
    opts.starts = cfg.restarts;
    opts.seed = cfg.seed + static_cast<std::uint32_t>(n);
    opts.cluster_radius = cfg.cluster_radius;
    opts.stop_threshold = cfg.convergence_threshold;
    opts.local = cfg.local;
    opts.local.restart_threshold = cfg.convergence_threshold;
    auto res = multistart_minimize(objective, c.parameter_count(), opts);

    if (res.value < best.objective) {
      best.objective = res.value;
      best.depth = n;
      best.angles = res.x;
      best.restarts = res.starts_used;
      best.gate_sequence.clear();
      for (const auto& el : seq)
        for (const auto& e : el.gates)
          best.gate_sequence.emplace_back(
              entangler_name(e.tag, e.qubits.size()), e.qubits);
      c.set_parameters(res.x);
      best.circuit = c;
    }
    best.converged = best.objective < cfg.convergence_threshold;
    auto elapsed = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
    if (best.converged) break;
    if (cfg.time_budget_seconds > 0 && elapsed > cfg.time_budget_seconds)
      break;
  }
  best.wall_time_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
  return best;
}

std::vector<SynthesisTarget> target_registry() {
  std::vector<SynthesisTarget> out;
  const double r2 = 1.0 / std::sqrt(2.0);

  Vector bell = Vector::Zero(4);
  bell(1) = r2;
  bell(2) = -r2;
  out.push_back(SynthesisTarget::for_state("PsiMinus", bell, 2, 4));

  Vector w3 = Vector::Zero(8);
  w3(1) = w3(2) = w3(4) = 1.0 / std::sqrt(3.0);
  out.push_back(SynthesisTarget::for_state("W3", w3, 2, 2));

  // Scalable odd-size representative (N = 5); pairwise depth is N - 1.
  Vector w5 = Vector::Zero(32);
  for (int k = 0; k < 5; ++k) w5(1 << k) = 1.0 / std::sqrt(5.0);
  out.push_back(SynthesisTarget::for_state("W_N", w5, 3, 4));

  Vector ghz = Vector::Zero(8);
  ghz(0) = ghz(7) = r2;
  out.push_back(SynthesisTarget::for_state("GHZ3", ghz, 1, 4));

  Vector c4 = Vector::Zero(16);
  c4(0) = c4(3) = c4(12) = 0.5;
  c4(15) = -0.5;
  out.push_back(SynthesisTarget::for_state("C4", c4, 4, 6));

  Matrix cnot = Matrix::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
  out.push_back(SynthesisTarget::for_gate("CNOT", cnot, 4, 4));

  Matrix sq = Matrix::Zero(4, 4);
  sq(0, 0) = sq(3, 3) = 1.0;
  sq(1, 1) = sq(2, 2) = Complex(0.5, -0.5);
  sq(1, 2) = sq(2, 1) = Complex(0.5, 0.5);
  out.push_back(SynthesisTarget::for_gate("sqrtSWAP", sq, 4, 3));

  Matrix swap = Matrix::Zero(4, 4);
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
  out.push_back(SynthesisTarget::for_gate("SWAP", swap, 5, 3));

  out.push_back(
      SynthesisTarget::for_gate("B", canonical_gate(kPi / 2, kPi / 4, 0), 5, 5));

  Matrix toffoli = Matrix::Identity(8, 8);
  toffoli(6, 6) = toffoli(7, 7) = 0.0;
  toffoli(6, 7) = toffoli(7, 6) = 1.0;
  out.push_back(SynthesisTarget::for_gate("Toffoli", toffoli, 12, 16));

  return out;
}

}  // namespace medgate
