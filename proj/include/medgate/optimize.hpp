// Copyright (c) 2026 The medgate developers
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace medgate {

using Objective = std::function<double(const std::vector<double>&)>;

struct NelderMeadOptions {
  double f_tol = 1e-16;
  double x_tol = 1e-12;
  int max_iterations = 100000;
  /// Restart the simplex (perturbed around the best point) when converged
  /// above this objective value, up to max_restarts times.
  double restart_threshold = 1e-14;
  int max_restarts = 3;
  double initial_step = 0.25;
};

struct LocalResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
};

/// Derivative-free downhill-simplex minimization.
LocalResult nelder_mead(const Objective& f, std::vector<double> x0,
                        const NelderMeadOptions& opts = {});

struct MultistartOptions {
  int starts = 64;
  std::uint32_t seed = 12345;
  double lower = -3.14159265358979323846;
  double upper = 3.14159265358979323846;
  /// Euclidean distance below which two refined starts are one cluster.
  double cluster_radius = 0.7853981633974483;  // pi/4
  /// Iteration budget for the cheap refinement pass before clustering.
  int screen_iterations = 200;
  /// Stop polishing further clusters once the best value drops below this
  /// (negative disables the early exit; candidates are polished in
  /// deterministic objective order, so the result is seed-stable).
  double stop_threshold = -1.0;
  NelderMeadOptions local;
};

struct MultistartResult {
  std::vector<double> x;
  double value = 0.0;
  int starts_used = 0;
  int clusters = 0;
  /// Best objective after each completed start (monotone non-increasing).
  std::vector<double> trace;
};

/// Deterministic multistart global search: uniform starts, cheap local
/// screen, distance clustering, full polish of one representative per
/// cluster. Ties in the final merge are broken by start order.
MultistartResult multistart_minimize(const Objective& f, int dim,
                                     const MultistartOptions& opts = {});

}  // namespace medgate
