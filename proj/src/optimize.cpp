// Copyright (c) 2026 The medgate developers
//
// SPDX-License-Identifier: Apache-2.0

#include "medgate/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace medgate {

namespace {

struct SimplexPoint {
  std::vector<double> x;
  double f;
};

LocalResult simplex_run(const Objective& f, const std::vector<double>& x0,
                        const NelderMeadOptions& opts, double step,
                        int* iter_budget) {
  const size_t n = x0.size();
  std::vector<SimplexPoint> s(n + 1);
  s[0] = {x0, f(x0)};
  for (size_t i = 0; i < n; ++i) {
    auto x = x0;
    x[i] += step;
    s[i + 1] = {x, f(x)};
  }
  auto by_f = [](const SimplexPoint& a, const SimplexPoint& b) {
    return a.f < b.f;
  };
  int iters = 0;
  while (iters < *iter_budget) {
    std::sort(s.begin(), s.end(), by_f);
    // Convergence: simplex collapsed in f and x.
    double fspread = s.back().f - s.front().f;
    double xspread = 0.0;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 1; j <= n; ++j)
        xspread = std::max(xspread, std::abs(s[j].x[i] - s[0].x[i]));
    if (fspread <= opts.f_tol && xspread <= opts.x_tol) break;

    std::vector<double> centroid(n, 0.0);
    for (size_t j = 0; j < n; ++j)
      for (size_t i = 0; i < n; ++i) centroid[i] += s[j].x[i] / double(n);

    auto affine = [&](double t) {
      std::vector<double> x(n);
      for (size_t i = 0; i < n; ++i)
        x[i] = centroid[i] + t * (s[n].x[i] - centroid[i]);
      return x;
    };
    auto xr = affine(-1.0);
    double fr = f(xr);
    ++iters;
    if (fr < s[0].f) {
      auto xe = affine(-2.0);
      double fe = f(xe);
      ++iters;
      s[n] = fe < fr ? SimplexPoint{xe, fe} : SimplexPoint{xr, fr};
    } else if (fr < s[n - 1].f) {
      s[n] = {xr, fr};
    } else {
      auto xc = affine(fr < s[n].f ? -0.5 : 0.5);
      double fc = f(xc);
      ++iters;
      if (fc < std::min(fr, s[n].f)) {
        s[n] = {xc, fc};
      } else {  // shrink toward the best vertex
        for (size_t j = 1; j <= n; ++j) {
          for (size_t i = 0; i < n; ++i)
            s[j].x[i] = s[0].x[i] + 0.5 * (s[j].x[i] - s[0].x[i]);
          s[j].f = f(s[j].x);
          ++iters;
        }
      }
    }
  }
  std::sort(s.begin(), s.end(), by_f);
  *iter_budget -= iters;
  return {s[0].x, s[0].f, iters};
}

}  // namespace

LocalResult nelder_mead(const Objective& f, std::vector<double> x0,
                        const NelderMeadOptions& opts) {
  int budget = opts.max_iterations;
  LocalResult best = simplex_run(f, x0, opts, opts.initial_step, &budget);
  double step = opts.initial_step;
  for (int r = 0; r < opts.max_restarts && budget > 0; ++r) {
    if (best.value <= opts.restart_threshold) break;
    step *= 0.1;  // tighten around the incumbent
    LocalResult next = simplex_run(f, best.x, opts, step, &budget);
    if (next.value < best.value) best = next;
  }
  return best;
}

MultistartResult multistart_minimize(const Objective& f, int dim,
                                     const MultistartOptions& opts) {
  std::mt19937 rng(opts.seed);
  std::uniform_real_distribution<double> dist(opts.lower, opts.upper);

  struct Screened {
    std::vector<double> x;
    double f;
    int order;
  };
  std::vector<Screened> screened;
  MultistartResult out;
  NelderMeadOptions screen_opts = opts.local;
  screen_opts.max_iterations = opts.screen_iterations;
  screen_opts.max_restarts = 0;
  for (int k = 0; k < opts.starts; ++k) {
    std::vector<double> x0(static_cast<size_t>(dim));
    for (auto& v : x0) v = dist(rng);
    int budget = opts.screen_iterations;
    auto r = simplex_run(f, x0, screen_opts, screen_opts.initial_step, &budget);
    screened.push_back({r.x, r.value, k});
  }
  out.starts_used = opts.starts;

  // Cluster refined starts; keep the best representative of each cluster.
  std::vector<Screened> reps;
  std::stable_sort(screened.begin(), screened.end(),
                   [](const Screened& a, const Screened& b) {
                     if (a.f != b.f) return a.f < b.f;
                     return a.order < b.order;
                   });
  for (const auto& s : screened) {
    bool merged = false;
    for (const auto& r : reps) {
      double d2 = 0.0;
      for (size_t i = 0; i < s.x.size(); ++i) {
        double d = s.x[i] - r.x[i];
        d2 += d * d;
      }
      if (std::sqrt(d2) < opts.cluster_radius) {
        merged = true;  // representative already has the lower objective
        break;
      }
    }
    if (!merged) reps.push_back(s);
  }
  out.clusters = static_cast<int>(reps.size());

  double best = std::numeric_limits<double>::infinity();
  for (const auto& r : reps) {
    auto polished = nelder_mead(f, r.x, opts.local);
    if (polished.value < best) {
      best = polished.value;
      out.x = polished.x;
      out.value = polished.value;
    }
    out.trace.push_back(best);
    if (best < opts.stop_threshold) break;
  }
  return out;
}

}  // namespace medgate
