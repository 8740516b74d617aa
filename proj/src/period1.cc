// Copyright 2026 The Coopetition Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "coopetition/period1.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace coopetition {
namespace {

// Evaluates W_I along an ascent path, warm-starting each price game from the
// previous evaluation.
class PathEvaluator {
 public:
  PathEvaluator(const Market& market, const SolverSettings& settings)
      : market_(market), settings_(settings) {
    settings_.verify_equilibria = false;
  }

  double operator()(double p_I1) {
    const TotalProfit t = Evaluate(p_I1);
    warm_.collaborate = std::make_pair(t.outcome.collaborate.p_I2,
                                       t.outcome.collaborate.p_E2);
    warm_.local = std::make_pair(t.outcome.local.p_I2, t.outcome.local.p_E2);
    return t.W_I;
  }

 private:
  // A stalled point is retried once with damping before giving up on the
  // region.
  TotalProfit Evaluate(double p_I1) {
    try {
      return EvaluateTotalProfit(market_, p_I1, settings_, warm_);
    } catch (const NonConvergenceError&) {
      SolverSettings damped = settings_;
      damped.damping = std::max(settings_.damping, 0.5);
      damped.max_br_iterations = 2 * settings_.max_br_iterations;
      return EvaluateTotalProfit(market_, p_I1, damped, warm_);
    }
  }

  const Market& market_;
  SolverSettings settings_;
  CollaborationWarmStart warm_;
};

}  // namespace

const char* RegionName(RegionLabel label) {
  switch (label) {
    case RegionLabel::kA: return "A";
    case RegionLabel::kB: return "B";
    case RegionLabel::kC: return "C";
  }
  return "?";
}

std::array<RegionSpec, 3> RegionBounds(const MarketParams& params, double q_I1) {
  const double full = (params.w_q * q_I1 - params.w_phi) / params.w_p;
  const double none = params.w_q * q_I1 / params.w_p;
  std::array<RegionSpec, 3> r;
  r[0] = {RegionLabel::kA, 0.0, std::max(full, 0.0), !(full > 0.0)};
  r[1] = {RegionLabel::kB, std::max(full, 0.0), none, false};
  r[2] = {RegionLabel::kC, none, std::numeric_limits<double>::infinity(), false};
  return r;
}

TotalProfit EvaluateTotalProfit(const Market& market, double p_I1,
                                const SolverSettings& settings,
                                const CollaborationWarmStart& warm) {
  TotalProfit t;
  t.p_I1 = p_I1;
  t.outcome = SolveCollaboration(market, p_I1, settings, warm);
  t.theta1 = t.outcome.theta1;
  t.W_I1 = (p_I1 - market.params.c_I) * market.dist.Cdf(t.theta1);
  t.W_I2 = t.outcome.Selected().W_I2;
  t.W_I = t.W_I1 + t.W_I2;
  return t;
}

RegionOptimum OptimizeRegion(const Market& market, const RegionSpec& region,
                             const SolverSettings& settings) {
  if (region.empty) {
    throw std::invalid_argument(std::string("period1_opt: region ") +
                                RegionName(region.label) + " is empty");
  }
  RegionOptimum out;
  out.region = region;
  PathEvaluator w_i(market, settings);

  double x = region.lo;
  double fx = w_i(x);
  out.trajectory.push_back(x);
  if (region.label == RegionLabel::kC || !(region.hi > region.lo)) {
    out.p_I1 = x;
    out.W_I = fx;
    out.converged = true;
    return out;
  }

  const double lo = region.lo;
  const double hi = region.hi;
  double step = settings.ascent_step_fraction * (hi - lo);
  for (int k = 1; k <= settings.max_ascent_iterations; ++k) {
    out.iterations = k;
    const double xp = std::min(hi, x + settings.fd_step);
    const double xm = std::max(lo, x - settings.fd_step);
    const double gradient = (w_i(xp) - w_i(xm)) / (xp - xm);
    const double next = std::clamp(x + step * gradient, lo, hi);
    if (std::abs(next - x) < settings.region_tolerance) {
      out.converged = true;
      break;
    }
    const double f_next = w_i(next);
    if (f_next > fx) {
      x = next;
      fx = f_next;
      out.trajectory.push_back(x);
    } else {
      step *= 0.5;
      if (step < settings.ascent_step_floor) {
        out.converged = true;
        break;
      }
    }
  }
  out.p_I1 = x;
  out.W_I = fx;
  return out;
}

Period1Solution OptimizePeriod1(const Market& market,
                                const SolverSettings& settings) {
  Period1Solution sol;
  const std::array<RegionSpec, 3> regions =
      RegionBounds(market.params, market.quality.q_I1);
  std::optional<std::size_t> best;
  for (std::size_t k = 0; k < regions.size(); ++k) {
    if (regions[k].empty) continue;
    try {
      sol.regions[k] = OptimizeRegion(market, regions[k], settings);
    } catch (const NonConvergenceError& e) {
      sol.region_errors[k] = e.what();
      continue;
    }
    if (!best || sol.regions[k]->W_I > sol.regions[*best]->W_I) best = k;
  }
  if (!best) {
    throw NonConvergenceError(
        "period1_opt: every region failed: " + sol.region_errors[0] + " | " +
            sol.region_errors[1] + " | " + sol.region_errors[2],
        {});
  }
  sol.region = static_cast<RegionLabel>(*best);
  sol.p_I1 = sol.regions[*best]->p_I1;
  sol.at_optimum = EvaluateTotalProfit(market, sol.p_I1, settings);
  return sol;
}

}  // namespace coopetition
