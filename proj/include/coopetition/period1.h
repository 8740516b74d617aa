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

// Incumbent's period-1 price. Its two-period profit is not concave in
// p_I1, but it is on each of three price regions:
//   A  [0, (w_q q_I1 - w_phi) / w_p]        every user buys in period 1
//   B  [max(0, A.hi), w_q q_I1 / w_p]       part of the market buys
//   C  [w_q q_I1 / w_p, inf)                nobody buys, profit is flat
// Each region is maximized separately and the best one wins.

#ifndef COOPETITION_PERIOD1_H_
#define COOPETITION_PERIOD1_H_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "coopetition/collab_game.h"
#include "coopetition/market.h"
#include "coopetition/price_game.h"

namespace coopetition {

enum class RegionLabel { kA = 0, kB = 1, kC = 2 };
const char* RegionName(RegionLabel label);

struct RegionSpec {
  RegionLabel label = RegionLabel::kA;
  double lo = 0.0;
  double hi = 0.0;  // +inf for region C
  bool empty = false;
};

std::array<RegionSpec, 3> RegionBounds(const MarketParams& params, double q_I1);

struct TotalProfit {
  double p_I1 = 0.0;
  double theta1 = 0.0;
  double W_I1 = 0.0;
  double W_I2 = 0.0;
  double W_I = 0.0;
  CollaborationOutcome outcome;
};

// W_I1(p_I1) plus I's period-2 profit at the collaboration and price
// equilibria that p_I1 induces.
TotalProfit EvaluateTotalProfit(const Market& market, double p_I1,
                                const SolverSettings& settings,
                                const CollaborationWarmStart& warm = {});

struct RegionOptimum {
  RegionSpec region;
  double p_I1 = 0.0;
  double W_I = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> trajectory;  // accepted iterates
};

// Projected gradient ascent inside the region from its left end, with a
// central-difference gradient and step halving on non-improvement. Region C
// is evaluated at its left end only. Throws std::invalid_argument for an
// empty region.
RegionOptimum OptimizeRegion(const Market& market, const RegionSpec& region,
                             const SolverSettings& settings);

struct Period1Solution {
  double p_I1 = 0.0;
  RegionLabel region = RegionLabel::kC;
  TotalProfit at_optimum;  // re-solved with oracle verification
  std::array<std::optional<RegionOptimum>, 3> regions;
  std::array<std::string, 3> region_errors;
};

// Throws NonConvergenceError only if no region could be evaluated.
Period1Solution OptimizePeriod1(const Market& market,
                                const SolverSettings& settings);

}  // namespace coopetition

#endif  // COOPETITION_PERIOD1_H_
