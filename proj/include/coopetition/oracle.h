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

// Brute-force grid witnesses. Everything here is built on the demand and
// profit functions of market.h only: no line searches, no best-response
// dynamics from the solver, no gradient ascent.

#ifndef COOPETITION_ORACLE_H_
#define COOPETITION_ORACLE_H_

#include <cstddef>
#include <utility>
#include <vector>

#include "coopetition/market.h"

namespace coopetition::oracle {

struct OracleVerdict {
  bool passed = true;
  // Largest profit gain any company gets from a unilateral grid deviation.
  double worst_deviation = 0.0;
  Company worst_company = Company::kIncumbent;
  double worst_location = 0.0;  // the deviating price
  int grid_n = 0;
  double tolerance = 0.0;
};

// Evenly spaced prices over [cost, max(cost, cap)], grid_n points.
std::vector<double> PriceGrid(const Period2Game& game, Company c, int grid_n);

// Passes iff neither company can raise its profit by more than `tol` by
// moving to any point of its price grid while the rival stays put.
OracleVerdict VerifyNoDeviation(const Period2Game& game, double p_I2,
                                double p_E2, int grid_n, double tol);

struct GridEquilibriumSet {
  int grid_n = 0;
  std::size_t count = 0;  // total number of grid NE pairs
  // The first pairs in (p_I2, p_E2) lexicographic order, capped.
  std::vector<std::pair<double, double>> pairs;
  // Profits at the first pair.
  double W_I2 = 0.0;
  double W_E2 = 0.0;
  // Every grid profile earns zero for both companies.
  bool degenerate = false;
  // The two-pass scheme found nothing and the full grid was enumerated.
  bool full_enumeration = false;
};

// Pure-strategy equilibria of the grid-restricted price game: pairs where
// neither company has a grid deviation improving its profit by more than
// 1e-12. A coarse pass over about 200 x 200 points locates candidate windows
// that are then searched on the full grid.
GridEquilibriumSet GridPriceEquilibrium(const Period2Game& game, int grid_n,
                                        std::size_t max_pairs = 64);

// Grid best-response iteration on price grids of `price_grid_n` points.
// Cheap enough to run inside the period-1 scan below.
struct GridIterationResult {
  double p_I2 = 0.0;
  double p_E2 = 0.0;
  double W_I2 = 0.0;
  double W_E2 = 0.0;
  bool converged = false;
};
GridIterationResult GridBestResponseIteration(const Period2Game& game,
                                              int price_grid_n);

struct GridPeriod1Optimum {
  double p_I1 = 0.0;
  double W_I = 0.0;
  double theta1 = 0.0;
  bool collaborate = false;
  double p_I2 = 0.0;
  double p_E2 = 0.0;
  int grid_n = 0;
  double cell = 0.0;  // grid spacing in p_I1
  int unconverged_cells = 0;
};

// Exhaustive scan of I's two-period profit over grid_n prices spanning
// [0, 1.01 * w_q q_I1 / w_p] (at least [0, 0.01]); ties go to the smaller
// p_I1. Period-2 play at each point comes from GridBestResponseIteration and
// the both-or-nothing collaboration rule.
GridPeriod1Optimum GridPeriod1(const Market& market, int grid_n,
                               int price_grid_n = 2000);

}  // namespace coopetition::oracle

#endif  // COOPETITION_ORACLE_H_
