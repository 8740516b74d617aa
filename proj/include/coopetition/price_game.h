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

#ifndef COOPETITION_PRICE_GAME_H_
#define COOPETITION_PRICE_GAME_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coopetition/market.h"
#include "coopetition/oracle.h"

namespace coopetition {

// Knobs for every numerical routine in the solver. Defaults are the
// reference configuration used by the CLI and the acceptance suite.
struct SolverSettings {
  // Best-response dynamics stop once both prices move by less than this.
  // Golden section resolves a smooth profit peak only to about 1e-8, so much
  // tighter values can stall in a small residual market.
  double br_tolerance = 1e-7;
  int max_br_iterations = 500;
  // New price = (1 - damping) * best response + damping * old price.
  double damping = 0.0;
  bool entrant_first = false;

  // Own-price maximization: bracketing scan then golden section.
  int bracket_points = 64;
  double line_search_tolerance = 1e-12;

  // Oracle checks attached to solver output.
  int oracle_grid_n = 2000;
  double deviation_tolerance = 1e-4;
  bool verify_equilibria = true;

  // Period-1 projected gradient ascent.
  double fd_step = 1e-4;
  double region_tolerance = 1e-9;
  int max_ascent_iterations = 5000;
  double ascent_step_fraction = 0.05;
  double ascent_step_floor = 1e-7;

  // Throws ValidationError naming the violated constraint.
  void Validate() const;
};

struct BestResponse {
  double price = 0.0;
  double profit = 0.0;
  // The company sells nothing at any price in its domain.
  bool zero_demand = false;
  // w_q q / w_p <= cost: no price covers the marginal cost.
  bool degenerate_domain = false;
};

// Own price maximizing own period-2 profit against a fixed rival price, over
// [cost, w_q q / w_p]. A 64-interval scan brackets the peak and golden
// section refines it; ties go to the lower price. When the domain is
// degenerate the cost is returned; when demand is zero everywhere the domain
// midpoint is returned.
BestResponse ComputeBestResponse(const Period2Game& game, Company own,
                                 double other_price,
                                 const SolverSettings& settings);

struct PriceEquilibrium {
  double p_I2 = 0.0;
  double p_E2 = 0.0;
  double W_I2 = 0.0;
  double W_E2 = 0.0;
  int iterations = 0;
  // Largest price change in the last sweep.
  double residual = 0.0;
  bool converged = false;
  bool zero_demand_I = false;
  bool zero_demand_E = false;
  std::vector<std::pair<double, double>> trajectory;
  std::optional<oracle::OracleVerdict> verdict;

  bool verified() const { return verdict && verdict->passed; }
};

class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what,
                      std::vector<std::pair<double, double>> trajectory)
      : std::runtime_error(what), trajectory_(std::move(trajectory)) {}
  const std::vector<std::pair<double, double>>& trajectory() const {
    return trajectory_;
  }

 private:
  std::vector<std::pair<double, double>> trajectory_;
};

// Alternating best responses from the domain midpoints (or `warm_start`)
// until both prices settle. Attaches an oracle no-deviation verdict when
// settings.verify_equilibria is set. Throws NonConvergenceError after
// max_br_iterations sweeps.
PriceEquilibrium SolvePriceEquilibrium(
    const Period2Game& game, const SolverSettings& settings,
    std::optional<std::pair<double, double>> warm_start = std::nullopt);

struct UnimodalityResult {
  bool unimodal = true;
  int violations = 0;
  double first_violation_price = 0.0;
};

// Scans own profit against a fixed rival price on grid_n (>= 100) evenly
// spaced own prices over [cost, cap] and counts rises that follow a fall,
// with slack 1e-10.
UnimodalityResult UnimodalityScan(const Period2Game& game, Company own,
                                  double other_price, int grid_n);

}  // namespace coopetition

#endif  // COOPETITION_PRICE_GAME_H_
