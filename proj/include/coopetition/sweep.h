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

// Solving whole scenarios and sweeping fixture tables.

#ifndef COOPETITION_SWEEP_H_
#define COOPETITION_SWEEP_H_

#include <optional>
#include <string>
#include <vector>

#include "coopetition/collab_game.h"
#include "coopetition/oracle.h"
#include "coopetition/period1.h"
#include "coopetition/scenario.h"

namespace coopetition {

struct ReferenceComparison {
  ReferenceProfits reference;
  QualityPair model_collaborate;
  QualityPair model_local;
  bool model_collaborates = false;
  bool collaborate_match = false;
  bool local_match = false;
  std::optional<bool> r_star_match;

  bool matches() const {
    return collaborate_match && local_match && r_star_match.value_or(true);
  }
};

struct EquilibriumReport {
  std::string period1_mode;
  std::optional<RegionLabel> region;  // set in optimize mode
  double p_I1 = 0.0;
  double theta1 = 0.0;
  CollaborationOutcome outcome;  // both profiles plus the decision
  DemandSegments segments;       // at the selected profile
  ProfitBreakdown profits;       // at the selected profile
  std::optional<oracle::GridPeriod1Optimum> grid_period1;
  std::optional<ReferenceComparison> reference;

  // Both profiles carry a passing no-deviation verdict.
  bool verified() const {
    return outcome.collaborate.verified() && outcome.local.verified();
  }
};

struct SolveOptions {
  // Also run the exhaustive period-1 oracle scan.
  bool grid_period1 = false;
  int grid_period1_n = 2000;
  int grid_price_n = 2000;
};

// Throws ValidationError and NonConvergenceError. Oracle verdicts are always
// attached (verification is forced on).
EquilibriumReport SolveScenario(const Scenario& scenario,
                                const SolveOptions& options = {});

// Oracle profit table for one cell, built from grid equilibria only.
struct OracleProfitTable {
  double theta1 = 0.0;
  oracle::GridEquilibriumSet collaborate;
  oracle::GridEquilibriumSet local;
  bool collaborates = false;
};

OracleProfitTable BuildOracleProfitTable(const Market& market, double p_I1,
                                         int grid_n);

struct SweepCell {
  AccuracyFixture fixture;
  std::optional<EquilibriumReport> report;
  std::string error;       // empty on success
  std::string error_kind;  // "validation" | "non_convergence" | "other"
  // Model outcome agrees with reported_collab; unset when either is unknown.
  std::optional<bool> matches_reported;
  std::optional<OracleProfitTable> discrepancy;

  bool ok() const { return error.empty(); }
};

struct SweepReport {
  std::vector<SweepCell> cells;  // fixture order

  int failures() const;
  int discrepancies() const;
  int unverified() const;
};

struct SweepOptions {
  int workers = 1;
  SolveOptions solve;
  int discrepancy_grid_n = 2000;
};

// Every cell optimizes its period-1 price. Cells are independent; with
// workers > 1 they run concurrently and are merged back by index, so the
// report does not depend on the worker count.
SweepReport RunSweep(const std::vector<AccuracyFixture>& fixtures,
                     const MarketParams& params,
                     const PreferenceDistribution& dist,
                     const SolverSettings& settings,
                     const SweepOptions& options = {});

}  // namespace coopetition

#endif  // COOPETITION_SWEEP_H_
