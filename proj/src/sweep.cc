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

#include "coopetition/sweep.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace coopetition {
namespace {

bool Near(const QualityPair& a, const QualityPair& b, double tol) {
  return std::abs(a.incumbent - b.incumbent) <= tol &&
         std::abs(a.entrant - b.entrant) <= tol;
}

ReferenceComparison Compare(const ReferenceProfits& ref,
                            const CollaborationOutcome& outcome) {
  ReferenceComparison c;
  c.reference = ref;
  c.model_collaborate = {outcome.collaborate.W_I2, outcome.collaborate.W_E2};
  c.model_local = {outcome.local.W_I2, outcome.local.W_E2};
  c.model_collaborates = outcome.collaborates();
  c.collaborate_match = Near(c.model_collaborate, ref.collaborate, ref.tolerance);
  c.local_match = Near(c.model_local, ref.local, ref.tolerance);
  if (ref.collaborates) c.r_star_match = *ref.collaborates == c.model_collaborates;
  return c;
}

SweepCell RunCell(const AccuracyFixture& fixture, const MarketParams& params,
                  const PreferenceDistribution& dist,
                  const SolverSettings& settings, const SweepOptions& options) {
  SweepCell cell;
  cell.fixture = fixture;
  try {
    const Scenario s = ScenarioFromFixture(fixture, params, dist, settings);
    s.market.Validate();
    cell.report = SolveScenario(s, options.solve);
    if (fixture.reported_collab) {
      const bool model = cell.report->outcome.collaborates();
      cell.matches_reported = model == *fixture.reported_collab;
      if (!*cell.matches_reported) {
        cell.discrepancy = BuildOracleProfitTable(s.market, cell.report->p_I1,
                                                  options.discrepancy_grid_n);
      }
    }
  } catch (const ValidationError& e) {
    cell.error = e.what();
    cell.error_kind = "validation";
  } catch (const NonConvergenceError& e) {
    cell.error = e.what();
    cell.error_kind = "non_convergence";
  } catch (const std::exception& e) {
    cell.error = e.what();
    cell.error_kind = "other";
  }
  return cell;
}

}  // namespace

EquilibriumReport SolveScenario(const Scenario& scenario,
                                const SolveOptions& options) {
  const Market& market = scenario.market;
  market.Validate();
  SolverSettings settings = scenario.settings;
  settings.verify_equilibria = true;
  settings.Validate();

  EquilibriumReport r;
  TotalProfit total;
  switch (scenario.period1.mode) {
    case Period1Mode::kOptimize: {
      const Period1Solution sol = OptimizePeriod1(market, settings);
      r.period1_mode = "optimize";
      r.region = sol.region;
      total = sol.at_optimum;
      break;
    }
    case Period1Mode::kCorner:
      r.period1_mode = "corner";
      total = EvaluateTotalProfit(
          market, market.params.w_q * market.quality.q_I1 / market.params.w_p,
          settings);
      break;
    case Period1Mode::kFixed:
      r.period1_mode = "fixed";
      total = EvaluateTotalProfit(market, scenario.period1.price, settings);
      break;
  }
  r.p_I1 = total.p_I1;
  r.theta1 = total.theta1;
  r.outcome = total.outcome;

  const CollaborationProfile profile = r.outcome.decision.r_star;
  const PriceEquilibrium& eq = r.outcome.Selected();
  r.segments = Period2Game::Make(market, profile, r.p_I1).Segments(eq.p_I2, eq.p_E2);
  r.profits = Profits(market, profile, {r.p_I1, eq.p_I2, eq.p_E2});

  if (options.grid_period1) {
    r.grid_period1 =
        oracle::GridPeriod1(market, options.grid_period1_n, options.grid_price_n);
  }
  if (scenario.reference) r.reference = Compare(*scenario.reference, r.outcome);
  return r;
}

OracleProfitTable BuildOracleProfitTable(const Market& market, double p_I1,
                                         int grid_n) {
  OracleProfitTable t;
  t.theta1 = Period1Threshold(market.params, market.quality.q_I1, p_I1);
  t.collaborate =
      oracle::GridPriceEquilibrium(Period2Game::Make(market, {true, true}, p_I1), grid_n);
  t.local =
      oracle::GridPriceEquilibrium(Period2Game::Make(market, {false, false}, p_I1), grid_n);
  t.collaborates = t.collaborate.count > 0 && t.local.count > 0 &&
                   t.collaborate.W_I2 >= t.local.W_I2 &&
                   t.collaborate.W_E2 >= t.local.W_E2;
  return t;
}

int SweepReport::failures() const {
  return static_cast<int>(
      std::count_if(cells.begin(), cells.end(), [](const SweepCell& c) { return !c.ok(); }));
}

int SweepReport::discrepancies() const {
  return static_cast<int>(std::count_if(cells.begin(), cells.end(), [](const SweepCell& c) {
    return c.matches_reported && !*c.matches_reported;
  }));
}

int SweepReport::unverified() const {
  return static_cast<int>(std::count_if(cells.begin(), cells.end(), [](const SweepCell& c) {
    return c.report && !c.report->verified();
  }));
}

SweepReport RunSweep(const std::vector<AccuracyFixture>& fixtures,
                     const MarketParams& params,
                     const PreferenceDistribution& dist,
                     const SolverSettings& settings,
                     const SweepOptions& options) {
  SweepReport report;
  report.cells.resize(fixtures.size());
  const std::size_t workers = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::max(options.workers, 1)), 1,
      std::max<std::size_t>(fixtures.size(), 1));
  if (workers == 1) {
    for (std::size_t k = 0; k < fixtures.size(); ++k) {
      report.cells[k] = RunCell(fixtures[k], params, dist, settings, options);
    }
    return report;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < fixtures.size(); k = next++) {
        report.cells[k] = RunCell(fixtures[k], params, dist, settings, options);
      }
    });
  }
  for (std::thread& t : pool) t.join();
  return report;
}

}  // namespace coopetition
