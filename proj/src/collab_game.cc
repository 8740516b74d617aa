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

#include "coopetition/collab_game.h"

namespace coopetition {
namespace {

PriceEquilibrium SolveProfile(const Market& market,
                              const CollaborationProfile& r, double p_I1,
                              const SolverSettings& settings,
                              const std::optional<std::pair<double, double>>& warm) {
  try {
    return SolvePriceEquilibrium(Period2Game::Make(market, r, p_I1), settings,
                                 warm);
  } catch (const NonConvergenceError& e) {
    throw NonConvergenceError(
        "collab_game: profile " + r.Label() + ": " + e.what(), e.trajectory());
  }
}

}  // namespace

CollaborationDecision DecideCollaboration(double W_I2_fl, double W_E2_fl,
                                          double W_I2_local,
                                          double W_E2_local) {
  CollaborationDecision d;
  d.incumbent_prefers = W_I2_fl >= W_I2_local;
  d.entrant_prefers = W_E2_fl >= W_E2_local;
  const bool both = d.incumbent_prefers && d.entrant_prefers;
  d.r_star = {both, both};
  return d;
}

CollaborationOutcome SolveCollaboration(const Market& market, double p_I1,
                                        const SolverSettings& settings,
                                        const CollaborationWarmStart& warm) {
  CollaborationOutcome out;
  out.p_I1 = p_I1;
  out.theta1 = Period1Threshold(market.params, market.quality.q_I1, p_I1);
  out.collaborate =
      SolveProfile(market, {true, true}, p_I1, settings, warm.collaborate);
  out.local = SolveProfile(market, {false, false}, p_I1, settings, warm.local);
  out.decision = DecideCollaboration(out.collaborate.W_I2, out.collaborate.W_E2,
                                     out.local.W_I2, out.local.W_E2);
  return out;
}

}  // namespace coopetition
