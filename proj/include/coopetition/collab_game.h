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

#ifndef COOPETITION_COLLAB_GAME_H_
#define COOPETITION_COLLAB_GAME_H_

#include <optional>
#include <utility>

#include "coopetition/market.h"
#include "coopetition/price_game.h"

namespace coopetition {

struct CollaborationDecision {
  CollaborationProfile r_star;
  bool incumbent_prefers = false;  // W_I2(1,1) >= W_I2(0,0)
  bool entrant_prefers = false;    // W_E2(1,1) >= W_E2(0,0)
};

// (1,1) iff both companies weakly gain from collaborating; otherwise (0,0).
CollaborationDecision DecideCollaboration(double W_I2_fl, double W_E2_fl,
                                          double W_I2_local, double W_E2_local);

// Price equilibria under both quality regimes and the resulting choice. The
// profiles (1,0) and (0,1) play exactly like (0,0) and are not solved
// separately.
struct CollaborationOutcome {
  double p_I1 = 0.0;
  double theta1 = 0.0;
  PriceEquilibrium collaborate;  // profile (1,1), FL qualities
  PriceEquilibrium local;        // profile (0,0), local qualities
  CollaborationDecision decision;

  bool collaborates() const { return decision.r_star.Effective(); }
  const PriceEquilibrium& Selected() const {
    return collaborates() ? collaborate : local;
  }
  // Row of the profit table for an arbitrary profile; mixed profiles alias
  // the (0,0) entry.
  const PriceEquilibrium& ForProfile(const CollaborationProfile& r) const {
    return r.Effective() ? collaborate : local;
  }
};

struct CollaborationWarmStart {
  std::optional<std::pair<double, double>> collaborate;
  std::optional<std::pair<double, double>> local;
};

// Throws NonConvergenceError naming the profile that failed.
CollaborationOutcome SolveCollaboration(
    const Market& market, double p_I1, const SolverSettings& settings,
    const CollaborationWarmStart& warm = {});

}  // namespace coopetition

#endif  // COOPETITION_COLLAB_GAME_H_
