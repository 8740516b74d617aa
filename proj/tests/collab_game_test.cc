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

#include <optional>

#include "doctest.h"

#include "coopetition/collab_game.h"
#include "coopetition/oracle.h"

namespace coopetition {
namespace {

Market Make(double q_I1, QualityPair local, QualityPair fl) {
  Market m;
  m.quality = {q_I1, local, fl};
  return m;
}

TEST_SUITE("collab_game") {

TEST_CASE("both must gain for collaboration") {
  CHECK(DecideCollaboration(0.2, 0.2, 0.1, 0.1).r_star.Effective());
  CHECK(DecideCollaboration(0.1, 0.1, 0.1, 0.1).r_star.Effective());  // ties collaborate
  const CollaborationDecision i_loses = DecideCollaboration(0.05, 0.2, 0.1, 0.1);
  CHECK_FALSE(i_loses.r_star.Effective());
  CHECK_FALSE(i_loses.incumbent_prefers);
  CHECK(i_loses.entrant_prefers);
  CHECK_FALSE(DecideCollaboration(0.2, 0.05, 0.1, 0.1).r_star.Effective());
  CHECK(DecideCollaboration(0.2, 0.05, 0.1, 0.1).r_star.Label() == "(0,0)");
}

TEST_CASE("profile table for the counterexample market") {
  // p_I1 at the no-sales corner, so theta1 = 0. Both profiles split the
  // market into local monopolies at p = q / 2.
  const Market m = Make(0.72, {0.72, 0.73}, {0.75, 0.75});
  const CollaborationOutcome out = SolveCollaboration(m, 0.72, SolverSettings());
  CHECK(out.theta1 == 0.0);
  CHECK(out.collaborate.W_I2 == doctest::Approx(0.140625).epsilon(1e-9));
  CHECK(out.collaborate.W_E2 == doctest::Approx(0.140625).epsilon(1e-9));
  CHECK(out.local.W_I2 == doctest::Approx(0.1296).epsilon(1e-9));
  CHECK(out.local.W_E2 == doctest::Approx(0.133225).epsilon(1e-9));
  CHECK(out.collaborates());
  CHECK(out.collaborate.verified());
  CHECK(out.local.verified());
  CHECK(&out.ForProfile({true, false}) == &out.local);
}

TEST_CASE("better FL models can still end in non-participation") {
  // Oracle-only search: grid equilibria of both profiles for FL qualities
  // that dominate local ones.
  std::optional<Market> witness;
  double witness_p = 0.0;
  for (double qi : {0.6, 0.9}) {
    for (double qe : {0.5, 0.7}) {
      for (double gain_e : {0.1, 0.3}) {
        for (double theta : {0.0, 0.35, 0.7}) {
          const Market m = Make(qi, {qi, qe}, {qi + 0.02, qe + gain_e});
          const double p_I1 = qi - theta;
          const auto fl = oracle::GridPriceEquilibrium(Period2Game::Make(m, {true, true}, p_I1), 400);
          const auto lo = oracle::GridPriceEquilibrium(Period2Game::Make(m, {false, false}, p_I1), 400);
          if (fl.count == 0 || lo.count == 0) continue;
          if (fl.W_I2 < lo.W_I2 - 1e-6 && !witness) {
            witness = m;
            witness_p = p_I1;
          }
        }
      }
    }
  }
  REQUIRE_MESSAGE(witness.has_value(), "no (0,0) outcome with dominating FL qualities found");
  const CollaborationOutcome out = SolveCollaboration(*witness, witness_p, SolverSettings());
  CHECK_FALSE(out.collaborates());
  CHECK(witness->quality.fl.incumbent > witness->quality.local.incumbent);
  CHECK(witness->quality.fl.entrant > witness->quality.local.entrant);
}

TEST_CASE("non-convergence names the profile") {
  SolverSettings s;
  s.max_br_iterations = 1;
  const Market m = Make(0.72, {0.72, 0.73}, {0.75, 0.75});
  CHECK_THROWS_WITH_AS(SolveCollaboration(m, 0.5, s), doctest::Contains("profile (1,1)"),
                       NonConvergenceError);
}

}  // TEST_SUITE

}  // namespace
}  // namespace coopetition
