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

#include <cmath>

#include "doctest.h"

#include "coopetition/oracle.h"
#include "coopetition/price_game.h"

namespace coopetition {
namespace {

Period2Game Game(QualityPair q, double theta1 = 0.0,
                 PreferenceDistribution dist = PreferenceDistribution(),
                 MarketParams params = MarketParams()) {
  return Period2Game{params, std::move(dist), q, theta1};
}

TEST_SUITE("price_game") {

TEST_CASE("best response in the symmetric market") {
  const Period2Game g = Game({0.75, 0.75});
  const SolverSettings s;
  const BestResponse br = ComputeBestResponse(g, Company::kIncumbent, 0.375, s);
  CHECK(br.price == doctest::Approx(0.375).epsilon(1e-7));
  CHECK(br.profit == doctest::Approx(0.140625));
  // The grid oracle agrees within one grid cell.
  double best = 0.0, arg = 0.0;
  for (double p : oracle::PriceGrid(g, Company::kIncumbent, 2000)) {
    const double w = g.Profit(Company::kIncumbent, p, 0.375);
    if (w > best) best = w, arg = p;
  }
  CHECK(std::abs(arg - br.price) <= 0.75 / 1999);
}

TEST_CASE("monopoly price when the rival is priced out") {
  // p (q - p) on [0, q] peaks at q / 2.
  const BestResponse br =
      ComputeBestResponse(Game({0.75, 0.75}), Company::kIncumbent, 1e6, SolverSettings());
  CHECK(br.price == doctest::Approx(0.375).epsilon(1e-7));
}

TEST_CASE("degenerate domain returns the cost") {
  MarketParams w;
  w.c_E = 0.2;
  const BestResponse br =
      ComputeBestResponse(Game({0.75, 0.2}, 0.0, {}, w), Company::kEntrant, 0.3, SolverSettings());
  CHECK(br.degenerate_domain);
  CHECK(br.zero_demand);
  CHECK(br.price == 0.2);
}

TEST_CASE("symmetric equilibrium") {
  const Period2Game g = Game({0.75, 0.75});
  const PriceEquilibrium eq = SolvePriceEquilibrium(g, SolverSettings());
  CHECK(eq.converged);
  CHECK(eq.residual < SolverSettings().br_tolerance);
  CHECK(eq.p_I2 == doctest::Approx(0.375).epsilon(1e-7));
  CHECK(eq.p_E2 == doctest::Approx(0.375).epsilon(1e-7));
  REQUIRE(eq.verdict.has_value());
  CHECK(eq.verified());
}

TEST_CASE("covered market matches the Hotelling closed form") {
  // With qualities high enough that everyone buys, p_i = 1 + (2 c_i + c_j) / 3.
  MarketParams w;
  w.c_I = 0.1;
  w.c_E = 0.05;
  const PriceEquilibrium eq = SolvePriceEquilibrium(Game({3.0, 3.0}, 0.0, {}, w), SolverSettings());
  CHECK(eq.p_I2 == doctest::Approx(1.0 + 0.25 / 3.0).epsilon(1e-6));
  CHECK(eq.p_E2 == doctest::Approx(1.0 + 0.2 / 3.0).epsilon(1e-6));
  CHECK(eq.verified());
}

TEST_CASE("empty residual market gives midpoints with zero demand") {
  const PriceEquilibrium eq = SolvePriceEquilibrium(Game({0.6, 0.6}, 1.0), SolverSettings());
  CHECK(eq.zero_demand_I);
  CHECK(eq.zero_demand_E);
  CHECK(eq.p_I2 == doctest::Approx(0.3));
  CHECK(eq.W_I2 == 0.0);
  CHECK(eq.W_E2 == 0.0);
}

TEST_CASE("iteration cap raises with the trajectory") {
  SolverSettings s;
  s.max_br_iterations = 1;
  try {
    SolvePriceEquilibrium(Game({1.4, 1.2}, 0.2), s);
    FAIL("expected NonConvergenceError");
  } catch (const NonConvergenceError& e) {
    CHECK(std::string(e.what()).find("price_game") != std::string::npos);
    CHECK(e.trajectory().size() == 2);
  }
}

TEST_CASE("order and damping do not change a unique equilibrium") {
  const std::vector<PreferenceDistribution> laws = StockDistributions();
  const std::vector<std::pair<const PreferenceDistribution*, double>> cases = {
      {&laws[0], 0.2}, {&laws[1], 0.0}, {&laws[1], 0.2}, {&laws[2], 0.2}};
  for (const auto& [d, theta] : cases) {
    const Period2Game g = Game({1.4, 1.2}, theta, *d);
    SolverSettings a, b, c;
    b.entrant_first = true;
    c.damping = 0.5;
    const PriceEquilibrium ea = SolvePriceEquilibrium(g, a);
    const PriceEquilibrium eb = SolvePriceEquilibrium(g, b);
    const PriceEquilibrium ec = SolvePriceEquilibrium(g, c);
    CAPTURE(d->Name());
    CAPTURE(theta);
    CHECK(std::abs(ea.W_I2 - eb.W_I2) < 1e-6);
    CHECK(std::abs(ea.W_E2 - eb.W_E2) < 1e-6);
    CHECK(std::abs(ea.W_I2 - ec.W_I2) < 1e-6);
    CHECK(ea.verified());
  }
}

TEST_CASE("touching monopolies leave a continuum of equilibria") {
  // Reaches q - p meet exactly when p_I + p_E = q_I + q_E - 1; every split of
  // that sum is an equilibrium, so the update order picks one.
  const Period2Game g = Game({1.4, 1.2});
  SolverSettings a, b;
  b.entrant_first = true;
  const PriceEquilibrium ea = SolvePriceEquilibrium(g, a);
  const PriceEquilibrium eb = SolvePriceEquilibrium(g, b);
  CHECK(ea.p_I2 + ea.p_E2 == doctest::Approx(1.6).epsilon(1e-6));
  CHECK(eb.p_I2 + eb.p_E2 == doctest::Approx(1.6).epsilon(1e-6));
  CHECK(std::abs(ea.p_I2 - eb.p_I2) > 1e-3);
  CHECK(ea.verified());
  CHECK(eb.verified());
}

TEST_CASE("equilibria pass the no-deviation check") {
  for (const PreferenceDistribution& d : StockDistributions()) {
    for (QualityPair q : {QualityPair{0.6, 0.9}, QualityPair{0.9, 0.4}, QualityPair{1.3, 1.1}}) {
      const PriceEquilibrium eq = SolvePriceEquilibrium(Game(q, 0.1, d), SolverSettings());
      CAPTURE(d.Name());
      CHECK(eq.verified());
      CHECK(eq.verdict->worst_deviation <= 1e-4);
    }
  }
}

TEST_CASE("zero costs shift profits only") {
  MarketParams w;
  const PriceEquilibrium eq = SolvePriceEquilibrium(Game({0.8, 0.7}), SolverSettings());
  const Period2Game g = Game({0.8, 0.7});
  const DemandSegments s = g.Segments(eq.p_I2, eq.p_E2);
  w.c_I = 0.05;
  const Period2Game costly = Game({0.8, 0.7}, 0.0, {}, w);
  const DemandSegments t = costly.Segments(eq.p_I2, eq.p_E2);
  CHECK(s.incumbent.hi == t.incumbent.hi);
  CHECK(s.entrant.lo == t.entrant.lo);
  CHECK(costly.Profit(Company::kIncumbent, eq.p_I2, eq.p_E2) ==
        doctest::Approx(eq.W_I2 - 0.05 * s.incumbent_mass));
}

TEST_CASE("profit slices are single-peaked") {
  CHECK(UnimodalityScan(Game({0.75, 0.75}), Company::kIncumbent, 0.375, 2000).unimodal);
  const auto g = PreferenceDistribution::TruncatedGaussian(0.5, 0.2);
  CHECK(UnimodalityScan(Game({0.8, 0.6}, 0.1, g), Company::kEntrant, 0.3, 2000).unimodal);
  CHECK(UnimodalityScan(Game({0.0, 0.6}), Company::kIncumbent, 0.3, 500).unimodal);
  CHECK_THROWS_AS(UnimodalityScan(Game({0.5, 0.5}), Company::kIncumbent, 0.3, 50),
                  std::invalid_argument);
}

TEST_CASE("own price rises with own quality") {
  double previous = -1.0;
  for (int k = 0; k <= 8; ++k) {
    const double q = 0.5 + 0.05 * k;
    const PriceEquilibrium eq = SolvePriceEquilibrium(Game({q, 0.7}, 0.1), SolverSettings());
    CHECK(eq.p_I2 >= previous - 1e-6);
    previous = eq.p_I2;
  }
}

TEST_CASE("settings validation") {
  SolverSettings s;
  s.damping = 1.0;
  CHECK_THROWS_WITH_AS(s.Validate(), doctest::Contains("damping"), ValidationError);
  s = {};
  s.oracle_grid_n = 50;
  CHECK_THROWS_AS(s.Validate(), ValidationError);
  s = {};
  s.br_tolerance = 0.0;
  CHECK_THROWS_AS(s.Validate(), ValidationError);
}

}  // TEST_SUITE

}  // namespace
}  // namespace coopetition
