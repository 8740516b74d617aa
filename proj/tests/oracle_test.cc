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

#include <algorithm>
#include <cmath>

#include "doctest.h"

#include "coopetition/oracle.h"

namespace coopetition {
namespace {

using oracle::GridPriceEquilibrium;

Period2Game Game(QualityPair q, double theta1 = 0.0) {
  return Period2Game{MarketParams(), PreferenceDistribution(), q, theta1};
}

// Every grid pair, checked against every deviation.
std::size_t CountByEnumeration(const Period2Game& g, int n) {
  const auto gi = oracle::PriceGrid(g, Company::kIncumbent, n);
  const auto ge = oracle::PriceGrid(g, Company::kEntrant, n);
  std::size_t count = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double wi = g.Profit(Company::kIncumbent, gi[i], ge[j]);
      const double we = g.Profit(Company::kEntrant, ge[j], gi[i]);
      bool stable = true;
      for (int k = 0; k < n && stable; ++k) {
        stable = g.Profit(Company::kIncumbent, gi[k], ge[j]) <= wi + 1e-12 &&
                 g.Profit(Company::kEntrant, ge[k], gi[i]) <= we + 1e-12;
      }
      count += stable;
    }
  }
  return count;
}

TEST_SUITE("oracle") {

TEST_CASE("price grid spans cost to cap") {
  const auto grid = oracle::PriceGrid(Game({0.75, 0.5}), Company::kEntrant, 11);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == doctest::Approx(0.5));
  CHECK(grid.size() == 11);
  CHECK_THROWS_AS(oracle::PriceGrid(Game({0.75, 0.5}), Company::kEntrant, 1),
                  std::invalid_argument);
}

TEST_CASE("no-deviation check flags a non-equilibrium") {
  const Period2Game g = Game({0.75, 0.75});
  const auto good = oracle::VerifyNoDeviation(g, 0.375, 0.375, 2000, 1e-4);
  CHECK(good.passed);
  const auto bad = oracle::VerifyNoDeviation(g, 0.1, 0.375, 2000, 1e-4);
  CHECK_FALSE(bad.passed);
  CHECK(bad.worst_company == Company::kIncumbent);
  CHECK(bad.worst_location == doctest::Approx(0.375).epsilon(1e-3));
  CHECK(bad.worst_deviation == doctest::Approx(0.140625 - 0.1 * 0.6375).epsilon(1e-3));
}

TEST_CASE("symmetric grid equilibrium") {
  const auto set = GridPriceEquilibrium(Game({0.75, 0.75}), 2001);
  REQUIRE(set.count > 0);
  CHECK_FALSE(set.degenerate);
  bool has_center = false;
  for (const auto& [pi, pe] : set.pairs) {
    has_center |= std::abs(pi - 0.375) < 1e-9 && std::abs(pe - 0.375) < 1e-9;
  }
  CHECK(has_center);
  CHECK(set.W_I2 == doctest::Approx(0.140625).epsilon(1e-6));
}

TEST_CASE("windowed search finds what full enumeration finds") {
  for (QualityPair q : {QualityPair{0.75, 0.75}, QualityPair{0.72, 0.73},
                        QualityPair{1.4, 1.2}, QualityPair{0.9, 0.4}}) {
    for (double theta : {0.0, 0.3}) {
      const Period2Game g = Game(q, theta);
      CAPTURE(q.incumbent);
      CAPTURE(theta);
      CHECK(GridPriceEquilibrium(g, 121).count == CountByEnumeration(g, 121));
    }
  }
}

TEST_CASE("zero quality market is degenerate") {
  const auto set = GridPriceEquilibrium(Game({0.0, 0.0}), 200);
  CHECK(set.degenerate);
  CHECK(set.count == 200u * 200u);
}

TEST_CASE("grid best-response iteration lands on the symmetric point") {
  const auto it = oracle::GridBestResponseIteration(Game({0.75, 0.75}), 2001);
  CHECK(it.converged);
  CHECK(it.p_I2 == doctest::Approx(0.375));
  CHECK(it.p_E2 == doctest::Approx(0.375));
}

TEST_CASE("refining the period-1 grid never loses profit") {
  Market m;
  m.quality = {0.6081, {0.6081, 0.5756}, {0.6981, 0.6981}};
  // Nested grids: every point of the coarse grid is on the fine one.
  const auto coarse = oracle::GridPeriod1(m, 201, 500);
  const auto fine = oracle::GridPeriod1(m, 401, 500);
  CHECK(fine.W_I >= coarse.W_I - 1e-9);
  CHECK(std::abs(fine.p_I1 - coarse.p_I1) < coarse.cell);
  CHECK(coarse.unconverged_cells == 0);
}

TEST_CASE("oracle output is deterministic") {
  const auto a = GridPriceEquilibrium(Game({0.72, 0.73}, 0.1), 800);
  const auto b = GridPriceEquilibrium(Game({0.72, 0.73}, 0.1), 800);
  CHECK(a.count == b.count);
  CHECK(a.pairs == b.pairs);
  CHECK(a.W_I2 == b.W_I2);
}

}  // TEST_SUITE

}  // namespace
}  // namespace coopetition
