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

#include "coopetition/distributions.h"

namespace coopetition {
namespace {

// Closed forms, independent of the quadrature in the library.
double NormalCdf(double x, double mean, double sd) {
  return 0.5 * std::erfc(-(x - mean) / (sd * std::sqrt(2.0)));
}

double TruncatedNormalCdf(double x, double mean, double sd) {
  const double lo = NormalCdf(0.0, mean, sd);
  return (NormalCdf(x, mean, sd) - lo) / (NormalCdf(1.0, mean, sd) - lo);
}

double TruncatedExponentialCdf(double x, double scale) {
  return (1.0 - std::exp(-x / scale)) / (1.0 - std::exp(-1.0 / scale));
}

TEST_SUITE("distributions") {

TEST_CASE("uniform law") {
  const PreferenceDistribution u = PreferenceDistribution::Uniform();
  CHECK(u.is_uniform());
  CHECK(u.Pdf(0.3) == 1.0);
  CHECK(u.Cdf(0.5) == doctest::Approx(0.5));
  CHECK(u.Survival(0.25) == doctest::Approx(0.75));
  CHECK(u.Hazard(0.5) == doctest::Approx(2.0));
  CHECK(u.Mass(-1.0, 0.4) == doctest::Approx(0.4));
  CHECK(u.Mass(0.7, 0.2) == 0.0);
  CHECK(u.Mass(0.2, 7.0) == doctest::Approx(0.8));
}

TEST_CASE("locations outside the unit interval are rejected") {
  const PreferenceDistribution u = PreferenceDistribution::Uniform();
  CHECK_THROWS_AS(u.Pdf(1.5), DomainError);
  CHECK_THROWS_AS(u.Cdf(-0.1), DomainError);
  CHECK_THROWS_AS(u.Hazard(std::nan("")), DomainError);
  const auto g = PreferenceDistribution::TruncatedGaussian(0.5, 0.2);
  CHECK_THROWS_AS(g.Survival(1.0000001), DomainError);
}

TEST_CASE("bad parameters are rejected") {
  CHECK_THROWS_AS(PreferenceDistribution::TruncatedGaussian(0.5, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(PreferenceDistribution::TruncatedGamma(0.5, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(PreferenceDistribution::TruncatedGamma(2.0, -1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(PreferenceDistribution(MixtureLaw{1.5, {}, {}}),
                  std::invalid_argument);
}

TEST_CASE("truncated gaussian matches the erf closed form") {
  for (double mean : {0.5, 0.2, 0.9}) {
    for (double sd : {0.05, 0.2, 1.0}) {
      const auto g = PreferenceDistribution::TruncatedGaussian(mean, sd);
      for (double x = 0.0; x <= 1.0; x += 0.0625) {
        CHECK(g.Cdf(x) == doctest::Approx(TruncatedNormalCdf(x, mean, sd)).epsilon(1e-9));
        CHECK(g.Survival(x) + g.Cdf(x) == doctest::Approx(1.0));
      }
      CHECK(g.Cdf(0.0) == 0.0);
      CHECK(g.Cdf(1.0) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("truncated gamma with shape one is a truncated exponential") {
  const auto g = PreferenceDistribution::TruncatedGamma(1.0, 0.5);
  for (double x = 0.0; x <= 1.0; x += 0.05) {
    CHECK(g.Cdf(x) == doctest::Approx(TruncatedExponentialCdf(x, 0.5)).epsilon(1e-9));
  }
  // Constant hazard of the untruncated exponential is 1 / scale; truncation
  // only raises it.
  CHECK(g.Hazard(0.0) == doctest::Approx(2.0 / (1.0 - std::exp(-2.0))).epsilon(1e-9));
  CHECK(g.Pdf(0.0) > 0.0);
}

TEST_CASE("density integrates to the cdf") {
  for (const PreferenceDistribution& d : StockDistributions()) {
    // Composite Simpson on [0, 0.6] as an independent check of Cdf.
    const int n = 600;
    const double h = 0.6 / n;
    double s = d.Pdf(0.0) + d.Pdf(0.6);
    for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * d.Pdf(k * h);
    CHECK(s * h / 3.0 == doctest::Approx(d.Cdf(0.6)).epsilon(1e-8));
  }
}

TEST_CASE("mixture cdf is the weighted component cdfs") {
  const PreferenceDistribution m = CraftedValleyMixture();
  for (double x : {0.1, 0.35, 0.5, 0.77, 0.95}) {
    const double expected =
        0.5 * TruncatedNormalCdf(x, 0.2, 0.06) + 0.5 * TruncatedNormalCdf(x, 0.8, 0.06);
    CHECK(m.Cdf(x) == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("stock laws satisfy the increasing hazard condition") {
  const auto stock = StockDistributions();
  REQUIRE(stock.size() == 3);
  for (const PreferenceDistribution& d : stock) {
    const HazardCheckResult r = CheckHazardMonotone(d, 2000);
    CAPTURE(d.Name());
    CHECK(r.ok());
    CHECK_FALSE(r.violation_at.has_value());
  }
}

TEST_CASE("valley mixture fails the hazard check inside its valley") {
  const HazardCheckResult r = CheckHazardMonotone(CraftedValleyMixture(), 2000);
  CHECK_FALSE(r.ok());
  CHECK(r.density_positive);
  CHECK_FALSE(r.hazard_increasing);
  REQUIRE(r.violation_at.has_value());
  // The hazard drops just past the first mode, before the valley at 0.5.
  CHECK(*r.violation_at > 0.2);
  CHECK(*r.violation_at < 0.5);
  CHECK(r.worst_relative_drop > 0.0);
}

TEST_CASE("hazard check rejects tiny grids") {
  CHECK_THROWS_AS(CheckHazardMonotone(PreferenceDistribution::Uniform(), 5),
                  std::invalid_argument);
}

}  // TEST_SUITE

}  // namespace
}  // namespace coopetition
