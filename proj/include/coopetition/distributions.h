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

#ifndef COOPETITION_DISTRIBUTIONS_H_
#define COOPETITION_DISTRIBUTIONS_H_

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace coopetition {

// Raised when a location is evaluated outside the unit interval.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// User-location laws. Every law is restricted to [0, 1]; the non-compact
// families are truncated and renormalized over the unit interval.
struct UniformLaw {};

struct TruncatedGaussianLaw {
  double mean = 0.5;
  double sd = 0.2;
};

struct TruncatedGammaLaw {
  double shape = 1.0;
  double scale = 0.5;
};

// weight * first + (1 - weight) * second, each component truncated to [0, 1]
// on its own. Only used to build laws that break the hazard-rate condition.
struct MixtureLaw {
  double weight = 0.5;
  TruncatedGaussianLaw first;
  TruncatedGaussianLaw second;
};

using DistributionDescriptor =
    std::variant<UniformLaw, TruncatedGaussianLaw, TruncatedGammaLaw,
                 MixtureLaw>;

// Density h, CDF H and survival 1 - H of user locations on [0, 1].
// Immutable after construction.
class PreferenceDistribution {
 public:
  PreferenceDistribution() : PreferenceDistribution(UniformLaw{}) {}
  // Throws std::invalid_argument on bad parameters (non-positive scale,
  // gamma shape below 1, mixture weight outside [0, 1]).
  explicit PreferenceDistribution(DistributionDescriptor descriptor);

  static PreferenceDistribution Uniform() { return PreferenceDistribution(); }
  static PreferenceDistribution TruncatedGaussian(double mean, double sd) {
    return PreferenceDistribution(TruncatedGaussianLaw{mean, sd});
  }
  static PreferenceDistribution TruncatedGamma(double shape, double scale) {
    return PreferenceDistribution(TruncatedGammaLaw{shape, scale});
  }

  // The following throw DomainError for phi outside [0, 1].
  double Pdf(double phi) const;
  double Cdf(double phi) const;
  double Survival(double phi) const;
  double Hazard(double phi) const;

  // H(clamp(b)) - H(clamp(a)) when b > a, else 0. Accepts any reals.
  double Mass(double a, double b) const;

  const DistributionDescriptor& descriptor() const { return descriptor_; }
  bool is_uniform() const { return uniform_; }
  // Truncation constant: mass of the untruncated law on [0, 1].
  double truncation_mass() const { return normalizer_; }
  std::string Name() const;

 private:
  double RawDensity(double x) const;
  double IntegrateRaw(double a, double b) const;

  DistributionDescriptor descriptor_;
  // Per-component truncation masses, mixtures only.
  std::array<double, 2> component_mass_ = {1.0, 1.0};
  double normalizer_ = 1.0;
  bool uniform_ = true;
};

// The three stock laws shipped with the solver and the crafted bimodal
// mixture whose hazard rate dips in its density valley.
std::vector<PreferenceDistribution> StockDistributions();
PreferenceDistribution CraftedValleyMixture();

struct HazardCheckResult {
  bool density_positive = true;
  bool hazard_increasing = true;
  // First grid location where h/(1-H) drops, or where h <= 0.
  std::optional<double> violation_at;
  double worst_relative_drop = 0.0;
  int grid_points = 0;
  double guard = 0.0;
  std::vector<std::string> notes;

  bool ok() const { return density_positive && hazard_increasing; }
};

// Checks that h > 0 and that h/(1-H) is non-decreasing on an evenly spaced
// grid over [0, 1 - guard]. grid_points must be at least 10. Non-finite
// hazard values inside the guard region are recorded as notes only.
HazardCheckResult CheckHazardMonotone(const PreferenceDistribution& dist,
                                      int grid_points, double guard = 1e-4);

}  // namespace coopetition

#endif  // COOPETITION_DISTRIBUTIONS_H_
