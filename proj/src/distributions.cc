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

#include "coopetition/distributions.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace coopetition {
namespace {

// Relative tolerance handed to the adaptive Gauss-Kronrod rule. The densities
// integrate to O(1) on [0, 1], so this keeps the absolute error below 1e-10.
constexpr double kQuadratureTolerance = 1e-12;
constexpr unsigned kQuadratureDepth = 12;
constexpr double kHazardRelativeSlack = 1e-9;

double GaussianKernel(const TruncatedGaussianLaw& law, double x) {
  const double z = (x - law.mean) / law.sd;
  return std::exp(-0.5 * z * z) / (law.sd * std::sqrt(2.0 * std::numbers::pi));
}

double GammaKernel(const TruncatedGammaLaw& law, double x) {
  if (x <= 0.0) return law.shape == 1.0 ? 1.0 / law.scale : 0.0;
  return std::exp((law.shape - 1.0) * std::log(x) - x / law.scale -
                  std::lgamma(law.shape) - law.shape * std::log(law.scale));
}

template <typename F>
double Quadrature(F&& f, double a, double b) {
  if (b <= a) return 0.0;
  double error = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 21>::integrate(
      f, a, b, kQuadratureDepth, kQuadratureTolerance, &error);
}

double GaussianMassOnUnit(const TruncatedGaussianLaw& law) {
  return Quadrature([&](double x) { return GaussianKernel(law, x); }, 0.0, 1.0);
}

void CheckGaussian(const TruncatedGaussianLaw& law) {
  if (!(law.sd > 0.0) || !std::isfinite(law.mean)) {
    throw std::invalid_argument(
        "distributions: truncated gaussian needs finite mean and sd > 0");
  }
}

void CheckLocation(double phi) {
  if (!(phi >= 0.0 && phi <= 1.0)) {
    std::ostringstream msg;
    msg << "distributions: location " << phi << " outside [0, 1]";
    throw DomainError(msg.str());
  }
}

}  // namespace

PreferenceDistribution::PreferenceDistribution(DistributionDescriptor descriptor)
    : descriptor_(std::move(descriptor)) {
  uniform_ = std::holds_alternative<UniformLaw>(descriptor_);
  if (uniform_) return;

  if (const auto* g = std::get_if<TruncatedGaussianLaw>(&descriptor_)) {
    CheckGaussian(*g);
  } else if (const auto* g = std::get_if<TruncatedGammaLaw>(&descriptor_)) {
    // Shapes below 1 make the density unbounded at 0.
    if (!(g->shape >= 1.0) || !(g->scale > 0.0)) {
      throw std::invalid_argument(
          "distributions: truncated gamma needs shape >= 1 and scale > 0");
    }
  } else if (const auto* m = std::get_if<MixtureLaw>(&descriptor_)) {
    if (!(m->weight >= 0.0 && m->weight <= 1.0)) {
      throw std::invalid_argument(
          "distributions: mixture weight must lie in [0, 1]");
    }
    CheckGaussian(m->first);
    CheckGaussian(m->second);
    component_mass_ = {GaussianMassOnUnit(m->first),
                       GaussianMassOnUnit(m->second)};
  }
  normalizer_ = IntegrateRaw(0.0, 1.0);
  if (!(normalizer_ > 0.0) || !std::isfinite(normalizer_)) {
    throw std::invalid_argument(
        "distributions: law has no usable mass on [0, 1]");
  }
}

double PreferenceDistribution::RawDensity(double x) const {
  return std::visit(
      [&](const auto& law) -> double {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, UniformLaw>) {
          return 1.0;
        } else if constexpr (std::is_same_v<T, TruncatedGaussianLaw>) {
          return GaussianKernel(law, x);
        } else if constexpr (std::is_same_v<T, TruncatedGammaLaw>) {
          return GammaKernel(law, x);
        } else {
          return law.weight * GaussianKernel(law.first, x) /
                     component_mass_[0] +
                 (1.0 - law.weight) * GaussianKernel(law.second, x) /
                     component_mass_[1];
        }
      },
      descriptor_);
}

double PreferenceDistribution::IntegrateRaw(double a, double b) const {
  return Quadrature([this](double x) { return RawDensity(x); }, a, b);
}

double PreferenceDistribution::Pdf(double phi) const {
  CheckLocation(phi);
  if (uniform_) return 1.0;
  return RawDensity(phi) / normalizer_;
}

double PreferenceDistribution::Cdf(double phi) const {
  CheckLocation(phi);
  if (uniform_) return phi;
  if (phi == 1.0) return 1.0;
  return std::min(1.0, IntegrateRaw(0.0, phi) / normalizer_);
}

double PreferenceDistribution::Survival(double phi) const {
  CheckLocation(phi);
  if (uniform_) return 1.0 - phi;
  if (phi == 0.0) return 1.0;
  return std::min(1.0, IntegrateRaw(phi, 1.0) / normalizer_);
}

double PreferenceDistribution::Hazard(double phi) const {
  return Pdf(phi) / Survival(phi);
}

double PreferenceDistribution::Mass(double a, double b) const {
  if (!(b > a)) return 0.0;
  const double lo = std::clamp(a, 0.0, 1.0);
  const double hi = std::clamp(b, 0.0, 1.0);
  if (hi <= lo) return 0.0;
  return Cdf(hi) - Cdf(lo);
}

std::string PreferenceDistribution::Name() const {
  std::ostringstream out;
  std::visit(
      [&](const auto& law) {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, UniformLaw>) {
          out << "uniform";
        } else if constexpr (std::is_same_v<T, TruncatedGaussianLaw>) {
          out << "truncated_gaussian(" << law.mean << "," << law.sd << ")";
        } else if constexpr (std::is_same_v<T, TruncatedGammaLaw>) {
          out << "truncated_gamma(" << law.shape << "," << law.scale << ")";
        } else {
          out << "mixture(" << law.weight << ";" << law.first.mean << ","
              << law.first.sd << ";" << law.second.mean << ","
              << law.second.sd << ")";
        }
      },
      descriptor_);
  return out.str();
}

std::vector<PreferenceDistribution> StockDistributions() {
  return {PreferenceDistribution::Uniform(),
          PreferenceDistribution::TruncatedGaussian(0.5, 0.2),
          PreferenceDistribution::TruncatedGamma(1.0, 0.5)};
}

PreferenceDistribution CraftedValleyMixture() {
  return PreferenceDistribution(
      MixtureLaw{0.5, TruncatedGaussianLaw{0.2, 0.06},
                 TruncatedGaussianLaw{0.8, 0.06}});
}

HazardCheckResult CheckHazardMonotone(const PreferenceDistribution& dist,
                                      int grid_points, double guard) {
  if (grid_points < 10) {
    throw std::invalid_argument(
        "distributions: hazard check needs at least 10 grid points");
  }
  HazardCheckResult result;
  result.grid_points = grid_points;
  result.guard = guard;

  const double right = 1.0 - guard;
  double previous = 0.0;
  bool have_previous = false;
  for (int i = 0; i < grid_points; ++i) {
    const double phi = right * i / (grid_points - 1);
    const double density = dist.Pdf(phi);
    if (!(density > 0.0)) {
      result.density_positive = false;
      if (!result.violation_at) result.violation_at = phi;
      continue;
    }
    const double survival = dist.Survival(phi);
    const double hazard = density / survival;
    if (!std::isfinite(hazard) || !(survival > 0.0)) {
      std::ostringstream note;
      note << "hazard not finite at " << phi << " (guard band)";
      result.notes.push_back(note.str());
      continue;
    }
    if (have_previous && hazard < previous) {
      const double drop = (previous - hazard) / previous;
      if (drop > kHazardRelativeSlack) {
        result.worst_relative_drop = std::max(result.worst_relative_drop, drop);
        if (result.hazard_increasing) {
          result.hazard_increasing = false;
          if (!result.violation_at) result.violation_at = phi;
        }
      }
    }
    previous = hazard;
    have_previous = true;
  }
  return result;
}

}  // namespace coopetition
