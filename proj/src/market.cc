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

#include "coopetition/market.h"

#include <algorithm>
#include <cmath>

namespace coopetition {
namespace {

void RequirePositive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ValidationError(std::string("market_core: ") + name +
                          " must be positive");
  }
}

void RequireNonNegative(double value, const char* name) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw ValidationError(std::string("market_core: ") + name +
                          " must be non-negative");
  }
}

// Raw segment bounds in the frame where the "near" company sits at 0:
// near serves [0, near_hi], far serves [far_lo, 1].
struct RawBounds {
  double near_hi;
  double far_lo;
};

RawBounds RawSegmentBounds(double near_reach, double far_reach,
                         double indifference) {
  return {std::max(std::min({near_reach, indifference, 1.0}), 0.0),
          std::min(std::max({1.0 - far_reach, indifference, 0.0}), 1.0)};
}

Segment Residual(double lo, double hi, double theta1) {
  Segment s{std::max(lo, theta1), hi};
  if (s.Empty()) s.hi = s.lo;
  return s;
}

}  // namespace

const char* CompanyName(Company c) {
  return c == Company::kIncumbent ? "incumbent" : "entrant";
}

void MarketParams::Validate() const {
  RequirePositive(w_q, "w_q");
  RequirePositive(w_p, "w_p");
  RequirePositive(w_phi, "w_phi");
  RequireNonNegative(c_I, "c_I");
  RequireNonNegative(c_E, "c_E");
}

std::string CollaborationProfile::Label() const {
  return std::string("(") + (r_I ? "1" : "0") + "," + (r_E ? "1" : "0") + ")";
}

void QualityProfile::Validate() const {
  RequireNonNegative(q_I1, "q_I1");
  RequireNonNegative(local.incumbent, "q_local.incumbent");
  RequireNonNegative(local.entrant, "q_local.entrant");
  RequireNonNegative(fl.incumbent, "q_fl.incumbent");
  RequireNonNegative(fl.entrant, "q_fl.entrant");
}

double UserPayoff(const MarketParams& params, const QualityPair& quality,
                  double phi, Purchase decision, double price) {
  switch (decision) {
    case Purchase::kNone:
      return 0.0;
    case Purchase::kIncumbent:
      return params.w_q * quality.incumbent - params.w_phi * phi -
             params.w_p * price;
    case Purchase::kEntrant:
      return params.w_q * quality.entrant - params.w_phi * (1.0 - phi) -
             params.w_p * price;
  }
  return 0.0;
}

double Period1Threshold(const MarketParams& params, double q_I1, double p_I1) {
  return std::clamp((params.w_q * q_I1 - params.w_p * p_I1) / params.w_phi,
                    0.0, 1.0);
}

Purchase Period1Choice(const MarketParams& params, double q_I1, double p_I1,
                       double phi) {
  const QualityPair q{q_I1, 0.0};
  return UserPayoff(params, q, phi, Purchase::kIncumbent, p_I1) >= 0.0
             ? Purchase::kIncumbent
             : Purchase::kNone;
}

Purchase Period2Choice(const MarketParams& params, const QualityPair& quality,
                       double p_I2, double p_E2, double theta1, double phi) {
  // Period-1 buyers (phi <= theta1 with theta1 > 0) never come back.
  if (theta1 > 0.0 && phi <= theta1) return Purchase::kNone;
  const double u_i = UserPayoff(params, quality, phi, Purchase::kIncumbent, p_I2);
  const double u_e = UserPayoff(params, quality, phi, Purchase::kEntrant, p_E2);
  if (u_i >= u_e && u_i >= 0.0) return Purchase::kIncumbent;
  if (u_e >= 0.0) return Purchase::kEntrant;
  return Purchase::kNone;
}

DemandSegments Period2Segments(const MarketParams& params,
                               const PreferenceDistribution& dist,
                               const QualityPair& quality, double p_I2,
                               double p_E2, double theta1) {
  DemandSegments out;
  out.theta1 = theta1;
  // Reach: how far from its own end a company's service still has a
  // non-negative payoff.
  const double reach_i = (params.w_q * quality.incumbent - params.w_p * p_I2) /
                         params.w_phi;
  const double reach_e = (params.w_q * quality.entrant - params.w_p * p_E2) /
                         params.w_phi;
  out.indifference = 0.5 * (1.0 + reach_i - reach_e);

  double i_hi = 0.0;
  double e_lo = 1.0;
  if (reach_i >= reach_e) {
    const RawBounds b = RawSegmentBounds(reach_i, reach_e, out.indifference);
    i_hi = b.near_hi;
    e_lo = b.far_lo;
  } else {
    // Same bounds with the roles swapped, read in the reflected frame.
    out.mirrored = true;
    const RawBounds b =
        RawSegmentBounds(reach_e, reach_i, 1.0 - out.indifference);
    e_lo = 1.0 - b.near_hi;
    i_hi = 1.0 - b.far_lo;
  }
  out.incumbent = Residual(0.0, i_hi, theta1);
  out.entrant = Residual(e_lo, 1.0, theta1);
  out.incumbent_mass = dist.Mass(out.incumbent.lo, out.incumbent.hi);
  out.entrant_mass = dist.Mass(out.entrant.lo, out.entrant.hi);
  return out;
}

ProfitBreakdown Profits(const Market& market, const CollaborationProfile& r,
                        const PriceProfile& prices) {
  const MarketParams& params = market.params;
  const double theta1 =
      Period1Threshold(params, market.quality.q_I1, prices.p_I1);
  const DemandSegments seg =
      Period2Segments(params, market.dist, market.quality.Period2(r),
                      prices.p_I2, prices.p_E2, theta1);
  ProfitBreakdown out;
  out.W_I1 = (prices.p_I1 - params.c_I) * market.dist.Cdf(theta1);
  out.W_I2 = (prices.p_I2 - params.c_I) * seg.incumbent_mass;
  out.W_E2 = (prices.p_E2 - params.c_E) * seg.entrant_mass;
  return out;
}

Period2Game Period2Game::Make(const Market& market,
                              const CollaborationProfile& r, double p_I1) {
  return Period2Game{
      market.params, market.dist, market.quality.Period2(r),
      Period1Threshold(market.params, market.quality.q_I1, p_I1)};
}

double Period2Game::Profit(Company own, double own_price,
                           double other_price) const {
  const bool is_i = own == Company::kIncumbent;
  const DemandSegments seg =
      Segments(is_i ? own_price : other_price, is_i ? other_price : own_price);
  const double mass = is_i ? seg.incumbent_mass : seg.entrant_mass;
  return (own_price - params.Cost(own)) * mass;
}

}  // namespace coopetition
