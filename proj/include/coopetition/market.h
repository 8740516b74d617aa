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

// Demand model of the two-period incumbent/entrant market. Users sit on
// [0, 1]; the incumbent I is at 0 and the entrant E at 1. Period 1 has only
// I. Users who buy in period 1 leave the market, so period 2 is played over
// the residual market (theta1, 1].

#ifndef COOPETITION_MARKET_H_
#define COOPETITION_MARKET_H_

#include <stdexcept>
#include <string>

#include "coopetition/distributions.h"

namespace coopetition {

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Company { kIncumbent, kEntrant };

inline Company Rival(Company c) {
  return c == Company::kIncumbent ? Company::kEntrant : Company::kIncumbent;
}
const char* CompanyName(Company c);

struct MarketParams {
  double w_q = 1.0;    // utility per unit of quality
  double w_p = 1.0;    // disutility per unit of price
  double w_phi = 1.0;  // misalignment per unit of distance
  double c_I = 0.0;
  double c_E = 0.0;

  double Cost(Company c) const { return c == Company::kIncumbent ? c_I : c_E; }
  // Throws ValidationError naming the violated constraint.
  void Validate() const;
};

struct QualityPair {
  double incumbent = 0.0;
  double entrant = 0.0;

  double of(Company c) const {
    return c == Company::kIncumbent ? incumbent : entrant;
  }
};

struct CollaborationProfile {
  bool r_I = false;
  bool r_E = false;

  // FL only happens when both opt in.
  bool Effective() const { return r_I && r_E; }
  std::string Label() const;
};

// Qualities on the fraction scale. Period-2 qualities depend only on
// whether collaboration is effective: mixed profiles use the local pair.
struct QualityProfile {
  double q_I1 = 0.0;
  QualityPair local;
  QualityPair fl;

  const QualityPair& Period2(const CollaborationProfile& r) const {
    return r.Effective() ? fl : local;
  }
  void Validate() const;
};

struct PriceProfile {
  double p_I1 = 0.0;
  double p_I2 = 0.0;
  double p_E2 = 0.0;
};

enum class Purchase { kNone, kIncumbent, kEntrant };

// Closed interval [lo, hi]; empty when hi <= lo.
struct Segment {
  double lo = 0.0;
  double hi = 0.0;

  bool Empty() const { return !(hi > lo); }
  double Length() const { return Empty() ? 0.0 : hi - lo; }
};

struct DemandSegments {
  double theta1 = 0.0;
  double indifference = 0.5;  // phi*, where u_I = u_E
  bool mirrored = false;      // E had the larger net utility
  Segment incumbent;          // period-2 buyers from I, inside [theta1, 1]
  Segment entrant;            // period-2 buyers from E, inside [theta1, 1]
  double incumbent_mass = 0.0;
  double entrant_mass = 0.0;
};

struct ProfitBreakdown {
  double W_I1 = 0.0;
  double W_I2 = 0.0;
  double W_E2 = 0.0;

  double W_I() const { return W_I1 + W_I2; }
};

// Payoff of a user at phi choosing `decision` at the quoted price. `quality`
// holds both companies' qualities for the period being evaluated.
double UserPayoff(const MarketParams& params, const QualityPair& quality,
                  double phi, Purchase decision, double price);

// Users with phi <= theta1 buy from I in period 1.
double Period1Threshold(const MarketParams& params, double q_I1, double p_I1);

// Brute-force decisions of a single user; ties go to buying, then to I.
Purchase Period1Choice(const MarketParams& params, double q_I1, double p_I1,
                       double phi);
Purchase Period2Choice(const MarketParams& params, const QualityPair& quality,
                       double p_I2, double p_E2, double theta1, double phi);

DemandSegments Period2Segments(const MarketParams& params,
                               const PreferenceDistribution& dist,
                               const QualityPair& quality, double p_I2,
                               double p_E2, double theta1);

// Everything fixed in a model instance except prices and period-1 choice.
struct Market {
  MarketParams params;
  PreferenceDistribution dist;
  QualityProfile quality;

  void Validate() const {
    params.Validate();
    quality.Validate();
  }
};

ProfitBreakdown Profits(const Market& market, const CollaborationProfile& r,
                        const PriceProfile& prices);

// The period-2 price game at a fixed residual market and quality pair.
struct Period2Game {
  MarketParams params;
  PreferenceDistribution dist;
  QualityPair quality;
  double theta1 = 0.0;

  static Period2Game Make(const Market& market, const CollaborationProfile& r,
                          double p_I1);

  // Price above which the company sells to nobody: w_q q / w_p.
  double PriceCap(Company c) const { return params.w_q * quality.of(c) / params.w_p; }
  double Profit(Company own, double own_price, double other_price) const;
  DemandSegments Segments(double p_I2, double p_E2) const {
    return Period2Segments(params, dist, quality, p_I2, p_E2, theta1);
  }
};

}  // namespace coopetition

#endif  // COOPETITION_MARKET_H_
