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

#include "coopetition/price_game.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace coopetition {
namespace {

constexpr double kInvPhi = 0.6180339887498949;  // 1 / golden ratio
constexpr int kMaxGoldenSteps = 200;
constexpr double kUnimodalSlack = 1e-10;

void Require(bool ok, const char* what) {
  if (!ok) throw ValidationError(std::string("price_game: ") + what);
}

// Maximizes f on [a, b]; on equal values keeps the left part.
template <typename F>
std::pair<double, double> GoldenSectionMax(F&& f, double a, double b,
                                           double tol) {
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int step = 0; step < kMaxGoldenSteps && (b - a) > tol; ++step) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? std::make_pair(c, fc) : std::make_pair(d, fd);
}

double Midpoint(const Period2Game& game, Company c) {
  const double lo = game.params.Cost(c);
  return 0.5 * (lo + std::max(lo, game.PriceCap(c)));
}

double OwnDemand(const Period2Game& game, Company own, double own_price,
                 double other_price) {
  const bool is_i = own == Company::kIncumbent;
  const DemandSegments seg = game.Segments(is_i ? own_price : other_price,
                                           is_i ? other_price : own_price);
  return is_i ? seg.incumbent_mass : seg.entrant_mass;
}

}  // namespace

void SolverSettings::Validate() const {
  Require(br_tolerance > 0.0, "br_tolerance must be positive");
  Require(max_br_iterations >= 1, "max_br_iterations must be >= 1");
  Require(damping >= 0.0 && damping < 1.0, "damping must lie in [0, 1)");
  Require(bracket_points >= 2, "bracket_points must be >= 2");
  Require(line_search_tolerance > 0.0, "line_search_tolerance must be positive");
  Require(oracle_grid_n >= 100, "oracle_grid_n must be >= 100");
  Require(deviation_tolerance >= 0.0, "deviation_tolerance must be non-negative");
  Require(fd_step > 0.0, "fd_step must be positive");
  Require(region_tolerance > 0.0, "region_tolerance must be positive");
  Require(max_ascent_iterations >= 1, "max_ascent_iterations must be >= 1");
  Require(ascent_step_fraction > 0.0, "ascent_step_fraction must be positive");
  Require(ascent_step_floor > 0.0, "ascent_step_floor must be positive");
}

BestResponse ComputeBestResponse(const Period2Game& game, Company own,
                                 double other_price,
                                 const SolverSettings& settings) {
  BestResponse out;
  const double lo = game.params.Cost(own);
  const double hi = game.PriceCap(own);
  if (hi <= lo) {
    out.price = lo;
    out.degenerate_domain = true;
    out.zero_demand = true;
    return out;
  }
  auto profit = [&](double p) { return game.Profit(own, p, other_price); };

  const int n = settings.bracket_points;
  int best = 0;
  double best_value = profit(lo);
  std::vector<double> scan(n + 1);
  scan[0] = best_value;
  for (int k = 1; k <= n; ++k) {
    scan[k] = profit(lo + (hi - lo) * k / n);
    if (scan[k] > best_value) {
      best_value = scan[k];
      best = k;
    }
  }
  if (!(best_value > 0.0) && !(OwnDemand(game, own, lo, other_price) > 0.0)) {
    out.price = 0.5 * (lo + hi);
    out.zero_demand = true;
    return out;
  }

  const double a = lo + (hi - lo) * std::max(0, best - 1) / n;
  const double b = lo + (hi - lo) * std::min(n, best + 1) / n;
  const auto [x, fx] =
      GoldenSectionMax(profit, a, b, settings.line_search_tolerance);
  const double scan_price = lo + (hi - lo) * best / n;
  if (fx > best_value || (fx == best_value && x < scan_price)) {
    out.price = x;
    out.profit = fx;
  } else {
    out.price = scan_price;
    out.profit = best_value;
  }
  return out;
}

PriceEquilibrium SolvePriceEquilibrium(
    const Period2Game& game, const SolverSettings& settings,
    std::optional<std::pair<double, double>> warm_start) {
  PriceEquilibrium eq;
  double p_i = warm_start ? warm_start->first : Midpoint(game, Company::kIncumbent);
  double p_e = warm_start ? warm_start->second : Midpoint(game, Company::kEntrant);
  eq.trajectory.emplace_back(p_i, p_e);

  const double keep = settings.damping;
  auto update = [&](Company c) {
    double& price = c == Company::kIncumbent ? p_i : p_e;
    const double other = c == Company::kIncumbent ? p_e : p_i;
    const BestResponse br = ComputeBestResponse(game, c, other, settings);
    const double next = br.zero_demand ? br.price
                                       : (1.0 - keep) * br.price + keep * price;
    const double change = std::abs(next - price);
    price = next;
    (c == Company::kIncumbent ? eq.zero_demand_I : eq.zero_demand_E) =
        br.zero_demand;
    return change;
  };

  const Company first = settings.entrant_first ? Company::kEntrant : Company::kIncumbent;
  for (int k = 1; k <= settings.max_br_iterations; ++k) {
    const double d_first = update(first);
    const double d_second = update(Rival(first));
    eq.iterations = k;
    eq.residual = std::max(d_first, d_second);
    eq.trajectory.emplace_back(p_i, p_e);
    if (d_first < settings.br_tolerance && d_second < settings.br_tolerance) {
      eq.converged = true;
      break;
    }
  }
  if (!eq.converged) {
    std::ostringstream msg;
    msg << "price_game: best-response dynamics did not converge in "
        << settings.max_br_iterations << " iterations (last change "
        << eq.residual << ", theta1 " << game.theta1 << ")";
    throw NonConvergenceError(msg.str(), std::move(eq.trajectory));
  }

  eq.p_I2 = p_i;
  eq.p_E2 = p_e;
  eq.W_I2 = game.Profit(Company::kIncumbent, p_i, p_e);
  eq.W_E2 = game.Profit(Company::kEntrant, p_e, p_i);
  if (settings.verify_equilibria) {
    eq.verdict = oracle::VerifyNoDeviation(game, p_i, p_e, settings.oracle_grid_n,
                                           settings.deviation_tolerance);
  }
  return eq;
}

UnimodalityResult UnimodalityScan(const Period2Game& game, Company own,
                                  double other_price, int grid_n) {
  if (grid_n < 100) {
    throw std::invalid_argument("price_game: unimodality scan needs grid_n >= 100");
  }
  UnimodalityResult out;
  const double lo = game.params.Cost(own);
  const double hi = std::max(lo, game.PriceCap(own));
  double previous = game.Profit(own, lo, other_price);
  bool falling = false;
  for (int k = 1; k < grid_n; ++k) {
    const double p = lo + (hi - lo) * k / (grid_n - 1);
    const double value = game.Profit(own, p, other_price);
    if (value < previous - kUnimodalSlack) {
      falling = true;
    } else if (value > previous + kUnimodalSlack && falling) {
      if (out.violations == 0) out.first_violation_price = p;
      ++out.violations;
    }
    previous = value;
  }
  out.unimodal = out.violations == 0;
  return out;
}

}  // namespace coopetition
