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

#include "coopetition/oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace coopetition::oracle {
namespace {

constexpr double kGridNashSlack = 1e-12;
constexpr int kCoarseTarget = 200;
constexpr int kMaxGridIterations = 400;

// Index of the largest value; ties go to the lowest index.
std::size_t ArgMax(const std::vector<double>& values) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (values[k] > values[best]) best = k;
  }
  return best;
}

std::vector<int> CoarseIndices(int n) {
  const int stride = std::max(1, (n - 1) / (kCoarseTarget - 1));
  std::vector<int> idx;
  for (int k = 0; k < n; k += stride) idx.push_back(k);
  if (idx.back() != n - 1) idx.push_back(n - 1);
  return idx;
}

void RequireGrid(int grid_n) {
  if (grid_n < 2) throw std::invalid_argument("oracle: grid_n must be >= 2");
}

}  // namespace

std::vector<double> PriceGrid(const Period2Game& game, Company c, int grid_n) {
  RequireGrid(grid_n);
  const double lo = game.params.Cost(c);
  const double hi = std::max(lo, game.PriceCap(c));
  std::vector<double> grid(grid_n);
  for (int k = 0; k < grid_n; ++k) {
    grid[k] = lo + (hi - lo) * k / (grid_n - 1);
  }
  return grid;
}

OracleVerdict VerifyNoDeviation(const Period2Game& game, double p_I2,
                                double p_E2, int grid_n, double tol) {
  OracleVerdict verdict;
  verdict.grid_n = grid_n;
  verdict.tolerance = tol;
  verdict.worst_deviation = -std::numeric_limits<double>::infinity();
  for (Company c : {Company::kIncumbent, Company::kEntrant}) {
    const bool is_i = c == Company::kIncumbent;
    const double own = is_i ? p_I2 : p_E2;
    const double other = is_i ? p_E2 : p_I2;
    const double base = game.Profit(c, own, other);
    for (double dev : PriceGrid(game, c, grid_n)) {
      const double gain = game.Profit(c, dev, other) - base;
      if (gain > verdict.worst_deviation) {
        verdict.worst_deviation = gain;
        verdict.worst_company = c;
        verdict.worst_location = dev;
      }
    }
  }
  verdict.passed = verdict.worst_deviation <= tol;
  return verdict;
}

GridEquilibriumSet GridPriceEquilibrium(const Period2Game& game, int grid_n,
                                        std::size_t max_pairs) {
  RequireGrid(grid_n);
  const int n = grid_n;
  const std::vector<double> gi = PriceGrid(game, Company::kIncumbent, n);
  const std::vector<double> ge = PriceGrid(game, Company::kEntrant, n);
  auto w_i = [&](int i, int j) {
    return game.Profit(Company::kIncumbent, gi[i], ge[j]);
  };
  auto w_e = [&](int i, int j) {
    return game.Profit(Company::kEntrant, ge[j], gi[i]);
  };

  GridEquilibriumSet out;
  out.grid_n = n;

  // Coarse pass.
  const std::vector<int> cs = CoarseIndices(n);
  const std::size_t m = cs.size();
  std::vector<double> ci(m * m), ce(m * m);  // [a * m + b] = (I idx a, E idx b)
  bool any_profit = false;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      ci[a * m + b] = w_i(cs[a], cs[b]);
      ce[a * m + b] = w_e(cs[a], cs[b]);
      if (ci[a * m + b] != 0.0 || ce[a * m + b] != 0.0) any_profit = true;
    }
  }
  if (!any_profit) {
    out.degenerate = true;
    out.count = static_cast<std::size_t>(n) * n;
    for (int i = 0; i < n && out.pairs.size() < max_pairs; ++i) {
      for (int j = 0; j < n && out.pairs.size() < max_pairs; ++j) {
        out.pairs.emplace_back(gi[i], ge[j]);
      }
    }
    return out;
  }

  // Coarse candidates: within two coarse steps' worth of profit variation
  // of the coarse best response.
  std::vector<char> window(static_cast<std::size_t>(n) * n, 0);
  const int stride = m > 1 ? cs[1] - cs[0] : 1;
  bool any_window = false;
  std::vector<double> best_i(m, 0.0), slack_i(m, 0.0);
  std::vector<double> best_e(m, 0.0), slack_e(m, 0.0);
  for (std::size_t b = 0; b < m; ++b) {
    best_i[b] = ci[b];
    for (std::size_t a = 0; a < m; ++a) {
      best_i[b] = std::max(best_i[b], ci[a * m + b]);
      if (a > 0) {
        slack_i[b] = std::max(slack_i[b],
                              std::abs(ci[a * m + b] - ci[(a - 1) * m + b]));
      }
    }
  }
  for (std::size_t a = 0; a < m; ++a) {
    best_e[a] = ce[a * m];
    for (std::size_t b = 0; b < m; ++b) {
      best_e[a] = std::max(best_e[a], ce[a * m + b]);
      if (b > 0) {
        slack_e[a] = std::max(slack_e[a],
                              std::abs(ce[a * m + b] - ce[a * m + b - 1]));
      }
    }
  }
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (ci[a * m + b] < best_i[b] - 2.0 * slack_i[b] - kGridNashSlack) continue;
      if (ce[a * m + b] < best_e[a] - 2.0 * slack_e[a] - kGridNashSlack) continue;
      any_window = true;
      const int i0 = std::max(0, cs[a] - stride), i1 = std::min(n - 1, cs[a] + stride);
      const int j0 = std::max(0, cs[b] - stride), j1 = std::min(n - 1, cs[b] + stride);
      for (int i = i0; i <= i1; ++i) {
        std::fill(window.begin() + static_cast<std::size_t>(i) * n + j0,
                  window.begin() + static_cast<std::size_t>(i) * n + j1 + 1, 1);
      }
    }
  }

  auto enumerate = [&](bool full) {
    std::vector<double> row_best(n, std::nan("")), col_best(n, std::nan(""));
    auto best_vs_e = [&](int j) {
      if (std::isnan(row_best[j])) {
        double best = w_i(0, j);
        for (int i = 1; i < n; ++i) best = std::max(best, w_i(i, j));
        row_best[j] = best;
      }
      return row_best[j];
    };
    auto best_vs_i = [&](int i) {
      if (std::isnan(col_best[i])) {
        double best = w_e(i, 0);
        for (int j = 1; j < n; ++j) best = std::max(best, w_e(i, j));
        col_best[i] = best;
      }
      return col_best[i];
    };
    std::size_t count = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (!full && !window[static_cast<std::size_t>(i) * n + j]) continue;
        const double wi = w_i(i, j);
        if (wi < best_vs_e(j) - kGridNashSlack) continue;
        const double we = w_e(i, j);
        if (we < best_vs_i(i) - kGridNashSlack) continue;
        if (count == 0) {
          out.W_I2 = wi;
          out.W_E2 = we;
        }
        ++count;
        if (out.pairs.size() < max_pairs) out.pairs.emplace_back(gi[i], ge[j]);
      }
    }
    return count;
  };

  out.count = any_window ? enumerate(false) : 0;
  if (out.count == 0) {
    out.full_enumeration = true;
    out.pairs.clear();
    out.count = enumerate(true);
  }
  return out;
}

GridIterationResult GridBestResponseIteration(const Period2Game& game,
                                              int price_grid_n) {
  const std::vector<double> gi = PriceGrid(game, Company::kIncumbent, price_grid_n);
  const std::vector<double> ge = PriceGrid(game, Company::kEntrant, price_grid_n);
  std::size_t i = gi.size() / 2;
  std::size_t j = ge.size() / 2;
  std::vector<double> values(price_grid_n);

  // A flat-zero row keeps the current index so empty markets stay at the
  // grid midpoint.
  auto respond = [&](Company c, std::size_t current) {
    const bool is_i = c == Company::kIncumbent;
    const std::vector<double>& own = is_i ? gi : ge;
    for (std::size_t k = 0; k < own.size(); ++k) {
      values[k] = is_i ? game.Profit(c, own[k], ge[j]) : game.Profit(c, own[k], gi[i]);
    }
    const std::size_t best = ArgMax(values);
    return values[best] > 0.0 ? best : current;
  };

  GridIterationResult result;
  for (int iter = 0; iter < kMaxGridIterations; ++iter) {
    const std::size_t next_i = respond(Company::kIncumbent, i);
    const bool i_same = next_i == i;
    i = next_i;
    const std::size_t next_j = respond(Company::kEntrant, j);
    const bool j_same = next_j == j;
    j = next_j;
    if (i_same && j_same) {
      result.converged = true;
      break;
    }
  }
  result.p_I2 = gi[i];
  result.p_E2 = ge[j];
  result.W_I2 = game.Profit(Company::kIncumbent, gi[i], ge[j]);
  result.W_E2 = game.Profit(Company::kEntrant, ge[j], gi[i]);
  return result;
}

GridPeriod1Optimum GridPeriod1(const Market& market, int grid_n,
                               int price_grid_n) {
  RequireGrid(grid_n);
  const MarketParams& params = market.params;
  const double corner = params.w_q * market.quality.q_I1 / params.w_p;
  const double span = std::max(1.01 * corner, 0.01);

  GridPeriod1Optimum best;
  best.grid_n = grid_n;
  best.cell = span / (grid_n - 1);
  best.W_I = -std::numeric_limits<double>::infinity();

  double cached_theta = -1.0;
  GridIterationResult fl, local;
  for (int k = 0; k < grid_n; ++k) {
    const double p = span * k / (grid_n - 1);
    const double theta1 = Period1Threshold(params, market.quality.q_I1, p);
    if (theta1 != cached_theta) {
      Period2Game g_fl{params, market.dist, market.quality.fl, theta1};
      Period2Game g_local{params, market.dist, market.quality.local, theta1};
      fl = GridBestResponseIteration(g_fl, price_grid_n);
      local = GridBestResponseIteration(g_local, price_grid_n);
      cached_theta = theta1;
      if (!fl.converged || !local.converged) ++best.unconverged_cells;
    }
    const bool collaborate = fl.W_I2 >= local.W_I2 && fl.W_E2 >= local.W_E2;
    const GridIterationResult& chosen = collaborate ? fl : local;
    const double w = (p - params.c_I) * market.dist.Cdf(theta1) + chosen.W_I2;
    if (w > best.W_I) {
      best.W_I = w;
      best.p_I1 = p;
      best.theta1 = theta1;
      best.collaborate = collaborate;
      best.p_I2 = chosen.p_I2;
      best.p_E2 = chosen.p_E2;
    }
  }
  return best;
}

}  // namespace coopetition::oracle
