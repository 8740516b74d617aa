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

// Scenario files (JSON) and accuracy fixture tables (CSV).
//
// Scenario schema, every section an object:
//   params        w_q, w_p, w_phi, c_I, c_E                 (all optional)
//   distribution  kind: uniform | truncated_gaussian(mean, sd)
//                 | truncated_gamma(shape, scale)
//                 | mixture(weight, components: [gaussian, gaussian])
//   qualities     q_I1, local {incumbent, entrant}, fl {incumbent, entrant}
//   settings      any SolverSettings field by name         (optional)
//   period1       mode: optimize | corner | fixed (+ price) (optional)
//   metadata      string labels, never read by the solver  (optional)
//   reference     reference profit table to compare against (optional):
//                 label, collaborate {incumbent, entrant},
//                 local {incumbent, entrant}, r_star "(1,1)"|"(0,0)",
//                 tolerance

#ifndef COOPETITION_SCENARIO_H_
#define COOPETITION_SCENARIO_H_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "coopetition/market.h"
#include "coopetition/price_game.h"

namespace coopetition {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Period1Mode { kOptimize, kCorner, kFixed };

struct Period1Policy {
  Period1Mode mode = Period1Mode::kOptimize;
  double price = 0.0;  // kFixed only
};

struct ReferenceProfits {
  std::string label;
  QualityPair collaborate;  // (W_I2, W_E2) under (1,1)
  QualityPair local;        // (W_I2, W_E2) under (0,0)
  std::optional<bool> collaborates;
  double tolerance = 1e-3;
};

struct Scenario {
  Market market;
  SolverSettings settings;
  Period1Policy period1;
  std::map<std::string, std::string> metadata;
  std::optional<ReferenceProfits> reference;
};

// Throws ParseError (with position or field name) for malformed input and
// ValidationError for values that break a model invariant.
Scenario ParseScenario(const std::string& text,
                       const std::string& source = "<string>");
Scenario LoadScenario(const std::string& path);

// Same as ParseScenario but the qualities section may be absent. Used for
// sweep parameter files, whose qualities come from fixtures.
Scenario ParseScenarioTemplate(const std::string& text,
                               const std::string& source = "<string>");
Scenario LoadScenarioTemplate(const std::string& path);

std::string SerializeScenario(const Scenario& scenario);

nlohmann::ordered_json DistributionToJson(const PreferenceDistribution& dist);
PreferenceDistribution DistributionFromJson(const nlohmann::json& j);
nlohmann::ordered_json SettingsToJson(const SolverSettings& settings);
void ApplySettingsJson(const nlohmann::json& j, SolverSettings& settings);

// One row of the model-accuracy tables. Accuracies are kept in percent as
// printed; conversion to qualities happens in ScenarioFromFixture.
struct AccuracyFixture {
  std::string dataset;
  std::string sweep_key;  // "<kind>=<value>", e.g. "beta=0.1" or "D_E=3k"
  double i_local = 0.0;
  double e_local = 0.0;
  double fedavg = 0.0;
  double i_local_sd = 0.0;
  double e_local_sd = 0.0;
  double fedavg_sd = 0.0;
  // Collaboration outcome reported for this cell, when known.
  std::optional<bool> reported_collab;

  std::string SweepKind() const;
  std::string SweepValue() const;
};

// Header row: dataset,sweep_key,i_local,e_local,fedavg,i_local_sd,
// e_local_sd,fedavg_sd,reported_collab. Lines starting with '#' and blank
// lines are skipped; reported_collab may be empty.
std::vector<AccuracyFixture> ParseAccuracyFixture(
    const std::string& text, const std::string& source = "<string>");
std::vector<AccuracyFixture> LoadAccuracyFixture(const std::string& path);

Scenario ScenarioFromFixture(const AccuracyFixture& fixture,
                             const MarketParams& params,
                             const PreferenceDistribution& dist,
                             const SolverSettings& settings);

std::string ReadFile(const std::string& path);

}  // namespace coopetition

#endif  // COOPETITION_SCENARIO_H_
