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

// Report serialization. All output is a pure function of its input, so
// identical runs give byte-identical files.

#ifndef COOPETITION_REPORT_H_
#define COOPETITION_REPORT_H_

#include <string>
#include <vector>

#include "json.hpp"

#include "coopetition/distributions.h"
#include "coopetition/oracle.h"
#include "coopetition/sweep.h"

namespace coopetition {

nlohmann::ordered_json VerdictToJson(const oracle::OracleVerdict& verdict);
nlohmann::ordered_json EquilibriumToJson(const PriceEquilibrium& eq);
nlohmann::ordered_json GridSetToJson(const oracle::GridEquilibriumSet& set);
nlohmann::ordered_json ReportToJson(const EquilibriumReport& report);
nlohmann::ordered_json SweepToJson(const SweepReport& report);
nlohmann::ordered_json HazardCheckToJson(const HazardCheckResult& check);

// Sweep kinds in first-appearance order ("beta", "D_E", ...).
std::vector<std::string> SweepKinds(const SweepReport& report);

// Wide table for one sweep kind: one row per dataset, one column per sweep
// value; entries 1 (collaborate), 0 (do not) or "error".
std::string CollaborationTableCsv(const SweepReport& report,
                                  const std::string& kind);

// Period-1 and period-2 equilibrium prices along one sweep kind, long
// format: dataset,x,p_I1,p_I2,p_E2,theta1,collaborate. Failed cells are
// skipped.
std::string PriceSeriesCsv(const SweepReport& report, const std::string& kind);

// Writes `text` to `path`, throwing std::runtime_error on failure.
void WriteTextFile(const std::string& path, const std::string& text);

// Human-readable summaries for standard output.
std::string SummarizeReport(const EquilibriumReport& report);
std::string SummarizeSweep(const SweepReport& report);

}  // namespace coopetition

#endif  // COOPETITION_REPORT_H_
