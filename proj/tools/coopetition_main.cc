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

// coopetition: solve scenarios, sweep fixture tables, run the grid oracle
// and check preference distributions.
//
// Exit codes: 0 ok, 1 invalid input or failed distribution check,
// 2 solver did not converge, 3 oracle check failed.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "coopetition/distributions.h"
#include "coopetition/oracle.h"
#include "coopetition/report.h"
#include "coopetition/scenario.h"
#include "coopetition/sweep.h"

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace coopetition;

enum ExitCode { kOk = 0, kInvalid = 1, kNonConvergence = 2, kOracleFailure = 3 };

struct CommonFlags {
  std::string out = ".";
  std::optional<int> grid;
  std::optional<double> eps;
  std::optional<double> tol;
  std::optional<double> damping;
  int workers = 1;
  bool no_timestamp = false;
  bool verbose = false;

  void Apply(SolverSettings& s) const {
    if (grid) s.oracle_grid_n = *grid;
    if (eps) s.br_tolerance = *eps;
    if (tol) s.deviation_tolerance = *tol;
    if (damping) s.damping = *damping;
    s.Validate();
  }
};

std::string Timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

// Writes `body` under out/name, with a leading timestamp unless disabled.
std::string WriteJson(const CommonFlags& flags, const std::string& name,
                      const ordered_json& body) {
  fs::create_directories(flags.out);
  ordered_json doc;
  if (!flags.no_timestamp) doc["generated_at"] = Timestamp();
  for (const auto& [k, v] : body.items()) doc[k] = v;
  const std::string path = (fs::path(flags.out) / name).string();
  WriteTextFile(path, doc.dump(2) + "\n");
  if (flags.verbose) std::cout << doc.dump(2) << '\n';
  return path;
}

int RunSolve(const CommonFlags& flags, const std::string& path, bool grid_period1) {
  Scenario s = LoadScenario(path);
  flags.Apply(s.settings);
  SolveOptions options;
  options.grid_period1 = grid_period1;
  const EquilibriumReport r = SolveScenario(s, options);
  ordered_json body;
  body["scenario"] = ordered_json::parse(SerializeScenario(s));
  body["equilibrium"] = ReportToJson(r);
  const std::string written = WriteJson(flags, "report.json", body);
  std::cout << SummarizeReport(r) << "wrote " << written << '\n';
  return r.verified() ? kOk : kOracleFailure;
}

int RunSweepCommand(const CommonFlags& flags, const std::string& fixture_path,
                    const std::string& params_path) {
  const std::vector<AccuracyFixture> fixtures = LoadAccuracyFixture(fixture_path);
  Scenario shared = LoadScenarioTemplate(params_path);
  flags.Apply(shared.settings);
  SweepOptions options;
  options.workers = flags.workers;
  const SweepReport report = RunSweep(fixtures, shared.market.params,
                                      shared.market.dist, shared.settings, options);

  ordered_json body;
  body["settings"] = SettingsToJson(shared.settings);
  body["distribution"] = DistributionToJson(shared.market.dist);
  const ordered_json sweep_json = SweepToJson(report);
  for (const auto& [k, v] : sweep_json.items()) body[k] = v;
  std::vector<std::string> written{WriteJson(flags, "sweep_report.json", body)};
  for (const std::string& kind : SweepKinds(report)) {
    const fs::path table = fs::path(flags.out) / ("collaboration_" + kind + ".csv");
    const fs::path series = fs::path(flags.out) / ("prices_" + kind + ".csv");
    WriteTextFile(table.string(), CollaborationTableCsv(report, kind));
    WriteTextFile(series.string(), PriceSeriesCsv(report, kind));
    written.push_back(table.string());
    written.push_back(series.string());
  }
  std::cout << SummarizeSweep(report);
  for (const std::string& w : written) std::cout << "wrote " << w << '\n';

  bool non_convergence = false, invalid = false;
  for (const SweepCell& c : report.cells) {
    non_convergence |= c.error_kind == "non_convergence";
    invalid |= !c.ok() && c.error_kind != "non_convergence";
  }
  if (invalid) return kInvalid;
  if (non_convergence) return kNonConvergence;
  return report.unverified() > 0 ? kOracleFailure : kOk;
}

int RunOracleCheck(const CommonFlags& flags, const std::string& path) {
  Scenario s = LoadScenario(path);
  flags.Apply(s.settings);
  const EquilibriumReport r = SolveScenario(s);
  const int n = s.settings.oracle_grid_n;
  const OracleProfitTable table = BuildOracleProfitTable(s.market, r.p_I1, n);

  ordered_json body;
  body["p_I1"] = r.p_I1;
  body["theta1"] = r.theta1;
  body["grid_n"] = n;
  body["solver"] = {{"(1,1)", EquilibriumToJson(r.outcome.collaborate)},
                    {"(0,0)", EquilibriumToJson(r.outcome.local)},
                    {"r_star", r.outcome.decision.r_star.Label()}};
  body["oracle"] = {{"(1,1)", GridSetToJson(table.collaborate)},
                    {"(0,0)", GridSetToJson(table.local)},
                    {"r_star", table.collaborates ? "(1,1)" : "(0,0)"}};
  body["verified"] = r.verified();
  const std::string written = WriteJson(flags, "oracle_report.json", body);

  std::cout << "p_I1 = " << r.p_I1 << "  theta1 = " << r.theta1 << "  grid " << n << '\n';
  for (const auto& [label, eq, set] :
       {std::tuple{"(1,1)", &r.outcome.collaborate, &table.collaborate},
        std::tuple{"(0,0)", &r.outcome.local, &table.local}}) {
    std::cout << "  " << label << ": solver (" << eq->p_I2 << ", " << eq->p_E2
              << ") no-deviation " << (eq->verified() ? "pass" : "FAIL")
              << " (worst gain " << eq->verdict->worst_deviation << "); grid NE count "
              << set->count << ", first (" << set->W_I2 << ", " << set->W_E2 << ")\n";
  }
  std::cout << "wrote " << written << '\n';
  return r.verified() ? kOk : kOracleFailure;
}

int RunCheckDist(const CommonFlags& flags, const std::string& descriptor, int points) {
  const std::string text =
      fs::exists(descriptor) ? ReadFile(descriptor) : descriptor;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("scenario_io: distribution descriptor: ") + e.what());
  }
  const PreferenceDistribution dist = DistributionFromJson(j);
  const HazardCheckResult check = CheckHazardMonotone(dist, points);
  ordered_json body{{"distribution", DistributionToJson(dist)},
                    {"hazard_check", HazardCheckToJson(check)}};
  const std::string written = WriteJson(flags, "check_dist.json", body);
  std::cout << dist.Name() << ": ";
  if (check.ok()) {
    std::cout << "density positive, hazard rate non-decreasing on " << check.grid_points
              << " points\n";
  } else {
    std::cout << "distributions: increasing-hazard condition violated";
    if (!check.density_positive) std::cout << " (density not positive)";
    if (check.violation_at) std::cout << " at phi = " << *check.violation_at;
    std::cout << ", worst relative drop " << check.worst_relative_drop << '\n';
  }
  std::cout << "wrote " << written << '\n';
  return check.ok() ? kOk : kInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-period incumbent/entrant market solver"};
  app.require_subcommand(1, 1);

  CommonFlags flags;
  app.add_option("--out", flags.out, "Output directory")->capture_default_str();
  app.add_option("--grid", flags.grid, "Oracle price grid size")->check(CLI::Range(2, 1 << 20));
  app.add_option("--eps", flags.eps, "Best-response convergence tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol", flags.tol, "Oracle deviation tolerance")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--damping", flags.damping, "Best-response damping in [0, 1)")
      ->check(CLI::Range(0.0, 0.999999));
  app.add_option("--workers", flags.workers, "Sweep worker threads")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();
  app.add_flag("--no-timestamp", flags.no_timestamp, "Omit the timestamp from reports");
  app.add_flag("-v,--verbose", flags.verbose, "Print the full JSON report");

  std::string scenario_path, fixture_path, params_path, descriptor;
  bool grid_period1 = false;
  int hazard_points = 2000;

  CLI::App* solve = app.add_subcommand("solve", "Solve one scenario");
  solve->add_option("scenario", scenario_path)->required()->check(CLI::ExistingFile);
  solve->add_flag("--grid-period1", grid_period1,
                  "Also run the exhaustive period-1 price scan");

  CLI::App* sweep = app.add_subcommand("sweep", "Solve every row of a fixture table");
  sweep->add_option("fixture", fixture_path)->required()->check(CLI::ExistingFile);
  sweep->add_option("params", params_path)->required()->check(CLI::ExistingFile);

  CLI::App* oracle_check =
      app.add_subcommand("oracle-check", "Compare solver output with grid equilibria");
  oracle_check->add_option("scenario", scenario_path)->required()->check(CLI::ExistingFile);

  CLI::App* check_dist =
      app.add_subcommand("check-dist", "Check the increasing-hazard condition");
  check_dist->add_option("descriptor", descriptor, "JSON file or inline JSON")->required();
  check_dist->add_option("--points", hazard_points, "Grid points")
      ->check(CLI::Range(10, 1 << 22))
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    int code = kOk;
    if (*solve) {
      code = RunSolve(flags, scenario_path, grid_period1);
    } else if (*sweep) {
      code = RunSweepCommand(flags, fixture_path, params_path);
    } else if (*oracle_check) {
      code = RunOracleCheck(flags, scenario_path);
    } else {
      code = RunCheckDist(flags, descriptor, hazard_points);
    }
    return code;
  } catch (const NonConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const std::invalid_argument& e) {  // ValidationError and friends
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
}
