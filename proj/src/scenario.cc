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

#include "coopetition/scenario.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace coopetition {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

const char* const kFixtureHeader[] = {
    "dataset",    "sweep_key",  "i_local",   "e_local",        "fedavg",
    "i_local_sd", "e_local_sd", "fedavg_sd", "reported_collab"};
constexpr std::size_t kFixtureColumns = std::size(kFixtureHeader);

[[noreturn]] void Fail(const std::string& source, const std::string& what) {
  throw ParseError("scenario_io: " + source + ": " + what);
}

void RejectUnknown(const json& obj, std::initializer_list<const char*> allowed,
                   const std::string& source, const std::string& section) {
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items()) {
    if (!ok.count(key)) Fail(source, "unknown field " + section + key);
  }
}

const json& RequireObject(const json& parent, const char* key,
                          const std::string& path) {
  if (!parent.contains(key)) {
    throw ValidationError("scenario_io: " + path + key + " is required");
  }
  const json& v = parent.at(key);
  if (!v.is_object()) {
    throw ParseError("scenario_io: " + path + key + " must be an object");
  }
  return v;
}

double RequireNumber(const json& obj, const char* key, const std::string& path) {
  if (!obj.contains(key)) {
    throw ValidationError("scenario_io: " + path + key + " is required");
  }
  const json& v = obj.at(key);
  if (!v.is_number()) {
    throw ParseError("scenario_io: " + path + key + " must be a number");
  }
  return v.get<double>();
}

double NumberOr(const json& obj, const char* key, double fallback,
                const std::string& path) {
  return obj.contains(key) ? RequireNumber(obj, key, path) : fallback;
}

QualityPair ParsePair(const json& parent, const char* key, const std::string& path) {
  const json& obj = RequireObject(parent, key, path);
  const std::string sub = path + key + ".";
  RejectUnknown(obj, {"incumbent", "entrant"}, "<" + path + key + ">", sub);
  return {RequireNumber(obj, "incumbent", sub), RequireNumber(obj, "entrant", sub)};
}

ordered_json PairToJson(const QualityPair& p) {
  return ordered_json{{"incumbent", p.incumbent}, {"entrant", p.entrant}};
}

TruncatedGaussianLaw GaussianFromJson(const json& j, const std::string& path) {
  return {RequireNumber(j, "mean", path), RequireNumber(j, "sd", path)};
}

ordered_json GaussianToJson(const TruncatedGaussianLaw& g) {
  return ordered_json{{"kind", "truncated_gaussian"}, {"mean", g.mean}, {"sd", g.sd}};
}

json ParseJson(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    Fail(source, e.what());
  }
}

Scenario FromJson(const json& root, const std::string& source,
                  bool require_qualities) {
  if (!root.is_object()) Fail(source, "top level must be an object");
  RejectUnknown(root,
                {"params", "distribution", "qualities", "settings", "period1",
                 "metadata", "reference"},
                source, "");
  Scenario s;
  try {
    if (root.contains("params")) {
      const json& p = RequireObject(root, "params", "");
      RejectUnknown(p, {"w_q", "w_p", "w_phi", "c_I", "c_E"}, source, "params.");
      MarketParams& mp = s.market.params;
      mp.w_q = NumberOr(p, "w_q", mp.w_q, "params.");
      mp.w_p = NumberOr(p, "w_p", mp.w_p, "params.");
      mp.w_phi = NumberOr(p, "w_phi", mp.w_phi, "params.");
      mp.c_I = NumberOr(p, "c_I", mp.c_I, "params.");
      mp.c_E = NumberOr(p, "c_E", mp.c_E, "params.");
    }
    if (root.contains("distribution")) {
      s.market.dist = DistributionFromJson(RequireObject(root, "distribution", ""));
    }
    if (require_qualities || root.contains("qualities")) {
      const json& q = RequireObject(root, "qualities", "");
      RejectUnknown(q, {"q_I1", "local", "fl"}, source, "qualities.");
      s.market.quality.q_I1 = RequireNumber(q, "q_I1", "qualities.");
      s.market.quality.local = ParsePair(q, "local", "qualities.");
      s.market.quality.fl = ParsePair(q, "fl", "qualities.");
    }
    if (root.contains("settings")) {
      ApplySettingsJson(RequireObject(root, "settings", ""), s.settings);
    }
    if (root.contains("period1")) {
      const json& p = RequireObject(root, "period1", "");
      RejectUnknown(p, {"mode", "price"}, source, "period1.");
      const std::string mode = p.value("mode", std::string("optimize"));
      if (mode == "optimize") {
        s.period1.mode = Period1Mode::kOptimize;
      } else if (mode == "corner") {
        s.period1.mode = Period1Mode::kCorner;
      } else if (mode == "fixed") {
        s.period1.mode = Period1Mode::kFixed;
        s.period1.price = RequireNumber(p, "price", "period1.");
        if (!(s.period1.price >= 0.0)) {
          throw ValidationError("scenario_io: period1.price must be non-negative");
        }
      } else {
        Fail(source, "period1.mode must be optimize, corner or fixed");
      }
    }
    if (root.contains("metadata")) {
      for (const auto& [key, value] : RequireObject(root, "metadata", "").items()) {
        s.metadata[key] = value.is_string() ? value.get<std::string>() : value.dump();
      }
    }
    if (root.contains("reference")) {
      const json& r = RequireObject(root, "reference", "");
      RejectUnknown(r, {"label", "collaborate", "local", "r_star", "tolerance"},
                    source, "reference.");
      ReferenceProfits ref;
      ref.label = r.value("label", std::string());
      ref.collaborate = ParsePair(r, "collaborate", "reference.");
      ref.local = ParsePair(r, "local", "reference.");
      if (r.contains("r_star")) {
        const std::string rs = r.at("r_star").get<std::string>();
        if (rs != "(1,1)" && rs != "(0,0)") {
          Fail(source, "reference.r_star must be \"(1,1)\" or \"(0,0)\"");
        }
        ref.collaborates = rs == "(1,1)";
      }
      ref.tolerance = NumberOr(r, "tolerance", ref.tolerance, "reference.");
      s.reference = ref;
    }
  } catch (const json::exception& e) {
    Fail(source, e.what());
  } catch (const std::invalid_argument& e) {
    if (dynamic_cast<const ValidationError*>(&e)) throw;
    throw ValidationError(std::string("scenario_io: ") + source + ": " + e.what());
  }
  s.market.params.Validate();
  if (require_qualities) s.market.quality.Validate();
  s.settings.Validate();
  return s;
}

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double ParseCell(const std::string& cell, const std::string& where) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(cell, &used);
  } catch (const std::exception&) {
    throw ParseError("scenario_io: " + where + ": '" + cell + "' is not a number");
  }
  if (used != cell.size()) {
    throw ParseError("scenario_io: " + where + ": '" + cell + "' is not a number");
  }
  return v;
}

}  // namespace

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("scenario_io: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

PreferenceDistribution DistributionFromJson(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw ParseError("scenario_io: distribution.kind is required");
  }
  const std::string kind = j.at("kind").get<std::string>();
  const std::string path = "distribution.";
  if (kind == "uniform") return PreferenceDistribution::Uniform();
  if (kind == "truncated_gaussian") {
    return PreferenceDistribution(GaussianFromJson(j, path));
  }
  if (kind == "truncated_gamma") {
    return PreferenceDistribution(TruncatedGammaLaw{
        RequireNumber(j, "shape", path), RequireNumber(j, "scale", path)});
  }
  if (kind == "mixture") {
    if (!j.contains("components") || !j.at("components").is_array() ||
        j.at("components").size() != 2) {
      throw ParseError("scenario_io: distribution.components needs two gaussians");
    }
    return PreferenceDistribution(MixtureLaw{
        RequireNumber(j, "weight", path),
        GaussianFromJson(j.at("components")[0], path + "components[0]."),
        GaussianFromJson(j.at("components")[1], path + "components[1].")});
  }
  throw ParseError("scenario_io: unknown distribution kind '" + kind + "'");
}

ordered_json DistributionToJson(const PreferenceDistribution& dist) {
  return std::visit(
      [](const auto& law) -> ordered_json {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, UniformLaw>) {
          return ordered_json{{"kind", "uniform"}};
        } else if constexpr (std::is_same_v<T, TruncatedGaussianLaw>) {
          return GaussianToJson(law);
        } else if constexpr (std::is_same_v<T, TruncatedGammaLaw>) {
          return ordered_json{{"kind", "truncated_gamma"},
                              {"shape", law.shape},
                              {"scale", law.scale}};
        } else {
          return ordered_json{
              {"kind", "mixture"},
              {"weight", law.weight},
              {"components", {GaussianToJson(law.first), GaussianToJson(law.second)}}};
        }
      },
      dist.descriptor());
}

#define COOPETITION_SETTINGS_FIELDS(X)                                      \
  X(br_tolerance) X(max_br_iterations) X(damping) X(entrant_first)          \
  X(bracket_points) X(line_search_tolerance) X(oracle_grid_n)               \
  X(deviation_tolerance) X(verify_equilibria) X(fd_step) X(region_tolerance) \
  X(max_ascent_iterations) X(ascent_step_fraction) X(ascent_step_floor)

ordered_json SettingsToJson(const SolverSettings& s) {
  ordered_json j;
#define X(name) j[#name] = s.name;
  COOPETITION_SETTINGS_FIELDS(X)
#undef X
  return j;
}

void ApplySettingsJson(const json& j, SolverSettings& s) {
  for (const auto& [key, value] : j.items()) {
    bool known = false;
#define X(name)                                                     \
  if (key == #name) {                                               \
    known = true;                                                   \
    s.name = value.get<decltype(SolverSettings::name)>();           \
  }
    COOPETITION_SETTINGS_FIELDS(X)
#undef X
    if (!known) throw ParseError("scenario_io: unknown field settings." + key);
  }
}

#undef COOPETITION_SETTINGS_FIELDS

Scenario ParseScenario(const std::string& text, const std::string& source) {
  return FromJson(ParseJson(text, source), source, true);
}

Scenario LoadScenario(const std::string& path) {
  return ParseScenario(ReadFile(path), path);
}

Scenario ParseScenarioTemplate(const std::string& text, const std::string& source) {
  return FromJson(ParseJson(text, source), source, false);
}

Scenario LoadScenarioTemplate(const std::string& path) {
  return ParseScenarioTemplate(ReadFile(path), path);
}

std::string SerializeScenario(const Scenario& s) {
  ordered_json j;
  const MarketParams& p = s.market.params;
  j["params"] = {{"w_q", p.w_q}, {"w_p", p.w_p}, {"w_phi", p.w_phi},
                 {"c_I", p.c_I}, {"c_E", p.c_E}};
  j["distribution"] = DistributionToJson(s.market.dist);
  j["qualities"] = {{"q_I1", s.market.quality.q_I1},
                    {"local", PairToJson(s.market.quality.local)},
                    {"fl", PairToJson(s.market.quality.fl)}};
  j["settings"] = SettingsToJson(s.settings);
  switch (s.period1.mode) {
    case Period1Mode::kOptimize: j["period1"] = {{"mode", "optimize"}}; break;
    case Period1Mode::kCorner: j["period1"] = {{"mode", "corner"}}; break;
    case Period1Mode::kFixed:
      j["period1"] = {{"mode", "fixed"}, {"price", s.period1.price}};
      break;
  }
  j["metadata"] = ordered_json::object();
  for (const auto& [k, v] : s.metadata) j["metadata"][k] = v;
  if (s.reference) {
    const ReferenceProfits& r = *s.reference;
    j["reference"] = {{"label", r.label},
                      {"collaborate", PairToJson(r.collaborate)},
                      {"local", PairToJson(r.local)}};
    if (r.collaborates) j["reference"]["r_star"] = *r.collaborates ? "(1,1)" : "(0,0)";
    j["reference"]["tolerance"] = r.tolerance;
  }
  return j.dump(2) + "\n";
}

std::string AccuracyFixture::SweepKind() const {
  return sweep_key.substr(0, sweep_key.find('='));
}

std::string AccuracyFixture::SweepValue() const {
  const auto eq = sweep_key.find('=');
  return eq == std::string::npos ? std::string() : sweep_key.substr(eq + 1);
}

std::vector<AccuracyFixture> ParseAccuracyFixture(const std::string& text,
                                                  const std::string& source) {
  std::vector<AccuracyFixture> rows;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const std::vector<std::string> cells = SplitCsv(line);
    const std::string where = source + ":" + std::to_string(line_no);
    if (!have_header) {
      bool match = cells.size() == kFixtureColumns;
      for (std::size_t k = 0; match && k < kFixtureColumns; ++k) {
        match = cells[k] == kFixtureHeader[k];
      }
      if (!match) {
        throw ParseError("scenario_io: " + where +
                         ": fixture header must be dataset,sweep_key,i_local,"
                         "e_local,fedavg,i_local_sd,e_local_sd,fedavg_sd,"
                         "reported_collab");
      }
      have_header = true;
      continue;
    }
    if (cells.size() != kFixtureColumns) {
      throw ParseError("scenario_io: " + where + ": expected " +
                       std::to_string(kFixtureColumns) + " columns, got " +
                       std::to_string(cells.size()));
    }
    AccuracyFixture row;
    row.dataset = cells[0];
    row.sweep_key = cells[1];
    if (row.dataset.empty() || row.sweep_key.find('=') == std::string::npos) {
      throw ParseError("scenario_io: " + where +
                       ": dataset must be set and sweep_key look like kind=value");
    }
    double* numeric[] = {&row.i_local,    &row.e_local,    &row.fedavg,
                         &row.i_local_sd, &row.e_local_sd, &row.fedavg_sd};
    for (std::size_t k = 0; k < std::size(numeric); ++k) {
      *numeric[k] = ParseCell(cells[k + 2], where + " column " + kFixtureHeader[k + 2]);
    }
    for (std::size_t k = 0; k < 3; ++k) {
      if (!(*numeric[k] >= 0.0 && *numeric[k] <= 100.0)) {
        throw ValidationError("scenario_io: " + where + ": " + kFixtureHeader[k + 2] +
                              " accuracy must lie in [0, 100]");
      }
    }
    const std::string& reported = cells[8];
    if (reported == "1" || reported == "true") {
      row.reported_collab = true;
    } else if (reported == "0" || reported == "false") {
      row.reported_collab = false;
    } else if (!reported.empty()) {
      throw ParseError("scenario_io: " + where + ": reported_collab must be 0, 1 or empty");
    }
    rows.push_back(std::move(row));
  }
  if (!have_header) throw ParseError("scenario_io: " + source + ": missing header row");
  return rows;
}

std::vector<AccuracyFixture> LoadAccuracyFixture(const std::string& path) {
  return ParseAccuracyFixture(ReadFile(path), path);
}

Scenario ScenarioFromFixture(const AccuracyFixture& fixture,
                             const MarketParams& params,
                             const PreferenceDistribution& dist,
                             const SolverSettings& settings) {
  Scenario s;
  s.market.params = params;
  s.market.dist = dist;
  // Percent accuracy -> fraction-scale quality. FedAvg trains one shared
  // model, so both companies get the same FL quality.
  s.market.quality.q_I1 = fixture.i_local / 100.0;
  s.market.quality.local = {fixture.i_local / 100.0, fixture.e_local / 100.0};
  s.market.quality.fl = {fixture.fedavg / 100.0, fixture.fedavg / 100.0};
  s.settings = settings;
  s.metadata["dataset"] = fixture.dataset;
  s.metadata["sweep_key"] = fixture.sweep_key;
  return s;
}

}  // namespace coopetition
