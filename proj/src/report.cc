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

#include "coopetition/report.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "coopetition/scenario.h"

namespace coopetition {
namespace {

using nlohmann::ordered_json;

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

ordered_json Pair(double incumbent, double entrant) {
  return ordered_json{{"incumbent", incumbent}, {"entrant", entrant}};
}

ordered_json SegmentToJson(const Segment& s) {
  if (s.Empty()) return nullptr;
  return ordered_json::array({s.lo, s.hi});
}

ordered_json ReferenceToJson(const ReferenceComparison& c) {
  ordered_json j;
  j["label"] = c.reference.label;
  j["tolerance"] = c.reference.tolerance;
  j["collaborate"] = {
      {"reference", Pair(c.reference.collaborate.incumbent, c.reference.collaborate.entrant)},
      {"model", Pair(c.model_collaborate.incumbent, c.model_collaborate.entrant)},
      {"match", c.collaborate_match}};
  j["local"] = {{"reference", Pair(c.reference.local.incumbent, c.reference.local.entrant)},
                {"model", Pair(c.model_local.incumbent, c.model_local.entrant)},
                {"match", c.local_match}};
  j["r_star"] = {
      {"reference", c.reference.collaborates
                        ? ordered_json(*c.reference.collaborates ? "(1,1)" : "(0,0)")
                        : ordered_json(nullptr)},
      {"model", c.model_collaborates ? "(1,1)" : "(0,0)"},
      {"match", c.r_star_match ? ordered_json(*c.r_star_match) : ordered_json(nullptr)}};
  j["status"] = c.matches() ? "match" : "documented_mismatch";
  return j;
}

ordered_json ProfitTableToJson(const OracleProfitTable& t) {
  return ordered_json{{"theta1", t.theta1},
                      {"collaborate", GridSetToJson(t.collaborate)},
                      {"local", GridSetToJson(t.local)},
                      {"oracle_r_star", t.collaborates ? "(1,1)" : "(0,0)"}};
}

const char* Flag(const std::optional<bool>& v) {
  if (!v) return "";
  return *v ? "1" : "0";
}

}  // namespace

ordered_json VerdictToJson(const oracle::OracleVerdict& v) {
  return ordered_json{{"passed", v.passed},
                      {"worst_deviation", v.worst_deviation},
                      {"worst_company", CompanyName(v.worst_company)},
                      {"worst_location", v.worst_location},
                      {"grid_n", v.grid_n},
                      {"tolerance", v.tolerance}};
}

ordered_json EquilibriumToJson(const PriceEquilibrium& eq) {
  ordered_json j{{"p_I2", eq.p_I2},
                 {"p_E2", eq.p_E2},
                 {"W_I2", eq.W_I2},
                 {"W_E2", eq.W_E2},
                 {"iterations", eq.iterations},
                 {"residual", eq.residual},
                 {"converged", eq.converged},
                 {"zero_demand_I", eq.zero_demand_I},
                 {"zero_demand_E", eq.zero_demand_E}};
  j["oracle"] = eq.verdict ? VerdictToJson(*eq.verdict) : ordered_json(nullptr);
  return j;
}

ordered_json GridSetToJson(const oracle::GridEquilibriumSet& s) {
  ordered_json pairs = ordered_json::array();
  for (const auto& [pi, pe] : s.pairs) pairs.push_back({pi, pe});
  return ordered_json{{"grid_n", s.grid_n},
                      {"count", s.count},
                      {"W_I2", s.W_I2},
                      {"W_E2", s.W_E2},
                      {"degenerate", s.degenerate},
                      {"full_enumeration", s.full_enumeration},
                      {"pairs", pairs}};
}

ordered_json ReportToJson(const EquilibriumReport& r) {
  ordered_json j;
  j["r_star"] = r.outcome.decision.r_star.Label();
  j["period1"] = {{"mode", r.period1_mode},
                  {"region", r.region ? ordered_json(RegionName(*r.region))
                                      : ordered_json(nullptr)},
                  {"p_I1", r.p_I1},
                  {"theta1", r.theta1}};
  const PriceEquilibrium& eq = r.outcome.Selected();
  j["prices"] = {{"p_I1", r.p_I1}, {"p_I2", eq.p_I2}, {"p_E2", eq.p_E2}};
  j["profits"] = {{"W_I1", r.profits.W_I1},
                  {"W_I2", r.profits.W_I2},
                  {"W_E2", r.profits.W_E2},
                  {"W_I", r.profits.W_I()}};
  j["demand"] = {{"theta1", r.segments.theta1},
                 {"indifference", r.segments.indifference},
                 {"mirrored", r.segments.mirrored},
                 {"incumbent", SegmentToJson(r.segments.incumbent)},
                 {"entrant", SegmentToJson(r.segments.entrant)},
                 {"incumbent_mass", r.segments.incumbent_mass},
                 {"entrant_mass", r.segments.entrant_mass}};
  j["collaboration"] = {{"incumbent_prefers", r.outcome.decision.incumbent_prefers},
                        {"entrant_prefers", r.outcome.decision.entrant_prefers},
                        {"profiles",
                         {{"(1,1)", EquilibriumToJson(r.outcome.collaborate)},
                          {"(0,0)", EquilibriumToJson(r.outcome.local)}}}};
  j["verified"] = r.verified();
  if (r.grid_period1) {
    const oracle::GridPeriod1Optimum& g = *r.grid_period1;
    j["grid_period1"] = {{"p_I1", g.p_I1},
                         {"W_I", g.W_I},
                         {"theta1", g.theta1},
                         {"collaborate", g.collaborate},
                         {"p_I2", g.p_I2},
                         {"p_E2", g.p_E2},
                         {"grid_n", g.grid_n},
                         {"cell", g.cell},
                         {"unconverged_cells", g.unconverged_cells},
                         {"W_I_gap", r.profits.W_I() - g.W_I}};
  }
  if (r.reference) j["reference_comparison"] = ReferenceToJson(*r.reference);
  return j;
}

ordered_json SweepToJson(const SweepReport& report) {
  ordered_json cells = ordered_json::array();
  for (const SweepCell& c : report.cells) {
    ordered_json j;
    j["dataset"] = c.fixture.dataset;
    j["sweep_key"] = c.fixture.sweep_key;
    j["accuracy"] = {{"i_local", c.fixture.i_local},
                     {"e_local", c.fixture.e_local},
                     {"fedavg", c.fixture.fedavg}};
    j["reported_collab"] =
        c.fixture.reported_collab ? ordered_json(*c.fixture.reported_collab) : nullptr;
    if (c.ok()) {
      j["collaborate"] = c.report->outcome.collaborates();
      j["matches_reported"] =
          c.matches_reported ? ordered_json(*c.matches_reported) : nullptr;
      j["report"] = ReportToJson(*c.report);
    } else {
      j["error"] = {{"kind", c.error_kind}, {"message", c.error}};
    }
    if (c.discrepancy) j["discrepancy"] = ProfitTableToJson(*c.discrepancy);
    cells.push_back(std::move(j));
  }
  ordered_json tables;
  for (const std::string& kind : SweepKinds(report)) {
    ordered_json table;
    for (const SweepCell& c : report.cells) {
      if (c.fixture.SweepKind() != kind) continue;
      table[c.fixture.dataset][c.fixture.SweepValue()] =
          c.ok() ? ordered_json(c.report->outcome.collaborates()) : ordered_json("error");
    }
    tables[kind] = table;
  }
  return ordered_json{{"cells", cells},
                      {"collaboration_tables", tables.is_null() ? ordered_json::object() : tables},
                      {"summary",
                       {{"cells", report.cells.size()},
                        {"failures", report.failures()},
                        {"discrepancies", report.discrepancies()},
                        {"unverified", report.unverified()}}}};
}

ordered_json HazardCheckToJson(const HazardCheckResult& c) {
  return ordered_json{
      {"ok", c.ok()},
      {"density_positive", c.density_positive},
      {"hazard_increasing", c.hazard_increasing},
      {"violation_at", c.violation_at ? ordered_json(*c.violation_at) : nullptr},
      {"worst_relative_drop", c.worst_relative_drop},
      {"grid_points", c.grid_points},
      {"guard", c.guard},
      {"notes", c.notes}};
}

std::vector<std::string> SweepKinds(const SweepReport& report) {
  std::vector<std::string> kinds;
  for (const SweepCell& c : report.cells) {
    const std::string k = c.fixture.SweepKind();
    if (std::find(kinds.begin(), kinds.end(), k) == kinds.end()) kinds.push_back(k);
  }
  return kinds;
}

std::string CollaborationTableCsv(const SweepReport& report, const std::string& kind) {
  std::vector<std::string> datasets, values;
  std::map<std::pair<std::string, std::string>, std::string> entry;
  for (const SweepCell& c : report.cells) {
    if (c.fixture.SweepKind() != kind) continue;
    const std::string v = c.fixture.SweepValue();
    if (std::find(datasets.begin(), datasets.end(), c.fixture.dataset) == datasets.end()) {
      datasets.push_back(c.fixture.dataset);
    }
    if (std::find(values.begin(), values.end(), v) == values.end()) values.push_back(v);
    entry[{c.fixture.dataset, v}] =
        c.ok() ? (c.report->outcome.collaborates() ? "1" : "0") : "error";
  }
  std::ostringstream out;
  out << "dataset";
  for (const std::string& v : values) out << ',' << kind << '=' << v;
  out << '\n';
  for (const std::string& d : datasets) {
    out << d;
    for (const std::string& v : values) {
      const auto it = entry.find({d, v});
      out << ',' << (it == entry.end() ? "" : it->second);
    }
    out << '\n';
  }
  return out.str();
}

std::string PriceSeriesCsv(const SweepReport& report, const std::string& kind) {
  std::ostringstream out;
  out << "dataset,x,p_I1,p_I2,p_E2,theta1,collaborate\n";
  for (const SweepCell& c : report.cells) {
    if (c.fixture.SweepKind() != kind || !c.ok()) continue;
    const EquilibriumReport& r = *c.report;
    const PriceEquilibrium& eq = r.outcome.Selected();
    out << c.fixture.dataset << ',' << c.fixture.SweepValue() << ',' << Num(r.p_I1)
        << ',' << Num(eq.p_I2) << ',' << Num(eq.p_E2) << ',' << Num(r.theta1) << ','
        << (r.outcome.collaborates() ? 1 : 0) << '\n';
  }
  return out.str();
}

void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("report: cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("report: write failed for " + path);
}

std::string SummarizeReport(const EquilibriumReport& r) {
  std::ostringstream out;
  const PriceEquilibrium& eq = r.outcome.Selected();
  out << "r* = " << r.outcome.decision.r_star.Label() << "  period1 " << r.period1_mode;
  if (r.region) out << " (region " << RegionName(*r.region) << ")";
  out << "\n  p_I1 = " << Num(r.p_I1) << "  theta1 = " << Num(r.theta1)
      << "\n  p_I2 = " << Num(eq.p_I2) << "  p_E2 = " << Num(eq.p_E2)
      << "\n  W_I1 = " << Num(r.profits.W_I1) << "  W_I2 = " << Num(r.profits.W_I2)
      << "  W_E2 = " << Num(r.profits.W_E2) << "  W_I = " << Num(r.profits.W_I()) << '\n';
  for (const auto* p : {&r.outcome.collaborate, &r.outcome.local}) {
    const bool fl = p == &r.outcome.collaborate;
    out << "  " << (fl ? "(1,1)" : "(0,0)") << ": W_I2 = " << Num(p->W_I2)
        << "  W_E2 = " << Num(p->W_E2) << "  oracle "
        << (p->verdict ? (p->verdict->passed ? "pass" : "FAIL") : "n/a");
    if (p->verdict) out << " (worst gain " << Num(p->verdict->worst_deviation) << ")";
    out << '\n';
  }
  if (r.grid_period1) {
    out << "  grid period-1 optimum: p_I1 = " << Num(r.grid_period1->p_I1)
        << "  W_I = " << Num(r.grid_period1->W_I) << '\n';
  }
  if (r.reference) {
    const ReferenceComparison& c = *r.reference;
    out << "  reference '" << c.reference.label << "' (tolerance "
        << Num(c.reference.tolerance) << "):\n"
        << "    (1,1) reference (" << Num(c.reference.collaborate.incumbent) << ", "
        << Num(c.reference.collaborate.entrant) << ")  model ("
        << Num(c.model_collaborate.incumbent) << ", " << Num(c.model_collaborate.entrant)
        << ")  " << (c.collaborate_match ? "match" : "mismatch") << '\n'
        << "    (0,0) reference (" << Num(c.reference.local.incumbent) << ", "
        << Num(c.reference.local.entrant) << ")  model (" << Num(c.model_local.incumbent)
        << ", " << Num(c.model_local.entrant) << ")  "
        << (c.local_match ? "match" : "mismatch") << '\n';
    if (c.r_star_match) {
      out << "    r* reference " << (*c.reference.collaborates ? "(1,1)" : "(0,0)")
          << "  model " << (c.model_collaborates ? "(1,1)" : "(0,0)") << "  "
          << (*c.r_star_match ? "match" : "mismatch") << '\n';
    }
    out << "    status: " << (c.matches() ? "match" : "documented mismatch") << '\n';
  }
  return out.str();
}

std::string SummarizeSweep(const SweepReport& report) {
  std::ostringstream out;
  for (const SweepCell& c : report.cells) {
    out << c.fixture.dataset << ' ' << c.fixture.sweep_key << ": ";
    if (!c.ok()) {
      out << "ERROR (" << c.error_kind << ") " << c.error << '\n';
      continue;
    }
    const EquilibriumReport& r = *c.report;
    out << (r.outcome.collaborates() ? "collaborate" : "local") << "  p_I1 = "
        << Num(r.p_I1) << "  theta1 = " << Num(r.theta1)
        << "  reported = " << Flag(c.fixture.reported_collab);
    if (c.matches_reported && !*c.matches_reported) out << "  DISCREPANCY";
    if (!r.verified()) out << "  UNVERIFIED";
    out << '\n';
  }
  out << report.cells.size() << " cells, " << report.failures() << " failed, "
      << report.discrepancies() << " disagree with the reported outcome, "
      << report.unverified() << " failed the oracle check\n";
  return out.str();
}

}  // namespace coopetition
