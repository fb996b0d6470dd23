#pragma once

// JSON views of the library's reports. Requires nlohmann/json.

#include <nlohmann/json.hpp>

#include "hyperham/absorber.hpp"
#include "hyperham/constructions.hpp"
#include "hyperham/density.hpp"
#include "hyperham/hamilton.hpp"
#include "hyperham/io.hpp"
#include "hyperham/motifs.hpp"

namespace hyperham {

inline constexpr int kJsonSchemaVersion = 1;

inline nlohmann::json pairs_json(const std::vector<VertexPair>& ps) {
  auto a = nlohmann::json::array();
  for (const auto& [x, y] : ps) a.push_back({x, y});
  return a;
}

inline nlohmann::json to_json(const Hypergraph3& H) {
  return {{"n", H.n()}, {"m", H.edge_count()}, {"digest", digest(H)}};
}

inline nlohmann::json to_json(const TightPath& p) {
  return {{"vertices", p.vertices}, {"is_cycle", p.is_cycle}, {"length", p.size()}};
}

inline nlohmann::json to_json(const DeviationReport& r) {
  nlohmann::json j{{"notion", notion_name(r.notion)},
                   {"mode", mode_name(r.mode)},
                   {"d", r.d},
                   {"n", r.n},
                   {"raw", r.raw},
                   {"rho_hat", r.rho_hat},
                   {"exact", r.exact},
                   {"e", r.e},
                   {"size_product", r.size_product},
                   {"evaluations", r.evaluations}};
  nlohmann::json w;
  if (r.notion == Notion::vvv) {
    w = {{"X", r.X}, {"Y", r.Y}, {"Z", r.Z}};
  } else if (r.notion == Notion::ev) {
    w = {{"X", r.X}, {"P", pairs_json(r.P)}};
  } else {
    w = {{"P", pairs_json(r.P)}, {"Q", pairs_json(r.Q)}};
  }
  j["witness"] = std::move(w);
  if (r.mode != Mode::exact) {
    j["seed"] = r.seed;
    j["samples"] = r.samples;
  }
  if (r.mode == Mode::sampled) j["estimate"] = r.estimate;
  return j;
}

inline nlohmann::json to_json(const CountReport& r) {
  nlohmann::json j{{"motif", r.motif},         {"count", r.count}, {"normalized", r.normalized},
                   {"arity", r.arity},         {"exact", r.exact}, {"cap_hit", r.cap_hit},
                   {"convention", r.convention}};
  if (!r.exact && !r.cap_hit) j["samples"] = r.samples;
  return j;
}

inline nlohmann::json to_json(const Turn& t) {
  return {{"a", {t.a1, t.a2, t.a3}}, {"b", {t.b1, t.b2}}, {"c", t.c}, {"d", t.d}};
}

inline nlohmann::json to_json(const C8Blowup& g) {
  nlohmann::json classes = nlohmann::json::array();
  for (const auto& c : g.classes) classes.push_back(c);
  return {{"classes", classes}, {"path32", g.path32()}, {"path24", g.path24()}, {"path16", g.path16()}};
}

inline nlohmann::json to_json(const Absorber& a) {
  nlohmann::json ps = nlohmann::json::array();
  for (const auto& p : a.P) ps.push_back(p);
  return {{"K", a.K}, {"P", ps}, {"eligible", a.eligible}};
}

inline nlohmann::json to_json(const RegularPairReport& r) {
  return {{"V1", r.V1},           {"V2", r.V2},       {"eta", r.eta},     {"density", r.density},
          {"certified", r.certified}, {"probes", r.probes}, {"depth", r.depth}};
}

inline nlohmann::json to_json(const AttemptTrace& t) {
  return {{"seed", t.seed},
          {"stage", t.stage},
          {"diagnostic", t.diagnostic},
          {"reservoir", t.reservoir},
          {"absorbers_target", t.absorbers_target},
          {"absorbers_found", t.absorbers_found},
          {"gadget", t.gadget},
          {"absorbing_length", t.absorbing_length},
          {"cover_paths", t.cover_paths},
          {"uncovered", t.uncovered},
          {"connections", t.connections},
          {"dissolved", t.dissolved},
          {"trims", t.trims},
          {"adjustments", t.adjustments},
          {"leftover", t.leftover},
          {"connect_expansions", t.connect_expansions}};
}

inline nlohmann::json to_json(const HamiltonResult& r) {
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& t : r.trace) trace.push_back(to_json(t));
  nlohmann::json j{{"found", r.cycle.has_value()}, {"trace", trace}};
  if (r.cycle) j["cycle"] = r.cycle->vertices;
  if (!r.failing_stage.empty()) j["failing_stage"] = r.failing_stage;
  return j;
}

inline nlohmann::json to_json(const CoverResult& c) {
  nlohmann::json paths = nlohmann::json::array();
  for (const auto& p : c.paths) paths.push_back(p.vertices);
  nlohmann::json j{{"paths", paths}, {"uncovered", c.uncovered}, {"shortfall", c.shortfall}};
  if (!c.diagnostic.empty()) j["diagnostic"] = c.diagnostic;
  return j;
}

}  // namespace hyperham
