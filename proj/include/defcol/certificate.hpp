#pragma once

#include <optional>
#include <string>

#include "defcol/coloring.hpp"
#include "defcol/discharging.hpp"
#include "defcol/graph.hpp"
#include "defcol/graph6.hpp"
#include "defcol/io.hpp"
#include "defcol/potential.hpp"
#include "defcol/proof_colorer.hpp"
#include "defcol/sparsity.hpp"
#include "defcol/survey.hpp"

namespace defcol {

inline constexpr const char* kToolName = "defcol";
inline constexpr const char* kToolVersion = "0.1.0";

// Every certificate carries the graph (graph6) and, where relevant, the
// capacity map, so that the claim in "payload" can be re-derived from the
// certificate alone.

inline json certificate(const std::string& kind, const Graph* g, const CapacityMap* c, json payload) {
  json cert;
  cert["kind"] = kind;
  cert["tool"] = kToolName;
  cert["version"] = kToolVersion;
  std::string hashed;
  if (g) {
    cert["graph"] = write_graph6(*g);
    hashed += cert["graph"].get<std::string>();
  }
  if (c) {
    cert["caps"] = caps_to_json(*c);
    hashed += "|" + cert["caps"].dump();
  }
  if (!g) hashed = payload.dump();
  cert["input_hash"] = "fnv1a64:" + fnv1a_hex(hashed);
  cert["payload"] = std::move(payload);
  return cert;
}

inline std::string to_string(SubsetFilter f) {
  switch (f) {
    case SubsetFilter::AllNonempty: return "all";
    case SubsetFilter::ProperNonempty: return "proper";
    case SubsetFilter::Nontrivial: return "nontrivial";
  }
  return "?";
}

inline SubsetFilter subset_filter_from_string(const std::string& s) {
  if (s == "all") return SubsetFilter::AllNonempty;
  if (s == "proper") return SubsetFilter::ProperNonempty;
  if (s == "nontrivial") return SubsetFilter::Nontrivial;
  throw InputError("unknown filter: " + s);
}

inline json trace_json(const PipelineTrace& t) {
  json j{{"quasi_graph_built", t.quasi_graph_built},
         {"quasi_order", t.quasi_order},
         {"mode", t.mode},
         {"extension_case", t.extension_case},
         {"failure", t.failure},
         {"fallback", t.fallback}};
  if (!t.quasi_graph_error.empty()) j["quasi_graph_error"] = t.quasi_graph_error;
  if (t.score) j["score_quarters"] = t.score->quarters;
  return j;
}

inline json solve_certificate(const Graph& g, const CapacityMap& c, const std::optional<Coloring>& phi,
                              const std::string& engine, const PipelineTrace* trace = nullptr) {
  json payload{{"engine", engine}};
  if (trace) payload["trace"] = trace_json(*trace);
  if (phi) {
    payload["coloring"] = coloring_json(*phi);
    return certificate("coloring", &g, &c, std::move(payload));
  }
  return certificate("unsat", &g, &c, std::move(payload));
}

inline json critical_certificate(const Graph& g, const CapacityMap& c, const CriticalityReport& rep) {
  json payload{{"critical", rep.critical}};
  if (rep.coloring) payload["coloring"] = coloring_json(*rep.coloring);
  json edges = json::array();
  for (const auto& w : rep.edge_witnesses) edges.push_back({{"edge", {w.edge.u, w.edge.v}}, {"coloring", coloring_json(w.coloring)}});
  payload["edge_witnesses"] = edges;
  json iso = json::array();
  for (const auto& [v, phi] : rep.isolated_witnesses) iso.push_back({{"vertex", v}, {"coloring", coloring_json(phi)}});
  payload["isolated_witnesses"] = iso;
  if (rep.blocking_edge) payload["blocking_edge"] = {rep.blocking_edge->u, rep.blocking_edge->v};
  if (rep.blocking_isolated) payload["blocking_isolated"] = *rep.blocking_isolated;
  return certificate("critical", &g, &c, std::move(payload));
}

inline json potential_certificate(const Graph& g, const CapacityMap& c, SubsetFilter filter, const PotentialMinimum& m) {
  return certificate("low-potential-set", &g, &c,
                     {{"filter", to_string(filter)}, {"value", m.value}, {"witness", vertex_set_json(m.witness)}});
}

inline json mad_certificate(const Graph& g, const Density& d) {
  return certificate("density-witness", &g, nullptr,
                     {{"quantity", "mad"}, {"mad", rational_json(d.value)}, {"witness", vertex_set_json(d.witness)}});
}

inline json sparsity_certificate(const Graph& g, Rational a, Rational b, bool strict, const SparsityCheck& s) {
  return certificate("density-witness", &g, nullptr,
                     {{"quantity", "max-excess"},
                      {"a", rational_json(a)},
                      {"b", rational_json(b)},
                      {"strict", strict},
                      {"sparse", s.sparse},
                      {"max_excess", rational_json(s.max_excess)},
                      {"witness", vertex_set_json(s.witness)}});
}

inline json audit_certificate(const Graph& g, const CapacityMap& c) {
  const ChargeMap h = initial_charges(g, c);
  const ChargeMap ch = discharge(g, c);
  const int rho_v = rho_set(g, c, g.vertices());
  return certificate("charge-audit", &g, &c,
                     {{"units", "half"},
                      {"top_vertices", vertex_set_json(top_vertices(g, c))},
                      {"initial", h.doubled_values()},
                      {"discharged", ch.doubled_values()},
                      {"rho_V", rho_v},
                      {"conserved", h.doubled_total() == 2 * rho_v && ch.doubled_total() == 2 * rho_v},
                      {"findings", findings_json(forbidden_configurations(g, c))}});
}

inline json reduction_certificate(const Graph& g, const CapacityMap& c, VertexSet s, const Coloring& phi,
                                  const ReductionResult& r) {
  Coloring on_s(g.order(), 0);
  for (int v : s.vertices()) on_s[v] = phi[v];
  return certificate("reduction", &g, &c,
                     {{"set", vertex_set_json(s)},
                      {"phi", coloring_json(on_s)},
                      {"case", r.reduction_case},
                      {"reduced_graph", write_graph6(r.graph)},
                      {"reduced_caps", caps_to_json(r.caps)},
                      {"added", vertex_set_json(r.added)},
                      {"added_potential", rho_set(r.graph, r.caps, r.added)},
                      {"original", r.original}});
}

inline json survey_payload(const SurveyResult& s) {
  json levels = json::array();
  for (const auto& l : s.levels)
    levels.push_back({{"n", l.n}, {"graphs", l.graphs}, {"checked", l.checked}, {"violations", l.violations}, {"critical", l.critical}});
  json violations = json::array(), critical = json::array();
  for (const auto& r : s.records) {
    if (r.violation) violations.push_back(write_graph6(r.graph));
    if (s.check != SurveyCheck::SparseColorable) {
      json entry{{"graph6", write_graph6(r.graph)}, {"n", r.graph.order()}, {"m", r.graph.size()}, {"edge_bound", r.edge_bound}};
      if (r.potential) entry["min_potential"] = {{"value", r.potential->value}, {"witness", vertex_set_json(r.potential->witness)}};
      critical.push_back(entry);
    }
  }
  json p{{"check", to_string(s.check)},
         {"max_n", s.max_n},
         {"levels", levels},
         {"total_violations", s.total_violations()},
         {"violations", violations}};
  if (s.check != SurveyCheck::SparseColorable) p["critical_graphs"] = critical;
  return p;
}

inline json survey_certificate(const SurveyResult& s) { return certificate("survey-summary", nullptr, nullptr, survey_payload(s)); }

// ---------------------------------------------------------------------------

struct Verdict {
  bool ok = false;
  std::string reason;
};

namespace detail {

inline bool uncolorable(const Graph& g, const CapacityMap& c) {
  return g.order() <= 20 ? !solve_brute_force(g, c) : !solve(g, c);
}

inline CapacityMap drop_caps(const CapacityMap& c, int v) {
  std::vector<Capacity> out;
  for (int u = 0; u < c.size(); ++u)
    if (u != v) out.push_back(c[u]);
  return CapacityMap(std::move(out));
}

inline Verdict fail(std::string why) { return {false, std::move(why)}; }

inline Verdict verify_critical(const Graph& g, const CapacityMap& c, const json& p) {
  if (p.at("critical").get<bool>()) {
    if (!uncolorable(g, c)) return fail("graph is colourable");
    const auto& ws = p.at("edge_witnesses");
    if (static_cast<int>(ws.size()) != g.size()) return fail("edge witnesses do not cover every edge");
    for (const json& w : ws) {
      const Edge e{w.at("edge")[0].get<int>(), w.at("edge")[1].get<int>()};
      if (e.u >= e.v || e.v >= g.order() || !g.adjacent(e.u, e.v)) return fail("witness for a non-edge");
      const Coloring phi = coloring_from_json(w.at("coloring"));
      if (static_cast<int>(phi.size()) != g.order() || !verify_coloring(g.without_edge(e), c, phi))
        return fail("edge witness does not verify");
    }
    std::vector<bool> seen(g.order(), false);
    for (const json& w : p.at("isolated_witnesses")) {
      const int v = w.at("vertex").get<int>();
      if (v < 0 || v >= g.order() || g.degree(v) != 0) return fail("isolated witness for a non-isolated vertex");
      const Coloring phi = coloring_from_json(w.at("coloring"));
      const Graph rest = g.induced(g.vertices() - VertexSet::single(v));
      if (static_cast<int>(phi.size()) != rest.order() || !verify_coloring(rest, drop_caps(c, v), phi))
        return fail("isolated-vertex witness does not verify");
      seen[v] = true;
    }
    for (int v = 0; v < g.order(); ++v)
      if (g.degree(v) == 0 && !seen[v]) return fail("missing witness for an isolated vertex");
    return {true, ""};
  }
  if (p.contains("coloring")) {
    const Coloring phi = coloring_from_json(p.at("coloring"));
    if (static_cast<int>(phi.size()) == g.order() && verify_coloring(g, c, phi)) return {true, ""};
    return fail("colouring does not verify");
  }
  if (!uncolorable(g, c)) return fail("non-critical claim without colouring, but graph is colourable");
  if (p.contains("blocking_edge")) {
    const Edge e{p["blocking_edge"][0].get<int>(), p["blocking_edge"][1].get<int>()};
    if (e.u >= e.v || e.v >= g.order() || !g.adjacent(e.u, e.v)) return fail("blocking edge is not an edge");
    return uncolorable(g.without_edge(e), c) ? Verdict{true, ""} : fail("g - e is colourable");
  }
  if (p.contains("blocking_isolated")) {
    const int v = p["blocking_isolated"].get<int>();
    if (v < 0 || v >= g.order() || g.degree(v) != 0) return fail("blocking vertex is not isolated");
    const Graph rest = g.induced(g.vertices() - VertexSet::single(v));
    return uncolorable(rest, drop_caps(c, v)) ? Verdict{true, ""} : fail("g - v is colourable");
  }
  return fail("non-critical claim without evidence");
}

}  // namespace detail

/// Re-derives the claim of a certificate from its own contents.
inline Verdict verify_certificate(const json& cert) {
  using detail::fail;
  try {
    const std::string kind = cert.at("kind").get<std::string>();
    const json& p = cert.at("payload");
    std::optional<Graph> g;
    std::optional<CapacityMap> c;
    std::string hashed;
    if (cert.contains("graph")) {
      g = parse_graph6(cert["graph"].get<std::string>());
      hashed += cert["graph"].get<std::string>();
    }
    if (cert.contains("caps")) {
      if (!g) return fail("capacity map without graph");
      c = caps_from_json(cert["caps"], g->order());
      hashed += "|" + cert["caps"].dump();
    }
    if (!g) hashed = p.dump();
    if (cert.at("input_hash").get<std::string>() != "fnv1a64:" + fnv1a_hex(hashed)) return fail("input hash mismatch");

    if (kind == "coloring") {
      const Coloring phi = coloring_from_json(p.at("coloring"));
      if (static_cast<int>(phi.size()) != g->order()) return fail("colouring has the wrong length");
      return verify_coloring(*g, *c, phi) ? Verdict{true, ""} : fail("colouring violates a capacity");
    }
    if (kind == "unsat") return detail::uncolorable(*g, *c) ? Verdict{true, ""} : fail("graph is colourable");
    if (kind == "critical") return detail::verify_critical(*g, *c, p);
    if (kind == "low-potential-set") {
      const SubsetFilter f = subset_filter_from_string(p.at("filter").get<std::string>());
      const VertexSet w = vertex_set_from_json(p.at("witness"));
      const int value = p.at("value").get<int>();
      if (!w.subset_of(g->vertices())) return fail("witness outside the vertex set");
      if (rho_set(*g, *c, w) != value) return fail("witness potential differs from the claimed value");
      const auto method = g->order() <= 20 ? MinimizeMethod::Scan : MinimizeMethod::Pruned;
      const PotentialMinimum m = min_potential(*g, *c, f, method);
      if (m.value != value) return fail("claimed value is not the minimum");
      if (m.witness != w) return fail("witness is not the canonical minimiser");
      return {true, ""};
    }
    if (kind == "density-witness") {
      const VertexSet w = vertex_set_from_json(p.at("witness"));
      if (!w.subset_of(g->vertices())) return fail("witness outside the vertex set");
      if (p.at("quantity") == "mad") {
        const Rational claimed = rational_from_json(p.at("mad"));
        if (g->size() > 0 && Rational(2 * g->induced_edges(w), w.size()) != claimed) return fail("witness density differs");
        return mad(*g).value == claimed ? Verdict{true, ""} : fail("claimed value is not the maximum average degree");
      }
      const Rational a = rational_from_json(p.at("a")), b = rational_from_json(p.at("b"));
      const Rational claimed = rational_from_json(p.at("max_excess"));
      if (w.empty() || Rational(g->induced_edges(w)) - a * Rational(w.size()) != claimed) return fail("witness excess differs");
      const SparsityCheck s = is_ab_sparse(*g, a, b, p.at("strict").get<bool>());
      if (s.max_excess != claimed || s.sparse != p.at("sparse").get<bool>()) return fail("sparsity claim does not hold");
      return {true, ""};
    }
    if (kind == "charge-audit") {
      const json again = audit_certificate(*g, *c).at("payload");
      return again == p ? Verdict{true, ""} : fail("charges or findings differ on recomputation");
    }
    if (kind == "reduction") {
      const VertexSet s = vertex_set_from_json(p.at("set"));
      const Coloring phi = coloring_from_json(p.at("phi"));
      const ReductionResult r = reduce(*g, *c, s, phi);
      const json again = reduction_certificate(*g, *c, s, phi, r).at("payload");
      return again == p ? Verdict{true, ""} : fail("reduction differs on recomputation");
    }
    if (kind == "survey-summary") {
      const SurveyResult s = run_survey(p.at("max_n").get<int>(), survey_check_from_string(p.at("check").get<std::string>()));
      return survey_payload(s) == p ? Verdict{true, ""} : fail("survey differs on recomputation");
    }
    return fail("unknown certificate kind: " + kind);
  } catch (const std::exception& e) {
    return fail(std::string("malformed certificate: ") + e.what());
  }
}

}  // namespace defcol
