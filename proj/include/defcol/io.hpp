#pragma once

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "defcol/coloring.hpp"
#include "defcol/discharging.hpp"
#include "defcol/graph.hpp"
#include "defcol/rational.hpp"

namespace defcol {

using json = nlohmann::json;

struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Capacity maps: {"uniform": [c1, c2]} or {"per_vertex": [[c1, c2], ...]}.
// The command-line shorthand "uniform:J,K" is also accepted.

inline CapacityMap caps_from_json(const json& j, int n) {
  auto pair = [](const json& p) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
      throw InputError("capacity must be a pair of integers");
    const Capacity c{p[0].get<int>(), p[1].get<int>()};
    if (!valid_capacity(c)) throw InputError("capacity outside -1<=c1<=1, -1<=c2<=3");
    return c;
  };
  if (!j.is_object()) throw InputError("capacity map must be a JSON object");
  if (j.contains("uniform")) return CapacityMap::uniform(n, pair(j.at("uniform")));
  if (j.contains("per_vertex")) {
    const json& arr = j.at("per_vertex");
    if (!arr.is_array() || static_cast<int>(arr.size()) != n)
      throw InputError("per_vertex capacity list must have one entry per vertex");
    std::vector<Capacity> caps;
    for (const json& p : arr) caps.push_back(pair(p));
    return CapacityMap(std::move(caps));
  }
  throw InputError("capacity map needs a \"uniform\" or \"per_vertex\" key");
}

inline json caps_to_json(const CapacityMap& c) {
  bool uniform = c.size() > 0;
  for (int v = 1; v < c.size(); ++v) uniform = uniform && c[v] == c[0];
  if (uniform) return {{"uniform", {c[0].c1, c[0].c2}}};
  json arr = json::array();
  for (const Capacity& cv : c.values()) arr.push_back({cv.c1, cv.c2});
  return {{"per_vertex", arr}};
}

/// Accepts inline JSON, "uniform:J,K", or a path to a JSON file.
inline json caps_spec_to_json(const std::string& spec) {
  if (spec.rfind("uniform:", 0) == 0) {
    int a = 0, b = 0;
    char tail = 0;
    if (std::sscanf(spec.c_str() + 8, "%d,%d%c", &a, &b, &tail) != 2) throw InputError("bad capacity shorthand: " + spec);
    return {{"uniform", {a, b}}};
  }
  try {
    if (!spec.empty() && spec.front() == '{') return json::parse(spec);
    std::FILE* f = std::fopen(spec.c_str(), "rb");
    if (!f) throw InputError("cannot open capacity file: " + spec);
    std::string text;
    char buf[4096];
    for (std::size_t k; (k = std::fread(buf, 1, sizeof buf, f)) > 0;) text.append(buf, k);
    std::fclose(f);
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("capacity JSON: ") + e.what());
  }
}

inline json vertex_set_json(VertexSet s) { return s.vertices(); }

inline VertexSet vertex_set_from_json(const json& j) {
  if (!j.is_array()) throw InputError("vertex set must be an array");
  VertexSet s;
  for (const json& v : j) {
    if (!v.is_number_integer() || v.get<int>() < 0 || v.get<int>() >= kMaxVertices) throw InputError("bad vertex id");
    s.insert(v.get<int>());
  }
  return s;
}

inline json rational_json(Rational r) { return {{"num", r.num()}, {"den", r.den()}}; }

inline Rational rational_from_json(const json& j) { return Rational(j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>()); }

inline json coloring_json(const Coloring& phi) {
  json arr = json::array();
  for (std::uint8_t col : phi) arr.push_back(static_cast<int>(col));
  return arr;
}

inline Coloring coloring_from_json(const json& j) {
  if (!j.is_array()) throw InputError("coloring must be an array");
  Coloring phi;
  for (const json& x : j) {
    if (!x.is_number_integer()) throw InputError("colour must be an integer");
    const int col = x.get<int>();
    if (col < 0 || col > 2) throw InputError("colour must be 1 or 2");
    phi.push_back(static_cast<std::uint8_t>(col));
  }
  return phi;
}

inline json findings_json(const std::vector<Finding>& findings) {
  json arr = json::array();
  for (const Finding& f : findings) arr.push_back({{"vertex", f.vertex}, {"rule", std::string(1, f.rule)}, {"detail", f.detail}});
  return arr;
}

/// FNV-1a, 64 bit, as a hex string.
inline std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace defcol
