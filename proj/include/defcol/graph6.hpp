#pragma once

#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "defcol/graph.hpp"

namespace defcol {

struct Graph6Error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Short-form graph6 only: one size byte (n + 63, n <= 62) followed by the
// upper triangle in column order (0,1),(0,2),(1,2),(0,3),... packed six bits
// per byte, most significant bit first, each byte offset by 63.

inline Graph parse_graph6(std::string_view text) {
  if (text.empty()) throw Graph6Error("graph6: empty line");
  for (char ch : text) {
    const int b = static_cast<unsigned char>(ch);
    if (b < 63 || b > 126) throw Graph6Error("graph6: byte outside printable range 63..126");
  }
  const int n = static_cast<unsigned char>(text[0]) - 63;
  if (n > 62) throw Graph6Error("graph6: long-form size header is not supported");
  const std::size_t bits = static_cast<std::size_t>(n) * (n - 1) / 2;
  const std::size_t body = (bits + 5) / 6;
  if (text.size() != 1 + body) throw Graph6Error("graph6: length does not match the size header");

  Graph g(n);
  std::size_t k = 0;
  auto bit_at = [&](std::size_t idx) {
    const int byte = static_cast<unsigned char>(text[1 + idx / 6]) - 63;
    return (byte >> (5 - idx % 6)) & 1;
  };
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++k)
      if (bit_at(k)) g.add_edge(i, j);
  for (; k < body * 6; ++k)
    if (bit_at(k)) throw Graph6Error("graph6: nonzero padding bits");
  return g;
}

inline std::string write_graph6(const Graph& g) {
  const int n = g.order();
  if (n > 62) throw Graph6Error("graph6: short form supports at most 62 vertices");
  std::string out(1, static_cast<char>(n + 63));
  int acc = 0, filled = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + 63));
  return out;
}

/// Reads newline-terminated graph6 lines. Blank and comment lines are errors.
inline std::vector<Graph> read_graph6_stream(std::istream& in) {
  std::vector<Graph> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    try {
      out.push_back(parse_graph6(line));
    } catch (const Graph6Error& e) {
      throw Graph6Error("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace defcol
