#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "spslab/analysis.hpp"

namespace spslab {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

/// Hasse diagram of a finite order, edges from lower to upper cover.
inline std::string hasse_dot(const FiniteLattice& L, const std::vector<std::string>& labels,
                             const std::string& name = "lattice") {
  std::ostringstream os;
  os << "digraph " << dot_quote(name) << " {\n  rankdir=BT;\n  node [shape=box];\n";
  for (std::size_t a = 0; a < L.size(); ++a) os << "  n" << a << " [label=" << dot_quote(labels[a]) << "];\n";
  for (std::size_t a = 0; a < L.size(); ++a)
    for (std::size_t b = 0; b < L.size(); ++b)
      if (L.covers(a, b)) os << "  n" << a << " -> n" << b << ";\n";
  os << "}\n";
  return os.str();
}

/// Hasse diagram of an enumerated family of closed sets.
inline std::string family_dot(const System& sys, const SubsetFamily& fam) {
  std::vector<std::string> labels;
  for (auto s : fam.members) labels.push_back(set_text(sys, s));
  return hasse_dot(fam.lattice(), labels, std::string(to_string(fam.kind)));
}

/// Point-line incidence graph: one node per point, one per line with at
/// least two points, edges for incidence.
inline std::string incidence_dot(const System& sys, const ProjectiveGeometry& g) {
  std::ostringstream os;
  os << "graph \"geometry\" {\n  node [shape=circle];\n";
  for (std::size_t p = 0; p < g.points; ++p) os << "  p" << p << " [label=" << dot_quote(sys.state_name(p)) << "];\n";
  const auto lines = g.lines();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    os << "  l" << i << " [shape=point, xlabel=" << dot_quote(set_text(sys, lines[i])) << "];\n";
    for (auto p : lines[i]) os << "  l" << i << " -- p" << p << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace spslab
