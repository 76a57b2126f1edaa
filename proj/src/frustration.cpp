#include "lindfrag/frustration.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace lindfrag {

FrustrationGraph build_graph(const TildeModel& model, const Fragment* fragment) {
  const int n = model.base.n_qubits;
  if (fragment && !fragment->has_explicit_basis() &&
      static_cast<int>(fragment->labels.size()) != n)
    throw std::invalid_argument("build_graph: fragment/model mismatch");

  FrustrationGraph g;
  auto support_of = [n](const PauliString& p) {
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (p.letter(i) != 'I') s.push_back(i);
    return s;
  };
  for (std::size_t t = 0; t < model.base.hamiltonian.size(); ++t) {
    const auto& str = model.base.hamiltonian[t].string;
    GraphVertex v{static_cast<int>(t), TermKind::unitary, str, support_of(str), false};
    if (fragment && !fragment->has_explicit_basis()) {
      // The commutator acts as zero when the term string commutes with every
      // member: true iff an even number of its sites are active.
      int active_in_support = 0;
      for (const int s : v.support)
        if (fragment->labels[s] == SiteLabel::Active) ++active_in_support;
      v.frozen = (active_in_support % 2) == 0;
    }
    g.vertices.push_back(std::move(v));
  }
  for (std::size_t j = 0; j < model.base.jumps.size(); ++j) {
    const auto& str = model.base.jumps[j].string;
    g.vertices.push_back(
        {static_cast<int>(j), TermKind::dissipative, str, support_of(str), false});
  }
  const std::size_t v_count = g.vertices.size();
  g.adjacency.assign(v_count, std::vector<std::uint8_t>(v_count, 0));
  for (std::size_t i = 0; i < v_count; ++i)
    for (std::size_t j = i + 1; j < v_count; ++j)
      if (anticommutes(g.vertices[i].string, g.vertices[j].string))
        g.adjacency[i][j] = g.adjacency[j][i] = 1;
  return g;
}

std::vector<Claw> find_claws(const FrustrationGraph& graph) {
  std::vector<Claw> claws;
  const int n = static_cast<int>(graph.size());
  for (int c = 0; c < n; ++c) {
    if (graph.vertices[c].frozen) continue;
    std::vector<int> nbrs;
    for (int v = 0; v < n; ++v)
      if (v != c && !graph.vertices[v].frozen && graph.adjacent(c, v)) nbrs.push_back(v);
    for (std::size_t a = 0; a < nbrs.size(); ++a)
      for (std::size_t b = a + 1; b < nbrs.size(); ++b) {
        if (graph.adjacent(nbrs[a], nbrs[b])) continue;
        for (std::size_t d = b + 1; d < nbrs.size(); ++d) {
          if (graph.adjacent(nbrs[a], nbrs[d]) || graph.adjacent(nbrs[b], nbrs[d])) continue;
          claws.push_back({c, {nbrs[a], nbrs[b], nbrs[d]}});
        }
      }
  }
  return claws;
}

std::vector<std::vector<int>> subsystem_components(const FrustrationGraph& graph) {
  const int n = static_cast<int>(graph.size());
  std::vector<int> comp(n, -1);
  int n_comp = 0;
  for (int start = 0; start < n; ++start) {
    if (comp[start] >= 0 || graph.vertices[start].frozen) continue;
    std::vector<int> stack{start};
    comp[start] = n_comp;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w = 0; w < n; ++w)
        if (comp[w] < 0 && !graph.vertices[w].frozen && graph.adjacent(v, w)) {
          comp[w] = n_comp;
          stack.push_back(w);
        }
    }
    ++n_comp;
  }
  std::vector<std::vector<int>> out(n_comp);
  for (int v = 0; v < n; ++v)
    if (comp[v] >= 0) out[comp[v]].push_back(v);
  return out;
}

std::string to_dot(const FrustrationGraph& graph) {
  std::ostringstream os;
  os << "graph frustration {\n";
  for (std::size_t v = 0; v < graph.size(); ++v) {
    const auto& vert = graph.vertices[v];
    const char* color =
        vert.frozen ? "gray" : (vert.kind == TermKind::unitary ? "red" : "green");
    const char* prefix = vert.kind == TermKind::unitary ? "u" : "d";
    os << "  v" << v << " [label=\"" << prefix << vert.term_id << "\", color=" << color
       << ", style=filled];\n";
  }
  for (std::size_t i = 0; i < graph.size(); ++i)
    for (std::size_t j = i + 1; j < graph.size(); ++j)
      if (graph.adjacent(static_cast<int>(i), static_cast<int>(j)))
        os << "  v" << i << " -- v" << j << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace lindfrag
