#pragma once

#include <array>
#include <string>
#include <vector>

#include "lindfrag/fragments.hpp"
#include "lindfrag/model.hpp"

namespace lindfrag {

enum class TermKind { unitary, dissipative };

struct GraphVertex {
  int term_id;  // index into hamiltonian or jumps
  TermKind kind;
  PauliString string;        // tilde-basis term string
  std::vector<int> support;  // tilde sites with non-identity letters
  bool frozen = false;
};

struct FrustrationGraph {
  std::vector<GraphVertex> vertices;
  std::vector<std::vector<std::uint8_t>> adjacency;

  bool adjacent(int i, int j) const { return adjacency[i][j] != 0; }
  std::size_t size() const { return vertices.size(); }
};

// One vertex per commutator term and per dissipator (constant parts dropped);
// edges join anticommuting term strings. With a fragment, commutator vertices
// that act as zero inside it are marked frozen.
FrustrationGraph build_graph(const TildeModel& model, const Fragment* fragment = nullptr);

struct Claw {
  int center;
  std::array<int, 3> leaves;  // sorted, pairwise non-adjacent
};

// All induced K_{1,3} subgraphs among non-frozen vertices.
std::vector<Claw> find_claws(const FrustrationGraph& graph);

// Connected components after deleting frozen vertices, each sorted ascending.
std::vector<std::vector<int>> subsystem_components(const FrustrationGraph& graph);

// DOT rendering: commutator vertices red, dissipative green, frozen gray.
std::string to_dot(const FrustrationGraph& graph);

}  // namespace lindfrag
