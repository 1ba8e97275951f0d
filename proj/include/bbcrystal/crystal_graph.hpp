#pragma once

#include <optional>

#include "bbcrystal/cartan.hpp"

namespace bbcrystal {

struct CrystalVertex {
  int id = 0;
  Offset offset;
  std::vector<int> eps;  // per index
  std::vector<int> phi;
  std::string label;
};

struct CrystalEdge {
  int from = 0;
  int to = 0;
  IndexPair il;
  auto operator<=>(const CrystalEdge&) const = default;
};

// Finite abstract crystal; wt(b) = lambda_base - offset, read through dom.
struct CrystalGraph {
  BCDatum datum;
  std::vector<int> dom;
  std::vector<CrystalVertex> vertices;  // vertices[k].id == k
  std::vector<CrystalEdge> edges;

  int add_vertex(const Offset& offset, std::string label = {});
  void add_edge(int from, int to, IndexPair il) { edges.push_back({from, to, il}); }
  int pairing(int i, int v) const { return datum.pairing(i, vertices.at(v).offset, dom); }
  std::optional<int> f(int v, IndexPair il) const;
  std::optional<int> e(int v, IndexPair il) const;
  std::vector<int> sources() const;
  // eps from e-chains for real i, 0 for imaginary i; phi = eps + <h_i, wt>.
  void assign_eps_phi();
  std::size_t count_at(const Offset& beta) const;
};

Report crystal_axioms(const CrystalGraph& g);
// psi maps vertex ids of g1 to ids of g2 or -1 (the element 0).
Report morphism_check(const CrystalGraph& g1, const CrystalGraph& g2, const std::vector<int>& psi, bool strict);
// Label-preserving bijection commuting with all edges, found by rooted BFS
// from the sources with backtracking among sources of equal signature.
std::optional<std::vector<int>> crystal_isomorphic(const CrystalGraph& g1, const CrystalGraph& g2);

}  // namespace bbcrystal
