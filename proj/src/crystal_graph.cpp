#include "bbcrystal/crystal_graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

namespace bbcrystal {

int CrystalGraph::add_vertex(const Offset& offset, std::string label) {
  const int id = static_cast<int>(vertices.size());
  vertices.push_back({id, offset, {}, {}, std::move(label)});
  return id;
}

std::optional<int> CrystalGraph::f(int v, IndexPair il) const {
  for (const auto& e : edges)
    if (e.from == v && e.il == il) return e.to;
  return std::nullopt;
}

std::optional<int> CrystalGraph::e(int v, IndexPair il) const {
  for (const auto& x : edges)
    if (x.to == v && x.il == il) return x.from;
  return std::nullopt;
}

std::vector<int> CrystalGraph::sources() const {
  std::vector<char> has_in(vertices.size(), 0);
  for (const auto& e : edges) has_in[e.to] = 1;
  std::vector<int> out;
  for (std::size_t v = 0; v < vertices.size(); ++v)
    if (!has_in[v]) out.push_back(static_cast<int>(v));
  return out;
}

void CrystalGraph::assign_eps_phi() {
  const int n = datum.rank();
  for (auto& v : vertices) {
    v.eps.assign(n, 0);
    v.phi.assign(n, 0);
  }
  // Vertices are created in height order, so e-predecessors come first.
  std::vector<int> order(vertices.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return height(vertices[a].offset) < height(vertices[b].offset); });
  for (int v : order)
    for (int i = 0; i < n; ++i) {
      if (datum.is_real(i)) {
        auto p = e(v, {i, 1});
        vertices[v].eps[i] = p ? vertices[*p].eps[i] + 1 : 0;
      }
      vertices[v].phi[i] = vertices[v].eps[i] + pairing(i, v);
    }
}

std::size_t CrystalGraph::count_at(const Offset& beta) const {
  return std::count_if(vertices.begin(), vertices.end(), [&](const CrystalVertex& v) { return v.offset == beta; });
}

Report crystal_axioms(const CrystalGraph& g) {
  Report r;
  const BCDatum& d = g.datum;
  std::map<std::pair<int, IndexPair>, int> out_count, in_count;
  for (const auto& e : g.edges) {
    const std::string tag = " on edge " + std::to_string(e.from) + "->" + std::to_string(e.to) + " " + to_string(e.il);
    if (d.is_real(e.il.i) && e.il.l != 1) r.add("label outside I^infinity" + tag);
    if (++out_count[{e.from, e.il}] > 1) r.add("(c) two outgoing edges" + tag);
    if (++in_count[{e.to, e.il}] > 1) r.add("(c) two incoming edges" + tag);
    const auto& a = g.vertices.at(e.from);
    const auto& b = g.vertices.at(e.to);
    if (b.offset != a.offset + d.alpha(e.il.i, e.il.l)) r.add("(a) weight shift" + tag);
    const int i = e.il.i;
    if (d.is_real(i)) {
      if (b.eps[i] != a.eps[i] + 1 || b.phi[i] != a.phi[i] - 1) r.add("(d) eps/phi" + tag);
    } else {
      if (b.eps[i] != a.eps[i] || b.phi[i] != a.phi[i] - e.il.l * d.a(i, i)) r.add("(e) eps/phi" + tag);
    }
  }
  for (const auto& v : g.vertices)
    for (int i = 0; i < d.rank(); ++i)
      if (v.phi.at(i) != g.pairing(i, v.id) + v.eps.at(i))
        r.add("(b) phi != <h,wt> + eps at vertex " + std::to_string(v.id));
  return r;
}

Report morphism_check(const CrystalGraph& g1, const CrystalGraph& g2, const std::vector<int>& psi, bool strict) {
  Report r;
  if (psi.size() != g1.vertices.size()) {
    r.add("map has wrong size");
    return r;
  }
  auto wt_equal = [&](int a, int b) {
    for (int i = 0; i < g1.datum.rank(); ++i)
      if (g1.pairing(i, a) != g2.pairing(i, b)) return false;
    return true;
  };
  for (const auto& v : g1.vertices) {
    const int w = psi[v.id];
    if (w < 0) continue;
    const auto& x = g2.vertices.at(w);
    if (!wt_equal(v.id, w) || v.eps != x.eps || v.phi != x.phi)
      r.add("(i) wt/eps/phi differ at vertex " + std::to_string(v.id));
  }
  for (const auto& e : g1.edges) {
    const int a = psi[e.from], b = psi[e.to];
    if (a < 0 || b < 0 || g2.f(a, e.il) != b)
      r.add("(ii) psi(f b) != f psi(b) on edge " + std::to_string(e.from) + "->" + std::to_string(e.to));
  }
  if (strict)
    for (const auto& e : g2.edges) {
      auto pa = std::find(psi.begin(), psi.end(), e.from);
      auto pb = std::find(psi.begin(), psi.end(), e.to);
      if (pa == psi.end() || pb == psi.end()) continue;
      if (g1.f(static_cast<int>(pa - psi.begin()), e.il) != static_cast<int>(pb - psi.begin()))
        r.add("strict: edge of target not reflected at " + std::to_string(e.from) + "->" + std::to_string(e.to));
    }
  return r;
}

namespace {

using Signature = std::tuple<Offset, std::vector<int>, std::vector<int>>;

Signature signature(const CrystalGraph& g, int v) {
  const auto& x = g.vertices[v];
  return {x.offset, x.eps, x.phi};
}

// Extend psi from the seeded vertices along edges in both directions.
bool propagate(const CrystalGraph& g1, const CrystalGraph& g2, std::vector<int>& psi, std::vector<int>& inv,
               std::deque<int> queue) {
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    const int w = psi[v];
    for (const auto& e : g1.edges) {
      int next = -1, target = -1;
      if (e.from == v) {
        auto t = g2.f(w, e.il);
        if (!t) return false;
        next = e.to;
        target = *t;
      } else if (e.to == v) {
        auto t = g2.e(w, e.il);
        if (!t) return false;
        next = e.from;
        target = *t;
      } else {
        continue;
      }
      if (psi[next] == -1) {
        if (inv[target] != -1 || signature(g1, next) != signature(g2, target)) return false;
        psi[next] = target;
        inv[target] = next;
        queue.push_back(next);
      } else if (psi[next] != target) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

std::optional<std::vector<int>> crystal_isomorphic(const CrystalGraph& g1, const CrystalGraph& g2) {
  if (g1.vertices.size() != g2.vertices.size() || g1.edges.size() != g2.edges.size()) return std::nullopt;
  if (!(g1.datum == g2.datum)) return std::nullopt;
  const std::size_t n = g1.vertices.size();
  std::vector<int> s1 = g1.sources(), s2 = g2.sources();
  if (s1.size() != s2.size()) return std::nullopt;
  std::optional<std::vector<int>> found;
  std::function<void(std::size_t, std::vector<int>, std::vector<int>)> rec = [&](std::size_t k, std::vector<int> psi,
                                                                                   std::vector<int> inv) {
    if (found) return;
    if (k == s1.size()) {
      if (std::find(psi.begin(), psi.end(), -1) == psi.end()) found = psi;
      return;
    }
    const int v = s1[k];
    if (psi[v] != -1) {
      rec(k + 1, psi, inv);
      return;
    }
    for (int w : s2) {
      if (inv[w] != -1 || signature(g1, v) != signature(g2, w)) continue;
      std::vector<int> p = psi, q = inv;
      p[v] = w;
      q[w] = v;
      if (propagate(g1, g2, p, q, {v})) rec(k + 1, p, q);
      if (found) return;
    }
  };
  rec(0, std::vector<int>(n, -1), std::vector<int>(n, -1));
  if (found && !morphism_check(g1, g2, *found, true).ok()) return std::nullopt;
  return found;
}

}  // namespace bbcrystal
