#include "bbcrystal/lattices.hpp"

#include <algorithm>

namespace bbcrystal {

Vec A0Lattice::coordinates(const Vec& v) const {
  const std::size_t n = dim();
  Vec x(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t r = pivot_rows[k];
    RatFunc s = v[r];
    for (std::size_t j = 0; j < k; ++j)
      if (!x[j].is_zero() && !basis(r, j).is_zero()) s -= x[j] * basis(r, j);
    x[k] = s / basis(r, k);
  }
  return x;
}

bool A0Lattice::contains(const Vec& v) const {
  for (const RatFunc& c : coordinates(v))
    if (ord0(c) < 0) return false;
  return true;
}

QVec A0Lattice::residue(const Vec& v) const {
  QVec out;
  for (const RatFunc& c : coordinates(v)) out.push_back(ev0(c));
  return out;
}

A0Lattice dvr_reduce(const std::vector<Vec>& generators, std::size_t dim) {
  std::vector<Vec> cols;
  for (const Vec& g : generators)
    if (!is_zero(g)) cols.push_back(g);
  std::vector<char> alive(cols.size(), 1), used(dim, 0);
  A0Lattice lat;
  std::vector<Vec> basis;
  for (std::size_t k = 0; k < dim; ++k) {
    long best = kOrdInfinity;
    std::size_t bc = 0, br = 0;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (!alive[c]) continue;
      for (std::size_t r = 0; r < dim; ++r) {
        if (used[r] || cols[c][r].is_zero()) continue;
        const long o = ord0(cols[c][r]);
        if (o < best) {
          best = o;
          bc = c;
          br = r;
        }
      }
    }
    if (best == kOrdInfinity) throw RankDeficient("dvr_reduce: generators span a proper subspace");
    const Vec& p = cols[bc];
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (!alive[c] || c == bc || cols[c][br].is_zero()) continue;
      const RatFunc f = cols[c][br] / p[br];
      for (std::size_t r = 0; r < dim; ++r)
        if (!used[r] && !p[r].is_zero()) cols[c][r] -= f * p[r];
    }
    alive[bc] = 0;
    used[br] = 1;
    basis.push_back(p);
    lat.pivot_rows.push_back(br);
  }
  lat.basis = Mat::from_columns(basis, dim);
  return lat;
}

bool same_lattice(const A0Lattice& a, const A0Lattice& b) {
  if (a.dim() != b.dim()) return false;
  for (std::size_t k = 0; k < a.dim(); ++k)
    if (!a.contains(b.basis.col(k)) || !b.contains(a.basis.col(k))) return false;
  return true;
}

CrystalData build_crystal(AmbientPtr amb, int H) { return build_crystal(std::make_shared<KashiwaraOps>(amb), H); }

CrystalData build_crystal(std::shared_ptr<KashiwaraOps> ops, int H) {
  CrystalData c;
  c.amb = ops->ambient_ptr();
  c.ops = ops;
  c.H = H;
  const Ambient& amb = *c.amb;
  const BCDatum& d = amb.datum();
  c.graph.datum = d;
  c.graph.dom = amb.kind() == AmbientKind::Highest ? amb.dom() : std::vector<int>(d.rank(), 0);
  const auto letters = iinf_up_to(d, H);
  for (const Offset& beta : offsets_up_to(d.rank(), H)) {
    const std::size_t n = amb.dim(beta);
    if (n == 0) continue;
    if (height(beta) == 0) {
      A0Lattice lat;
      lat.beta = beta;
      lat.basis = Mat::identity(1);
      lat.pivot_rows = {0};
      c.lattices.emplace(beta, std::move(lat));
      c.at[beta].push_back(c.graph.add_vertex(beta));
      c.lifts.push_back({RatFunc(1)});
      c.residues.push_back({mpq_class(1)});
      continue;
    }
    std::vector<Vec> gens;
    for (const IndexPair& il : letters) {
      const Offset src = beta - d.alpha(il.i, il.l);
      if (!nonnegative(src) || !c.lattices.count(src)) continue;
      const Mat img = ops->ftilde_matrix(il, src) * c.lattices.at(src).basis;
      for (std::size_t k = 0; k < img.cols(); ++k) gens.push_back(img.col(k));
    }
    A0Lattice lat = dvr_reduce(gens, n);
    lat.beta = beta;
    auto& here = c.at[beta];
    for (const IndexPair& il : letters) {
      const Offset src = beta - d.alpha(il.i, il.l);
      if (!nonnegative(src) || !c.at.count(src)) continue;
      for (int b : c.at.at(src)) {
        Vec w = ops->ftilde(il, src, c.lifts[b]);
        QVec res = lat.residue(w);
        if (std::all_of(res.begin(), res.end(), [](const mpq_class& x) { return x == 0; })) continue;
        int target = -1;
        for (int v : here)
          if (c.residues[v] == res) target = v;
        if (target < 0) {
          target = c.graph.add_vertex(beta);
          here.push_back(target);
          c.lifts.push_back(std::move(w));
          c.residues.push_back(std::move(res));
        }
        c.graph.add_edge(b, target, il);
      }
    }
    c.lattices.emplace(beta, std::move(lat));
  }
  c.graph.assign_eps_phi();
  return c;
}

namespace {

bool is_zero_q(const QVec& v) {
  return std::all_of(v.begin(), v.end(), [](const mpq_class& x) { return x == 0; });
}

// Vertex at beta with residue res, -1 if none, -2 if res is zero.
int find_vertex(const CrystalData& c, const Offset& beta, const QVec& res) {
  if (is_zero_q(res)) return -2;
  auto it = c.at.find(beta);
  if (it == c.at.end()) return -1;
  for (int v : it->second)
    if (c.residues[v] == res) return v;
  return -1;
}

}  // namespace

Report check_crystal_lattice(const CrystalData& c) {
  Report r;
  const BCDatum& d = c.amb->datum();
  for (const auto& [beta, lat] : c.lattices) {
    const std::string at = " at " + to_string(beta);
    if (lat.dim() != c.amb->dim(beta)) r.add("lattice rank != dim" + at);
    if (c.graph.count_at(beta) != lat.dim()) r.add("|B_beta| != dim" + at);
    QMat res;
    for (int v : c.at.at(beta)) res.push_back(c.residues[v]);
    if (qrank(res) != res.size()) r.add("residues are not Q-independent" + at);
    for (const IndexPair& il : iinf_up_to(d, c.H)) {
      const Offset up = beta + d.alpha(il.i, il.l);
      const Offset down = beta - d.alpha(il.i, il.l);
      if (height(up) <= c.H && c.lattices.count(up)) {
        const Mat img = c.ops->ftilde_matrix(il, beta) * lat.basis;
        for (std::size_t k = 0; k < img.cols(); ++k)
          if (!c.lattices.at(up).contains(img.col(k))) r.add("f~" + to_string(il) + " L not in L" + at);
      }
      if (nonnegative(down)) {
        const Mat img = c.ops->etilde_matrix(il, beta) * lat.basis;
        if (!c.lattices.count(down)) {
          if (!img.is_zero()) r.add("e~" + to_string(il) + " L lands in a zero space" + at);
          continue;
        }
        for (std::size_t k = 0; k < img.cols(); ++k)
          if (!c.lattices.at(down).contains(img.col(k))) r.add("e~" + to_string(il) + " L not in L" + at);
      }
    }
  }
  return r;
}

Report check_crystal_basis(const CrystalData& c) {
  Report r;
  const BCDatum& d = c.amb->datum();
  for (const auto& v : c.graph.vertices) {
    const Offset& beta = v.offset;
    for (const IndexPair& il : iinf_up_to(d, c.H)) {
      const std::string at = " at vertex " + std::to_string(v.id) + ", " + to_string(il);
      const Offset down = beta - d.alpha(il.i, il.l);
      int e_target = -2;
      if (nonnegative(down) && c.lattices.count(down)) {
        try {
          e_target = find_vertex(c, down, c.lattices.at(down).residue(c.ops->etilde(il, beta, c.lifts[v.id])));
        } catch (const NotInA0&) {
          r.add("e~ b outside L" + at);
          continue;
        }
        if (e_target == -1) r.add("e~ b not in B u {0}" + at);
      }
      auto pred = c.graph.e(v.id, il);
      if ((pred ? *pred : -2) != e_target) r.add("f~ b = b' iff e~ b' = b fails" + at);
      const Offset up = beta + d.alpha(il.i, il.l);
      if (height(up) <= c.H) {
        int f_target = -2;
        if (c.lattices.count(up))
          f_target = find_vertex(c, up, c.lattices.at(up).residue(c.ops->ftilde(il, beta, c.lifts[v.id])));
        auto succ = c.graph.f(v.id, il);
        if ((succ ? *succ : -2) != f_target) r.add("f~ b disagrees with the edge" + at);
      }
    }
  }
  return r;
}

Report check_lemma_euE(const CrystalData& c) {
  Report r;
  if (c.amb->kind() != AmbientKind::Highest) return r;
  const BCDatum& d = c.amb->datum();
  for (const auto& [beta, lat] : c.lattices)
    for (const IndexPair& il : iinf_up_to(d, c.H)) {
      const Offset down = beta - d.alpha(il.i, il.l);
      if (!nonnegative(down)) continue;
      std::vector<Vec> us;
      for (std::size_t k = 0; k < lat.dim(); ++k) us.push_back(lat.basis.col(k));
      for (int v : c.at.at(beta)) us.push_back(c.lifts[v]);
      for (const Vec& u : us) {
        Vec lhs = c.ops->etilde(il, beta, u);
        Vec rhs = c.amb->raise_matrix(il, beta) * u;
        const std::string at = " at " + to_string(beta) + ", " + to_string(il) + " [" + tag_name(d.tag(il.i)) + "]";
        if (!c.lattices.count(down)) {
          if (!is_zero(lhs) || !is_zero(rhs)) r.add("nonzero image in a zero space" + at);
          continue;
        }
        try {
          const A0Lattice& low = c.lattices.at(down);
          if (low.residue(lhs - rhs) != QVec(low.dim())) r.add("e~ u != E u mod qL" + at);
        } catch (const NotInA0&) {
          r.add("e~ u - E u outside L" + at);
        }
      }
    }
  return r;
}

}  // namespace bbcrystal
