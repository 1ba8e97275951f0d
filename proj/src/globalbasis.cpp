#include "bbcrystal/globalbasis.hpp"

#include <algorithm>

namespace bbcrystal {

Vec GlobalBasis::G(int vertex) const {
  const auto& v = crystal->graph.vertices.at(vertex);
  return slices.at(v.offset).G.col(column.at(vertex));
}

Vec GlobalBasis::G_of_residue(const Offset& beta, const QVec& residue) const {
  auto it = slices.find(beta);
  if (it == slices.end()) {
    for (const auto& x : residue)
      if (x != 0) throw Error("G_of_residue: no slice at " + to_string(beta));
    return Vec(crystal->amb->dim(beta));
  }
  const GlobalBasisSlice& s = it->second;
  QMat a(residue.size(), QVec(s.vertices.size()));
  for (std::size_t k = 0; k < s.vertices.size(); ++k) {
    const QVec& r = crystal->residues[s.vertices[k]];
    for (std::size_t row = 0; row < r.size(); ++row) a[row][k] = r[row];
  }
  QMat rhs(residue.size(), QVec(1));
  for (std::size_t row = 0; row < residue.size(); ++row) rhs[row][0] = residue[row];
  bool unique = false;
  auto x = qsolve(a, rhs, &unique);
  if (!x || !unique) throw Error("G_of_residue: residues do not form a basis at " + to_string(beta));
  Vec out(s.G.rows());
  for (std::size_t k = 0; k < s.vertices.size(); ++k)
    if ((*x)[k][0] != 0) out = out + scale(RatFunc((*x)[k][0]), s.G.col(k));
  return out;
}

Mat bar_matrix(const A0Lattice& lattice) {
  Mat b = bar(lattice.basis);
  Mat out(lattice.dim(), lattice.dim());
  for (std::size_t k = 0; k < lattice.dim(); ++k) out.set_col(k, lattice.coordinates(b.col(k)));
  return out;
}

namespace {

bool laurent_in(const ColumnEchelon& ce) {
  for (std::size_t r = 0; r < ce.coeffs.rows(); ++r)
    for (std::size_t c = 0; c < ce.coeffs.cols(); ++c)
      if (!ce.coeffs(r, c).is_laurent()) return false;
  return true;
}

}  // namespace

std::map<Offset, Mat> integral_bases(const KashiwaraOps& ops, int H) {
  const Ambient& amb = ops.ambient();
  const BCDatum& d = amb.datum();
  std::map<Offset, Mat> out;
  for (const Offset& beta : offsets_up_to(d.rank(), H)) {
    const std::size_t n = amb.dim(beta);
    if (n == 0) continue;
    if (height(beta) == 0) {
      out.emplace(beta, Mat::identity(1));
      continue;
    }
    std::vector<Vec> gens;
    for (int i = 0; i < d.rank(); ++i)
      for (int m = 1; m <= beta[i]; ++m) {
        const Offset src = beta - d.alpha(i, m);
        auto it = out.find(src);
        if (it == out.end()) continue;
        const IComposition c{i, {m}};
        for (std::size_t k = 0; k < it->second.cols(); ++k) gens.push_back(ops.apply_monomial(c, src, it->second.col(k)));
      }
    bool done = false;
    for (int attempt = 0; attempt < 2 && !done; ++attempt) {
      if (attempt == 1) std::reverse(gens.begin(), gens.end());
      Mat g = Mat::from_columns(gens, n);
      ColumnEchelon ce = column_echelon(g);
      if (ce.pivots.size() != n) throw NoSolution("integral form does not span at " + to_string(beta));
      if (!laurent_in(ce)) continue;
      out.emplace(beta, g.select_cols(ce.pivots));
      done = true;
    }
    if (!done) throw NoSolution("no greedy A_Q-basis of the integral form at " + to_string(beta));
  }
  return out;
}

namespace {

// Bar-symmetric Laurent y with T y in A_0 and ev0(T y) = rhs, degree <= D.
std::optional<QMat> solve_symmetric(const std::vector<std::vector<std::vector<mpq_class>>>& series, int lo, int D,
                                    int D_series, const QMat& rhs) {
  const std::size_t n = series.size();
  const std::size_t m = n ? series[0].size() : 0;
  // Coefficient of q^e in T(r,s), stored from exponent lo - D_series.
  auto coef = [&](std::size_t r, std::size_t s, int e) -> mpq_class {
    const int idx = e - (lo - D_series);
    if (idx < 0 || idx >= static_cast<int>(series[r][s].size())) return 0;
    return series[r][s][idx];
  };
  const int emin = std::min(lo - D, 0);
  QMat a, b;
  for (std::size_t r = 0; r < n; ++r)
    for (int e = emin; e <= 0; ++e) {
      QVec row(m * (D + 1));
      for (std::size_t s = 0; s < m; ++s)
        for (int k = 0; k <= D; ++k)
          row[s * (D + 1) + k] = k == 0 ? coef(r, s, e) : coef(r, s, e - k) + coef(r, s, e + k);
      a.push_back(std::move(row));
      QVec rr(rhs[0].size());
      if (e == 0) rr = rhs[r];
      b.push_back(std::move(rr));
    }
  bool unique = false;
  auto x = qsolve(a, b, &unique);
  if (!x) return std::nullopt;
  if (!unique) throw NoSolution("balanced solve is not unique");
  return x;
}

}  // namespace

GlobalBasis solve_global(std::shared_ptr<const CrystalData> crystal) {
  GlobalBasis gb;
  gb.crystal = crystal;
  gb.column.assign(crystal->graph.vertices.size(), 0);
  const auto integral = integral_bases(*crystal->ops, crystal->H);
  for (const auto& [beta, lat] : crystal->lattices) {
    GlobalBasisSlice s;
    s.beta = beta;
    s.integral = integral.at(beta);
    s.barmat = bar_matrix(lat);
    s.vertices = crystal->at.at(beta);
    const std::size_t n = lat.dim();
    Mat T(n, n);
    for (std::size_t k = 0; k < n; ++k) T.set_col(k, lat.coordinates(s.integral.col(k)));
    int lo = 0;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (!T(r, c).is_zero()) lo = std::min(lo, ord0(T(r, c)));
    QMat rhs(n, QVec(s.vertices.size()));
    for (std::size_t k = 0; k < s.vertices.size(); ++k)
      for (std::size_t r = 0; r < n; ++r) rhs[r][k] = crystal->residues[s.vertices[k]][r];
    const int Dmax = 2 * crystal->H + 8;
    std::vector<std::vector<std::vector<mpq_class>>> series(n, std::vector<std::vector<mpq_class>>(n));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) series[r][c] = series_at_zero(T(r, c), lo - Dmax, Dmax);
    std::optional<QMat> y;
    int D = 0;
    for (; D <= Dmax && !y; ++D) y = solve_symmetric(series, lo, D, Dmax, rhs);
    if (!y) throw NoSolution("no bar-invariant solution at " + to_string(beta));
    s.degree = D - 1;
    const int Dk = s.degree;
    s.coeffs = Mat(n, s.vertices.size());
    for (std::size_t c = 0; c < s.vertices.size(); ++c)
      for (std::size_t j = 0; j < n; ++j) {
        RatFunc v;
        for (int k = 0; k <= Dk; ++k) {
          const mpq_class& x = (*y)[j * (Dk + 1) + k][c];
          if (x == 0) continue;
          v += k == 0 ? RatFunc(x) : RatFunc(x) * (RatFunc::q_pow(k) + RatFunc::q_pow(-k));
        }
        s.coeffs(j, c) = v;
      }
    s.G = s.integral * s.coeffs;
    for (std::size_t k = 0; k < s.vertices.size(); ++k) gb.column[s.vertices[k]] = k;
    gb.slices.emplace(beta, std::move(s));
  }
  return gb;
}

Report verify_global(const GlobalBasis& gb) {
  Report r;
  const CrystalData& c = *gb.crystal;
  for (const auto& [beta, s] : gb.slices) {
    const std::string at = " at " + to_string(beta);
    const A0Lattice& lat = c.lattices.at(beta);
    if (!(s.barmat * bar(s.barmat) == Mat::identity(lat.dim()))) r.add("bar matrix not involutive" + at);
    if (!(bar(s.integral) == s.integral)) r.add("integral basis not bar-invariant" + at);
    QMat res;
    for (std::size_t k = 0; k < s.vertices.size(); ++k) {
      const Vec g = s.G.col(k);
      const std::string who = " for vertex " + std::to_string(s.vertices[k]) + at;
      if (bar(g) != g) r.add("G not bar-invariant" + who);
      for (std::size_t j = 0; j < s.coeffs.rows(); ++j)
        if (!s.coeffs(j, k).is_laurent()) r.add("non-Laurent coordinate" + who);
      for (const RatFunc& x : lat.coordinates(g - c.lifts[s.vertices[k]]))
        if (ord0(x) < 1) {
          r.add("G not congruent to its residue mod qL" + who);
          break;
        }
      try {
        res.push_back(lat.residue(g));
      } catch (const NotInA0&) {
        r.add("G outside L" + who);
      }
    }
    if (qrank(res) != lat.dim()) r.add("G mod q is not a basis of L/qL" + at);
  }
  return r;
}

EilReport verify_Eil_bil(const GlobalBasis& gb, IndexPair il) {
  EilReport out;
  const CrystalData& c = *gb.crystal;
  const Ambient& amb = *c.amb;
  const BCDatum& d = amb.datum();
  if (d.is_real(il.i)) throw Error("verify_Eil_bil: index is real");
  for (const auto& v : c.graph.vertices) {
    const Offset& beta = v.offset;
    const Vec g = gb.G(v.id);
    const std::string at = " at vertex " + std::to_string(v.id) + ", " + to_string(il);
    ++out.checked;
    const Offset down = beta - d.alpha(il.i, il.l);
    if (nonnegative(down)) {
      const Vec eg = amb.raise_matrix(il, beta) * g;
      auto pred = c.graph.e(v.id, il);
      const Vec target = pred ? gb.G(*pred) : Vec(amb.dim(down));
      if (eg != target) out.a.add("E G(b) != G(e~ b)" + at);
      if (c.lattices.count(down)) {
        try {
          if (c.lattices.at(down).residue(eg - target) != QVec(amb.dim(down)))
            out.a_mod_q.add("E G(b) != G(e~ b) mod qL" + at);
        } catch (const NotInA0&) {
          out.a_mod_q.add("E G(b) - G(e~ b) outside L" + at);
        }
      } else if (!is_zero(eg)) {
        out.a_mod_q.add("E G(b) nonzero in a zero space" + at);
      }
    }
    const Offset up = beta + d.alpha(il.i, il.l);
    if (height(up) > c.H) continue;
    const Vec bg = amb.lower_matrix(il, beta) * g;
    Vec rhs(amb.dim(up));
    if (!d.is_iso(il.i)) {
      auto succ = c.graph.f(v.id, il);
      if (succ) rhs = gb.G(*succ);
    } else {
      try {
        const StringDecomposition sd = c.ops->decompose(il.i, beta, g);
        for (const StringTerm& t : sd.terms) {
          const Vec bc = c.ops->apply_monomial(t.c, t.beta, t.u);
          const Vec f = c.ops->ftilde(il, beta, bc);
          const long cl = std::count(t.c.parts.begin(), t.c.parts.end(), il.l);
          if (!c.lattices.count(up)) {
            if (!is_zero(f)) out.b.add("f~ b_c nonzero in a zero space" + at);
            continue;
          }
          rhs = rhs + scale(RatFunc(cl + 1), gb.G_of_residue(up, c.lattices.at(up).residue(f)));
        }
      } catch (const NotInA0&) {
        out.b.add("string component outside L" + at);
        continue;
      }
    }
    if (bg != rhs) out.b.add("b_il G(b) != expected" + at);
  }
  return out;
}

}  // namespace bbcrystal
