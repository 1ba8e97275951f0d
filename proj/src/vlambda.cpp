#include "bbcrystal/vlambda.hpp"

namespace bbcrystal {

QuotientBasis quotient_basis(const Ambient& amb, const Offset& alpha) {
  const WeightSpace& ws = amb.space(alpha);
  return {alpha, ws.reps, ws.gram};
}

namespace {

NCVec serre_element(const BCDatum& d, int i, IndexPair jl) {
  const int n = 1 - jl.l * d.a(i, jl.i);
  NCVec out;
  for (int r = 0; r <= n; ++r) {
    NCVec t = divided_power(d, i, r) * NCVec::word({jl}) * divided_power(d, i, n - r);
    out += (r % 2 ? RatFunc(-1) : RatFunc(1)) * t;
  }
  return out;
}

bool vanishes(const Ambient& amb, const NCVec& v, const Offset& beta) {
  if (v.is_zero()) return true;
  if (height(beta) == 0) return false;
  return is_zero(amb.coords(v, beta));
}

}  // namespace

Report check_relations(const Ambient& amb, int H) {
  const BCDatum& d = amb.datum();
  Report r;
  const auto letters = iinf_up_to(d, H);
  for (int i = 0; i < d.rank(); ++i) {
    if (!d.is_real(i)) continue;
    for (const IndexPair& jl : letters) {
      if (jl.i == i) continue;
      const int n = 1 - jl.l * d.a(i, jl.i);
      if (n + jl.l > H) continue;
      Offset beta = d.alpha(i, n) + d.alpha(jl.i, jl.l);
      if (!vanishes(amb, serre_element(d, i, jl), beta))
        r.add("serre relation for i=" + std::to_string(i) + ", " + to_string(jl) + " not in radical");
    }
  }
  for (const IndexPair& a : letters)
    for (const IndexPair& b : letters) {
      if (!(a < b) || d.a(a.i, b.i) != 0 || a.l + b.l > H) continue;
      NCVec c = NCVec::word({a, b}) - NCVec::word({b, a});
      if (!vanishes(amb, c, d.alpha(a.i, a.l) + d.alpha(b.i, b.l)))
        r.add("commutation " + to_string(a) + " " + to_string(b) + " not in radical");
    }
  return r;
}

Vec E_action(const Ambient& amb, IndexPair il, const Offset& beta, const Vec& v) {
  const Mat& m = amb.raise_matrix(il, beta);
  return m * v;
}

RatFunc contravariant_form(const Ambient& amb, const Word& u, const Word& v) { return amb.word_form(u, v); }

const WeightSpace& vlambda_basis(const Ambient& amb, const Offset& beta) { return amb.space(beta); }

Report check_oint(const Ambient& amb, int H) {
  const BCDatum& d = amb.datum();
  Report r;
  for (const Offset& beta : offsets_up_to(d.rank(), H)) {
    if (amb.dim(beta) == 0) continue;
    for (int i = 0; i < d.rank(); ++i) {
      if (!d.is_imaginary(i)) continue;
      const int p = amb.pairing(i, beta);
      const std::string at = " at offset " + to_string(beta) + ", i=" + std::to_string(i);
      if (p < 0) r.add("(d) negative pairing" + at);
      for (int l = 1; height(beta) + l <= H; ++l) {
        if (p == 0 && !amb.lower_matrix({i, l}, beta).is_zero()) r.add("(e) b_il nonzero, l=" + std::to_string(l) + at);
      }
      for (int l = 1; l <= height(beta); ++l) {
        if (p <= -l * d.a(i, i) && !amb.raise_matrix({i, l}, beta).is_zero())
          r.add("(f) a_il nonzero, l=" + std::to_string(l) + at);
      }
    }
  }
  return r;
}

Report check_radical_submodule(const Ambient& amb, int H) {
  const BCDatum& d = amb.datum();
  Report r;
  for (const Offset& beta : offsets_up_to(d.rank(), H)) {
    const WeightSpace& ws = amb.space(beta);
    for (const IndexPair& il : amb.letters(beta)) {
      const Offset lower = beta - d.alpha(il.i, il.l);
      const Mat& lm = amb.lower_matrix(il, lower);
      const Mat& em = amb.raise_matrix(il, beta);
      // (b_il x, y) = (x, E_il y) for reps x at lower, y at beta.
      Mat lhs = lm.transpose() * ws.gram;
      Mat rhs = amb.space(lower).gram * em;
      if (!(lhs == rhs)) r.add("contravariance fails for " + to_string(il) + " at " + to_string(beta));
    }
    // Radical closure: every candidate maps through coordinates consistently.
    for (std::size_t c = 0; c < ws.candidates.size(); ++c) {
      Vec x = ws.cand_coords.col(c);
      Vec g = ws.gram * x;
      Vec direct(ws.dim());
      for (std::size_t k = 0; k < ws.dim(); ++k) direct[k] = amb.word_form(ws.reps[k], ws.candidates[c]);
      if (g != direct) r.add("radical not a submodule at " + to_string(beta));
    }
  }
  return r;
}

Report check_bar_stability(const Ambient& amb, int H) {
  Report r;
  for (const Offset& beta : offsets_up_to(amb.rank(), H)) {
    const WeightSpace& ws = amb.space(beta);
    if (!(bar(ws.cand_coords) == ws.cand_coords)) r.add("radical not bar-stable at " + to_string(beta));
  }
  return r;
}

}  // namespace bbcrystal
