#include "bbcrystal/ambient.hpp"

#include <algorithm>

namespace bbcrystal {

Ambient::Ambient(const BCDatum& datum, AmbientKind kind, std::vector<int> dom)
    : datum_(datum), kind_(kind), dom_(std::move(dom)) {}

std::shared_ptr<Ambient> Ambient::uminus(const BCDatum& datum) {
  return std::shared_ptr<Ambient>(new Ambient(datum, AmbientKind::Uminus, {}));
}

std::shared_ptr<Ambient> Ambient::highest(const BCDatum& datum, std::vector<int> dom) {
  if (static_cast<int>(dom.size()) != datum.rank()) throw Error("highest: lambda has wrong length");
  for (int x : dom)
    if (x < 0) throw Error("highest: lambda is not dominant");
  return std::shared_ptr<Ambient>(new Ambient(datum, AmbientKind::Highest, std::move(dom)));
}

std::string Ambient::key() const {
  std::string s = kind_ == AmbientKind::Uminus ? "U-" : "V" + to_string(Offset(dom_));
  s += " A=";
  for (const auto& row : datum_.matrix()) s += to_string(Offset(row));
  s += " D=" + to_string(Offset(datum_.symmetrizer()));
  return s;
}

std::vector<IndexPair> Ambient::letters(const Offset& beta) const {
  std::vector<IndexPair> out;
  for (int j = 0; j < rank(); ++j) {
    if (datum_.is_real(j)) {
      if (beta[j] >= 1) out.push_back({j, 1});
    } else {
      for (int k = 1; k <= beta[j]; ++k) out.push_back({j, k});
    }
  }
  return out;
}

RatFunc Ambient::raise_scalar(IndexPair il, const Offset& rest) const {
  if (kind_ == AmbientKind::Uminus) return RatFunc(1);
  const int n = pairing(il.i, rest);
  const int c = 2 * datum_.s(il.i) * il.l;
  RatFunc r;
  if (n >= 0) {
    for (int t = 0; t < n; ++t) r += RatFunc::q_pow(c * t);
  } else {
    for (int t = 1; t <= -n; ++t) r -= RatFunc::q_pow(-c * t);
  }
  return r;
}

NCVec Ambient::raise_word(IndexPair il, const Word& w) const {
  if (w.empty()) return NCVec();
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto key = std::make_pair(il, w);
  auto it = raise_memo_.find(key);
  if (it != raise_memo_.end()) return it->second;
  const IndexPair first = w.front();
  Word rest(w.begin() + 1, w.end());
  NCVec out;
  if (first == il) out.add(rest, raise_scalar(il, word_offset(rest, rank())));
  NCVec inner = raise_word(il, rest);
  if (!inner.is_zero()) {
    RatFunc f = RatFunc::q_pow(-datum_.s(il.i) * first.l * il.l * datum_.a(il.i, first.i));
    out += f * (NCVec::word({first}) * inner);
  }
  raise_memo_.emplace(key, out);
  return out;
}

NCVec Ambient::raise(IndexPair il, const NCVec& v) const {
  NCVec out;
  for (const auto& [w, c] : v.terms()) out += c * raise_word(il, w);
  return out;
}

RatFunc Ambient::word_form(const Word& u, const Word& v) const {
  if (u.empty()) return v.empty() ? RatFunc(1) : RatFunc();
  if (v.empty()) return RatFunc();
  if (word_offset(u, rank()) != word_offset(v, rank())) return RatFunc();
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto key = std::make_pair(u, v);
  auto it = form_memo_.find(key);
  if (it != form_memo_.end()) return it->second;
  Word rest(u.begin() + 1, u.end());
  NCVec raised = raise_word(u.front(), v);
  RatFunc s;
  for (const auto& [w, c] : raised.terms()) {
    RatFunc f = word_form(rest, w);
    if (!f.is_zero()) s += c * f;
  }
  form_memo_.emplace(key, s);
  return s;
}

const WeightSpace& Ambient::space(const Offset& beta) const {
  if (static_cast<int>(beta.size()) != rank() || !nonnegative(beta))
    throw Error("space: invalid offset " + to_string(beta));
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = spaces_.find(beta);
  if (it != spaces_.end()) return it->second;
  WeightSpace ws;
  ws.beta = beta;
  if (height(beta) == 0) {
    ws.reps = {Word{}};
    ws.candidates = {Word{}};
    ws.gram = Mat::identity(1);
    ws.cand_coords = Mat::identity(1);
    return spaces_.emplace(beta, std::move(ws)).first->second;
  }
  for (const IndexPair& jk : letters(beta)) {
    const WeightSpace& lower = space(beta - datum_.alpha(jk.i, jk.l));
    for (const Word& r : lower.reps) ws.candidates.push_back(concat({jk}, r));
  }
  std::sort(ws.candidates.begin(), ws.candidates.end());
  const std::size_t n = ws.candidates.size();
  Mat g(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      g(a, b) = word_form(ws.candidates[a], ws.candidates[b]);
      g(b, a) = g(a, b);
    }
  ColumnEchelon ce = column_echelon(g);
  for (std::size_t p : ce.pivots) ws.reps.push_back(ws.candidates[p]);
  ws.gram = g.select_rows(ce.pivots).select_cols(ce.pivots);
  ws.cand_coords = Mat(ce.pivots.size(), n);
  for (std::size_t k = 0; k < ce.pivots.size(); ++k) ws.cand_coords(k, ce.pivots[k]) = 1;
  for (std::size_t idx = 0; idx < ce.nonpivots.size(); ++idx)
    for (std::size_t k = 0; k < ce.pivots.size(); ++k)
      ws.cand_coords(k, ce.nonpivots[idx]) = ce.coeffs(k, idx);
  return spaces_.emplace(beta, std::move(ws)).first->second;
}

std::size_t Ambient::dim(const Offset& beta) const {
  if (!nonnegative(beta)) return 0;
  return space(beta).dim();
}

Vec Ambient::coords(const Word& w) const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = coords_memo_.find(w);
  if (it != coords_memo_.end()) return it->second;
  const WeightSpace& ws = space(word_offset(w, rank()));
  Vec out(ws.dim());
  if (ws.dim() > 0) {
    auto pos = std::lower_bound(ws.candidates.begin(), ws.candidates.end(), w);
    if (pos != ws.candidates.end() && *pos == w) {
      out = ws.cand_coords.col(pos - ws.candidates.begin());
    } else {
      Word rest(w.begin() + 1, w.end());
      Vec x = coords(rest);
      const WeightSpace& lower = space(word_offset(rest, rank()));
      for (std::size_t m = 0; m < x.size(); ++m) {
        if (x[m].is_zero()) continue;
        Word cand = concat({w.front()}, lower.reps[m]);
        auto cp = std::lower_bound(ws.candidates.begin(), ws.candidates.end(), cand);
        const std::size_t ci = cp - ws.candidates.begin();
        for (std::size_t r = 0; r < out.size(); ++r)
          if (!ws.cand_coords(r, ci).is_zero()) out[r] += x[m] * ws.cand_coords(r, ci);
      }
    }
  }
  coords_memo_.emplace(w, out);
  return out;
}

Vec Ambient::coords(const NCVec& v, const Offset& beta) const {
  Vec out(dim(beta));
  for (const auto& [w, c] : v.terms()) {
    if (word_offset(w, rank()) != beta) throw Error("coords: inhomogeneous vector");
    Vec x = coords(w);
    for (std::size_t r = 0; r < out.size(); ++r)
      if (!x[r].is_zero()) out[r] += c * x[r];
  }
  return out;
}

NCVec Ambient::element(const Vec& x, const Offset& beta) const {
  const WeightSpace& ws = space(beta);
  NCVec v;
  for (std::size_t m = 0; m < x.size(); ++m) v.add(ws.reps[m], x[m]);
  return v;
}

const Mat& Ambient::lower_matrix(IndexPair il, const Offset& beta) const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto key = std::make_pair(il, beta);
  auto it = lower_memo_.find(key);
  if (it != lower_memo_.end()) return it->second;
  const WeightSpace& src = space(beta);
  const WeightSpace& dst = space(beta + datum_.alpha(il.i, il.l));
  Mat m(dst.dim(), src.dim());
  for (std::size_t c = 0; c < src.dim(); ++c) {
    Word cand = concat({il}, src.reps[c]);
    auto cp = std::lower_bound(dst.candidates.begin(), dst.candidates.end(), cand);
    if (cp == dst.candidates.end() || *cp != cand) throw Error("lower_matrix: missing candidate");
    const std::size_t ci = cp - dst.candidates.begin();
    for (std::size_t r = 0; r < dst.dim(); ++r) m(r, c) = dst.cand_coords(r, ci);
  }
  return lower_memo_.emplace(key, std::move(m)).first->second;
}

const Mat& Ambient::raise_matrix(IndexPair il, const Offset& beta) const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto key = std::make_pair(il, beta);
  auto it = raise_mat_memo_.find(key);
  if (it != raise_mat_memo_.end()) return it->second;
  const WeightSpace& src = space(beta);
  Offset target = beta - datum_.alpha(il.i, il.l);
  Mat m;
  if (!nonnegative(target)) {
    m = Mat(0, src.dim());
  } else {
    m = Mat(dim(target), src.dim());
    for (std::size_t c = 0; c < src.dim(); ++c) m.set_col(c, coords(raise_word(il, src.reps[c]), target));
  }
  return raise_mat_memo_.emplace(key, std::move(m)).first->second;
}

RatFunc Ambient::form(const Offset& beta, const Vec& x, const Vec& y) const {
  const WeightSpace& ws = space(beta);
  return dot(x, ws.gram * y);
}

}  // namespace bbcrystal
