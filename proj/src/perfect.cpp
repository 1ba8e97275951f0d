#include "bbcrystal/perfect.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace bbcrystal {

bool EndoFamily::in_range(const Offset& beta) const {
  return nonnegative(beta) && height(beta) <= H && dims.count(beta) > 0;
}

std::size_t EndoFamily::dim(const Offset& beta) const {
  auto it = dims.find(beta);
  return it == dims.end() ? 0 : it->second;
}

Offset EndoFamily::target(IndexPair il, const Offset& beta) const {
  const Offset a = datum.alpha(il.i, il.l);
  return kind == FamilyKind::Lower ? beta + a : beta - a;
}

const Mat* EndoFamily::matrix(IndexPair il, const Offset& beta) const {
  auto it = mats.find({il, beta});
  return it == mats.end() ? nullptr : &it->second;
}

Vec EndoFamily::apply(IndexPair il, const Offset& beta, const Vec& v) const {
  const Mat* m = matrix(il, beta);
  if (m == nullptr) throw Error("family applied outside the truncation at " + to_string(beta));
  return *m * v;
}

EndoFamily lower_family(const KashiwaraOps& ops, int H) {
  const Ambient& amb = ops.ambient();
  EndoFamily fam;
  fam.kind = FamilyKind::Lower;
  fam.datum = amb.datum();
  fam.dom = amb.dom();
  fam.H = H;
  for (const Offset& beta : offsets_up_to(amb.rank(), H)) fam.dims[beta] = amb.dim(beta);
  for (IndexPair il : fam.indices())
    for (const auto& [beta, n] : fam.dims) {
      const Offset t = fam.target(il, beta);
      if (!fam.in_range(t)) continue;
      const std::size_t m = fam.dim(t);
      fam.mats[{il, beta}] = (n == 0 || m == 0) ? Mat(m, n) : ops.ftilde_matrix(il, beta);
    }
  return fam;
}

EndoFamily raising_family(const Ambient& amb, int H) {
  EndoFamily fam;
  fam.kind = FamilyKind::Upper;
  fam.datum = amb.datum();
  fam.dom = amb.dom();
  fam.H = H;
  for (const Offset& beta : offsets_up_to(amb.rank(), H)) fam.dims[beta] = amb.dim(beta);
  for (IndexPair il : fam.indices())
    for (const auto& [beta, n] : fam.dims) {
      const Offset t = fam.target(il, beta);
      if (!fam.in_range(t)) continue;
      const std::size_t m = fam.dim(t);
      fam.mats[{il, beta}] = (n == 0 || m == 0) ? Mat(m, n) : amb.raise_matrix(il, beta);
    }
  return fam;
}

Report check_weak(const EndoFamily& fam) {
  Report r;
  for (const auto& [beta, n] : fam.dims)
    if (!nonnegative(beta) || height(beta) > fam.H) r.add("(ii) weight outside the support: " + to_string(beta));
  for (const auto& [key, m] : fam.mats) {
    const auto& [il, beta] = key;
    const Offset t = fam.target(il, beta);
    if (!fam.in_range(t)) {
      r.add("(iii) " + to_string(il) + " leaves the support from " + to_string(beta));
      continue;
    }
    if (m.rows() != fam.dim(t) || m.cols() != fam.dim(beta))
      r.add("(iii) " + to_string(il) + " at " + to_string(beta) + " does not map V_mu to V_{mu -+ l alpha_i}");
  }
  return r;
}

Vec LabeledBasis::vec(int id) const {
  const auto& [beta, k] = where.at(id);
  return vectors.at(beta).col(k);
}

int LabeledBasis::add(const Offset& beta, const Vec& v, std::string label) {
  const int id = static_cast<int>(where.size());
  auto it = vectors.find(beta);
  std::size_t col = 0;
  if (it == vectors.end()) {
    vectors.emplace(beta, Mat::from_columns({v}, v.size()));
  } else {
    col = it->second.cols();
    it->second = it->second.hcat(Mat::from_columns({v}, v.size()));
  }
  ids[beta].push_back(id);
  where.emplace_back(beta, col);
  labels.push_back(label.empty() ? "b" + std::to_string(id) : std::move(label));
  return id;
}

LabeledBasis basis_from_global(const GlobalBasis& gb) {
  LabeledBasis out;
  const CrystalGraph& g = gb.crystal->graph;
  for (const auto& v : g.vertices) out.add(v.offset, gb.G(v.id), v.label.empty() ? "G" + std::to_string(v.id) : "G(" + v.label + ")");
  return out;
}

Report check_basis(const EndoFamily& fam, const LabeledBasis& basis) {
  Report r;
  for (const auto& [beta, n] : fam.dims) {
    auto it = basis.vectors.find(beta);
    const std::size_t have = it == basis.vectors.end() ? 0 : it->second.cols();
    if (have != n) {
      r.add("(i) " + std::to_string(have) + " elements at " + to_string(beta) + ", dimension " + std::to_string(n));
      continue;
    }
    if (n > 0 && rank(it->second) != n) r.add("(i) dependent elements at " + to_string(beta));
  }
  for (const auto& [beta, m] : basis.vectors)
    if (!fam.dims.count(beta) && m.cols() > 0) r.add("(i) elements outside the support at " + to_string(beta));
  return r;
}

// ---------------------------------------------------------------- filtration

const Subspace& Filtration::level(IndexPair il, const Offset& beta, int n) const {
  auto key = std::make_tuple(il, beta, n);
  auto it = levels_.find(key);
  if (it != levels_.end()) return it->second;
  const std::size_t dim = fam_.dim(beta);
  Subspace s(dim);
  if (fam_.kind == FamilyKind::Lower) {
    if (n == 0) {
      s = Subspace::full(dim);
    } else {
      const Offset src = beta - fam_.datum.alpha(il.i, il.l);
      if (nonnegative(src) && dim > 0 && fam_.dim(src) > 0) {
        const Mat* m = fam_.matrix(il, src);
        if (m == nullptr) throw Error("filtration: missing matrix at " + to_string(src));
        s = image(*m, level(il, src, n - 1));
      }
    }
  } else if (n > 0 && dim > 0) {
    Mat comp = Mat::identity(dim);
    Offset cur = beta;
    bool vanishes = false;
    for (int k = 0; k < n && !vanishes; ++k) {
      const Offset t = fam_.target(il, cur);
      if (!fam_.in_range(t) || fam_.dim(t) == 0) {
        vanishes = true;
        break;
      }
      comp = *fam_.matrix(il, cur) * comp;
      cur = t;
    }
    if (vanishes || comp.is_zero()) {
      s = Subspace::full(dim);
    } else {
      Mat k = kernel(comp);
      if (k.cols() > 0) s = Subspace::span(k);
    }
  }
  return levels_.emplace(key, std::move(s)).first->second;
}

int Filtration::depth(IndexPair il, const Offset& beta, const Vec& v) const {
  if (is_zero(v)) throw Error("depth of the zero vector");
  if (fam_.kind == FamilyKind::Upper) return d_upper(fam_, il, beta, v);
  int n = 0;
  while (level(il, beta, n + 1).contains(v)) ++n;
  return n;
}

int d_lower(const Filtration& filt, IndexPair il, const Offset& beta, const Vec& v) {
  return filt.depth(il, beta, v);
}

int d_upper(const EndoFamily& fam, IndexPair il, const Offset& beta, const Vec& v) {
  int n = 0;
  Vec w = v;
  Offset cur = beta;
  for (;;) {
    const Offset t = fam.target(il, cur);
    if (!fam.in_range(t) || fam.dim(t) == 0) break;
    w = fam.apply(il, cur, w);
    if (is_zero(w)) break;
    ++n;
    cur = t;
  }
  return n;
}

std::optional<Mat> Filtration::monomial(const std::vector<IndexPair>& seq, const std::vector<int>& a,
                                        const Offset& beta, Offset* source) const {
  Offset src = beta;
  for (std::size_t k = 0; k < a.size(); ++k) src = src - fam_.datum.alpha(seq[k].i, seq[k].l * a[k]);
  if (source) *source = src;
  if (!nonnegative(src)) return std::nullopt;
  Mat m = Mat::identity(fam_.dim(src));
  Offset cur = src;
  for (std::size_t k = a.size(); k-- > 0;)
    for (int t = 0; t < a[k]; ++t) {
      const Offset next = fam_.target(seq[k], cur);
      const Mat* f = fam_.matrix(seq[k], cur);
      if (f == nullptr) throw Error("monomial: missing matrix at " + to_string(cur));
      m = *f * m;
      cur = next;
    }
  return m;
}

namespace {

Subspace add_image(const Subspace& s, const std::optional<Mat>& m) {
  if (!m || m->cols() == 0 || m->is_zero()) return s;
  return s + Subspace::span(*m);
}

std::vector<IndexPair> unroll(const GoodSequence& seq, std::size_t n) {
  std::vector<IndexPair> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(seq.at(k));
  return out;
}

}  // namespace

Subspace Filtration::v_gt(const std::vector<IndexPair>& seq, const std::vector<int>& a, const Offset& beta) const {
  Subspace s(fam_.dim(beta));
  for (std::size_t k = 0; k < seq.size(); ++k) {
    std::vector<IndexPair> pre(seq.begin(), seq.begin() + k + 1);
    std::vector<int> pa(k + 1, 0);
    for (std::size_t j = 0; j <= k && j < a.size(); ++j) pa[j] = a[j];
    pa[k] += 1;
    s = add_image(s, monomial(pre, pa, beta, nullptr));
  }
  return s;
}

Subspace Filtration::v_ge(const std::vector<IndexPair>& seq, const std::vector<int>& a, const Offset& beta) const {
  std::vector<IndexPair> pre(seq.begin(), seq.begin() + std::min(seq.size(), a.size()));
  std::vector<int> pa(a.begin(), a.begin() + pre.size());
  return add_image(v_gt(seq, a, beta), monomial(pre, pa, beta, nullptr));
}

const Subspace& Filtration::lowered(const Offset& beta) const {
  auto it = lowered_.find(beta);
  if (it != lowered_.end()) return it->second;
  Subspace s(fam_.dim(beta));
  for (IndexPair il : fam_.indices()) s = s + level(il, beta, 1);
  return lowered_.emplace(beta, std::move(s)).first->second;
}

// ---------------------------------------------------------------- certificates

std::optional<int> PerfectCertificate::bold(int b, IndexPair il) const {
  auto it = maps.find({b, il});
  if (it == maps.end()) return std::nullopt;
  return it->second.target;
}

void PerfectCertificate::index_preimages() {
  preimage.clear();
  for (const auto& [key, e] : maps)
    if (e.target >= 0) preimage.emplace(std::make_pair(e.target, key.second), key.first);
}

std::optional<int> e_bold(const PerfectCertificate& cert, int b, IndexPair il) {
  auto it = cert.preimage.find({b, il});
  if (it == cert.preimage.end()) return std::nullopt;
  return it->second;
}

namespace {

// c != 0 with w - c t in s.
std::optional<RatFunc> absorb(const Subspace& s, const Vec& t, const Vec& w) {
  if (s.contains(t)) return s.contains(w) ? std::optional<RatFunc>(RatFunc(1)) : std::nullopt;
  Mat m = s.basis().hcat(Mat::from_columns({t}, t.size()));
  auto y = solve(m, w);
  if (!y || y->back().is_zero()) return std::nullopt;
  return y->back();
}

class BasisCoords {
 public:
  explicit BasisCoords(const LabeledBasis& b) : b_(b) {}
  Vec operator()(const Offset& beta, const Vec& w) const {
    auto it = inv_.find(beta);
    if (it == inv_.end()) it = inv_.emplace(beta, inverse(b_.vectors.at(beta))).first;
    return it->second * w;
  }

 private:
  const LabeledBasis& b_;
  mutable std::map<Offset, Mat> inv_;
};

std::string name(const LabeledBasis& basis, int b) { return basis.labels.at(b); }

// Clause (iii) on the truncation: tuples over the in-range indices are
// compared at equal weight; tuples that vanish are only compared when no
// index leaves the truncation.
Report check_injective(const EndoFamily& fam, const LabeledBasis& basis, const PerfectCertificate& cert,
                       const std::string& clause) {
  Report r;
  const auto idx = fam.indices();
  std::vector<std::vector<int>> tuples(basis.size());
  std::vector<bool> complete(basis.size(), true), nonzero(basis.size(), false);
  for (int b = 0; b < static_cast<int>(basis.size()); ++b)
    for (IndexPair il : idx) {
      auto t = cert.bold(b, il);
      if (!t) {
        complete[b] = false;
        tuples[b].push_back(-2);
        continue;
      }
      tuples[b].push_back(*t);
      if (*t >= 0) nonzero[b] = true;
    }
  std::vector<int> null_complete;
  for (const auto& [beta, ids] : basis.ids) {
    for (std::size_t x = 0; x < ids.size(); ++x)
      for (std::size_t y = x + 1; y < ids.size(); ++y) {
        const int a = ids[x], b = ids[y];
        if (tuples[a] != tuples[b]) continue;
        if (!nonzero[a] && !(complete[a] && complete[b])) continue;
        r.add(clause + " " + name(basis, a) + " and " + name(basis, b) + " have the same targets for every (i,l)");
      }
    for (int b : ids)
      if (!nonzero[b] && complete[b]) null_complete.push_back(b);
  }
  std::set<Offset> seen;
  for (int b : null_complete) {
    if (!seen.insert(basis.offset(b)).second) continue;
    for (int c : null_complete)
      if (basis.offset(c) != basis.offset(b) && c > b)
        r.add(clause + " " + name(basis, b) + " and " + name(basis, c) + " are both sent to 0 by every index");
  }
  return r;
}

}  // namespace

PerfectCertificate certify_lower(const Filtration& filt, const LabeledBasis& basis) {
  const EndoFamily& fam = filt.family();
  PerfectCertificate cert;
  cert.kind = FamilyKind::Lower;
  cert.refutation.merge(check_basis(fam, basis));
  if (!cert.refutation.ok()) return cert;
  BasisCoords coords(basis);
  for (int b = 0; b < static_cast<int>(basis.size()); ++b) {
    const Offset& beta = basis.offset(b);
    const Vec v = basis.vec(b);
    for (IndexPair il : fam.indices()) {
      const int d = filt.depth(il, beta, v);
      cert.depth[{b, il}] = d;
      const Offset t = fam.target(il, beta);
      if (!fam.in_range(t)) continue;
      const Vec w = fam.apply(il, beta, v);
      const Subspace& deep = filt.level(il, t, d + 2);
      CertEntry e;
      e.level = d + 2;
      if (deep.contains(w)) {
        e.residual = w;
        cert.maps[{b, il}] = e;
        continue;
      }
      const Vec x = coords(t, w);
      const auto& ids = basis.ids.at(t);
      bool found = false;
      for (std::size_t k = 0; k < ids.size() && !found; ++k) {
        if (x[k].is_zero()) continue;
        Vec res = w - scale(x[k], basis.vec(ids[k]));
        if (!deep.contains(res)) continue;
        e.target = ids[k];
        e.c = x[k];
        e.residual = std::move(res);
        found = true;
      }
      if (!found) {
        cert.refutation.add("(ii) " + name(basis, b) + " " + to_string(il) +
                            ": no basis element absorbs f(b) modulo f^" + std::to_string(d + 2) + "V");
        continue;
      }
      cert.maps[{b, il}] = e;
    }
  }
  cert.index_preimages();
  cert.refutation.merge(check_injective(fam, basis, cert, "(iii)"));
  return cert;
}

Report check_lower_certificate(const Filtration& filt, const LabeledBasis& basis, const PerfectCertificate& cert) {
  const EndoFamily& fam = filt.family();
  Report r = check_basis(fam, basis);
  if (!r.ok()) return r;
  for (const auto& [key, e] : cert.maps) {
    const auto& [b, il] = key;
    const Offset& beta = basis.offset(b);
    const Vec v = basis.vec(b);
    const int d = filt.depth(il, beta, v);
    const Offset t = fam.target(il, beta);
    const Vec w = fam.apply(il, beta, v);
    const Subspace& deep = filt.level(il, t, d + 2);
    if (e.target < 0) {
      if (!deep.contains(w)) r.add("(ii) " + name(basis, b) + " " + to_string(il) + ": f(b) not in f^{d+2}V but f_bold(b) = 0");
      continue;
    }
    if (basis.offset(e.target) != t) {
      r.add("(i) " + name(basis, b) + " " + to_string(il) + ": target has the wrong weight");
      continue;
    }
    if (!absorb(deep, basis.vec(e.target), w))
      r.add("(ii) " + name(basis, b) + " " + to_string(il) + ": f(b) - c " + name(basis, e.target) +
            " not in f^{d+2}V for any c");
  }
  r.merge(check_injective(fam, basis, cert, "(iii)"));
  return r;
}

CrystalGraph lower_graph(const EndoFamily& fam, const LabeledBasis& basis, const PerfectCertificate& cert) {
  CrystalGraph g;
  g.datum = fam.datum;
  g.dom = fam.dom;
  for (int b = 0; b < static_cast<int>(basis.size()); ++b) {
    const int v = g.add_vertex(basis.offset(b), basis.labels[b]);
    for (int i = 0; i < fam.datum.rank(); ++i) {
      const int eps = fam.datum.is_real(i) ? cert.d(b, {i, 1}) : 0;
      g.vertices[v].eps.push_back(eps);
      g.vertices[v].phi.push_back(eps + fam.pairing(i, basis.offset(b)));
    }
  }
  for (const auto& [key, e] : cert.maps)
    if (e.target >= 0) g.add_edge(key.first, e.target, key.second);
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

Report check_basic(const Filtration& filt, const LabeledBasis& basis, const PerfectCertificate& cert, int nmax) {
  const EndoFamily& fam = filt.family();
  Report r;
  const int N = static_cast<int>(basis.size());
  auto chain = [&](int b, IndexPair il) {
    int n = 0;
    for (auto p = e_bold(cert, b, il); p; p = e_bold(cert, *p, il)) ++n;
    return n;
  };
  for (IndexPair il : fam.indices()) {
    for (int b = 0; b < N; ++b) {
      const int d = cert.d(b, il);
      // (a)
      Vec w = basis.vec(b);
      Offset cur = basis.offset(b);
      std::optional<int> bb = b;
      for (int n = 1; n <= nmax; ++n) {
        const Offset t = fam.target(il, cur);
        if (!fam.in_range(t)) break;
        w = fam.apply(il, cur, w);
        if (bb) {
          auto next = cert.bold(*bb, il);
          if (!next) break;
          bb = *next >= 0 ? std::optional<int>(*next) : std::nullopt;
        }
        cur = t;
        const Subspace& deep = filt.level(il, cur, d + n + 1);
        const bool ok = bb ? absorb(deep, basis.vec(*bb), w).has_value() : deep.contains(w);
        if (!ok) r.add("(a) " + name(basis, b) + " " + to_string(il) + " n=" + std::to_string(n));
      }
      // (c)
      if (chain(b, il) != d)
        r.add("(c) " + name(basis, b) + " " + to_string(il) + ": d = " + std::to_string(d) +
              ", preimage chain " + std::to_string(chain(b, il)));
      // (d)
      auto f = cert.bold(b, il);
      if (f && *f >= 0 && cert.d(*f, il) != d + 1) r.add("(d) " + name(basis, b) + " " + to_string(il));
    }
    for (const auto& [beta, ids] : basis.ids) {
      for (int n = 0; n <= nmax; ++n) {
        // (b)
        std::vector<Vec> in, exact;
        for (int b : ids) {
          if (chain(b, il) >= n) in.push_back(basis.vec(b));
          if (cert.d(b, il) == n) exact.push_back(basis.vec(b));
        }
        const std::size_t dim = fam.dim(beta);
        const Subspace& ln = filt.level(il, beta, n);
        const Subspace& ln1 = filt.level(il, beta, n + 1);
        Subspace span_in = in.empty() ? Subspace(dim) : Subspace::span(Mat::from_columns(in, dim));
        if (!(span_in == ln)) r.add("(b) " + to_string(il) + " n=" + std::to_string(n) + " at " + to_string(beta));
        // (e)
        Subspace span_ex = exact.empty() ? Subspace(dim) : Subspace::span(Mat::from_columns(exact, dim));
        if (span_ex.dim() != exact.size() || exact.size() != ln.dim() - ln1.dim() || !((span_ex + ln1) == ln))
          r.add("(e) " + to_string(il) + " n=" + std::to_string(n) + " at " + to_string(beta));
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------- good sequences

GoodSequence cyclic_sequence(const EndoFamily& fam, bool reversed) {
  GoodSequence s{fam.indices()};
  if (reversed) std::reverse(s.period.begin(), s.period.end());
  return s;
}

DTop dtop(const PerfectCertificate& cert, const LabeledBasis& basis, const GoodSequence& seq, int b) {
  DTop out;
  int cur = b;
  std::size_t zeros = 0;
  for (std::size_t k = 0; zeros < seq.period.size(); ++k) {
    const IndexPair il = seq.at(k);
    const int dk = cert.d(cur, il);
    out.d.push_back(dk);
    for (int t = 0; t < dk; ++t) {
      auto p = e_bold(cert, cur, il);
      if (!p) throw Error("dtop: e_bold undefined on " + basis.labels.at(cur));
      cur = *p;
    }
    zeros = dk == 0 ? zeros + 1 : 0;
  }
  while (!out.d.empty() && out.d.back() == 0) out.d.pop_back();
  out.core = cur;
  return out;
}

std::vector<int> highest_core(const PerfectCertificate& cert, const LabeledBasis& basis) {
  std::vector<int> out;
  for (int b = 0; b < static_cast<int>(basis.size()); ++b) {
    bool core = true;
    for (const auto& [key, d] : cert.depth)
      if (key.first == b && d != 0) core = false;
    if (core) out.push_back(b);
  }
  return out;
}

namespace {

// Lexicographic order on finitely supported sequences.
int compare_seq(const std::vector<int>& a, const std::vector<int>& b) {
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t k = 0; k < n; ++k) {
    const int x = k < a.size() ? a[k] : 0, y = k < b.size() ? b[k] : 0;
    if (x != y) return x < y ? -1 : 1;
  }
  return 0;
}

std::string seq_string(const std::vector<int>& a) {
  std::string s = "(";
  for (std::size_t k = 0; k < a.size(); ++k) s += (k ? "," : "") + std::to_string(a[k]);
  return s + ")";
}

// V^{>i,a} sums over every position; beyond the support one period of the
// sequence exhausts the terms.
struct SeqSpaces {
  const Filtration& filt;
  const GoodSequence& seq;
  std::map<std::pair<std::vector<int>, Offset>, Subspace> ge_, gt_;

  std::vector<IndexPair> positions(const std::vector<int>& a) const {
    return unroll(seq, a.size() + seq.period.size());
  }
  const Subspace& ge(const std::vector<int>& a, const Offset& beta) {
    auto key = std::make_pair(a, beta);
    auto it = ge_.find(key);
    if (it != ge_.end()) return it->second;
    return ge_.emplace(key, filt.v_ge(positions(a), a, beta)).first->second;
  }
  const Subspace& gt(const std::vector<int>& a, const Offset& beta) {
    auto key = std::make_pair(a, beta);
    auto it = gt_.find(key);
    if (it != gt_.end()) return it->second;
    return gt_.emplace(key, filt.v_gt(positions(a), a, beta)).first->second;
  }
};

Subspace span_of(const LabeledBasis& basis, const std::vector<int>& ids, std::size_t dim) {
  if (ids.empty()) return Subspace(dim);
  std::vector<Vec> cols;
  for (int b : ids) cols.push_back(basis.vec(b));
  return Subspace::span(Mat::from_columns(cols, dim));
}

}  // namespace

Report check_hwcore(const Filtration& filt, const LabeledBasis& basis, const PerfectCertificate& cert,
                    const GoodSequence& seq) {
  const EndoFamily& fam = filt.family();
  Report r;
  SeqSpaces sp{filt, seq, {}, {}};
  const std::vector<int> core = highest_core(cert, basis);
  const std::set<int> core_set(core.begin(), core.end());
  std::vector<DTop> tops(basis.size());
  for (int b = 0; b < static_cast<int>(basis.size()); ++b) {
    tops[b] = dtop(cert, basis, seq, b);
    const Offset& beta = basis.offset(b);
    const Vec v = basis.vec(b);
    if (!core_set.count(tops[b].core)) r.add("(b)(ii) " + name(basis, b) + ": e^top does not reach the highest core");
    if (!sp.ge(tops[b].d, beta).contains(v)) r.add("(b)(iii) " + name(basis, b) + " not in V^{>=i,d}");
    for (std::size_t m = 0; m < tops[b].d.size() + seq.period.size(); ++m) {
      std::vector<int> a = tops[b].d;
      a.resize(std::max(a.size(), m + 1), 0);
      a.resize(m + 1);
      a[m] += 1;
      if (sp.ge(a, beta).contains(v))
        r.add("(b)(iii) " + name(basis, b) + " lies in V^{>=i," + seq_string(a) + "} above d = " + seq_string(tops[b].d));
    }
  }
  for (const auto& [beta, ids] : basis.ids) {
    const std::size_t dim = fam.dim(beta);
    std::vector<std::vector<int>> classes;
    for (int b : ids)
      if (std::find(classes.begin(), classes.end(), tops[b].d) == classes.end()) classes.push_back(tops[b].d);
    std::sort(classes.begin(), classes.end(), [](const auto& x, const auto& y) { return compare_seq(x, y) < 0; });
    for (std::size_t k = 0; k < classes.size(); ++k) {
      const auto& a = classes[k];
      std::vector<int> ge_ids, gt_ids, eq_ids;
      for (int b : ids) {
        const int c = compare_seq(tops[b].d, a);
        if (c >= 0) ge_ids.push_back(b);
        if (c > 0) gt_ids.push_back(b);
        if (c == 0) eq_ids.push_back(b);
      }
      const Subspace& ge = sp.ge(a, beta);
      const Subspace& gt = sp.gt(a, beta);
      if (!(ge == span_of(basis, ge_ids, dim))) r.add("(c) V^{>=i," + seq_string(a) + "} at " + to_string(beta));
      if (!(gt == span_of(basis, gt_ids, dim))) r.add("(c) V^{>i," + seq_string(a) + "} at " + to_string(beta));
      if (k > 0) {
        const auto& prev = classes[k - 1];
        if (!sp.ge(prev, beta).contains(ge) || !sp.ge(prev, beta).contains(gt))
          r.add("monotonicity " + seq_string(prev) + " < " + seq_string(a) + " at " + to_string(beta));
      }
      // (d): e_{i,a} is injective into the core.
      std::set<int> images;
      for (int b : eq_ids) {
        int cur = b;
        bool defined = true;
        for (std::size_t j = 0; j < a.size() && defined; ++j)
          for (int t = 0; t < a[j] && defined; ++t) {
            auto p = e_bold(cert, cur, seq.at(j));
            if (!p) defined = false;
            else cur = *p;
          }
        if (!defined || !core_set.count(cur)) r.add("(d) e_{i,a} of " + name(basis, b) + " misses the core");
        else if (!images.insert(cur).second) r.add("(d) e_{i,a} not injective at " + name(basis, b));
      }
      // B_{i,a} is a basis of V^>= / V^>.
      if (eq_ids.size() != ge.dim() - gt.dim() || !((span_of(basis, eq_ids, dim) + gt) == ge))
        r.add("cor (a) " + seq_string(a) + " at " + to_string(beta));
      // k^x p(B_{i,a}) = k^x (p(f_{i,a} B_H) \ 0).
      Offset src;
      const std::vector<IndexPair> pre = unroll(seq, a.size());
      auto mono = filt.monomial(pre, a, beta, &src);
      std::set<int> hit;
      if (mono)
        for (int h : core) {
          if (basis.offset(h) != src) continue;
          const Vec u = *mono * basis.vec(h);
          if (gt.contains(u)) continue;
          bool matched = false;
          for (int b : eq_ids)
            if (absorb(gt, basis.vec(b), u)) {
              hit.insert(b);
              matched = true;
              break;
            }
          if (!matched) r.add("cor (b) f_{i,a} " + name(basis, h) + " is not a multiple of B_{i,a} modulo V^>");
        }
      if (hit.size() != eq_ids.size()) r.add("cor (b) " + seq_string(a) + " at " + to_string(beta) + ": not every element is reached");
    }
    // p_H(B_H) is a basis of V_H.
    std::vector<int> core_here;
    for (int b : ids)
      if (core_set.count(b)) core_here.push_back(b);
    const Subspace& low = filt.lowered(beta);
    if (core_here.size() != dim - low.dim() || !((span_of(basis, core_here, dim) + low) == Subspace::full(dim)))
      r.add("cor (c)(d) p_H(B_H) is not a basis of V_H at " + to_string(beta));
  }
  return r;
}

// ---------------------------------------------------------------- uniqueness

Comparison compare_perfect(const Filtration& filt, const LabeledBasis& b1, const PerfectCertificate& c1,
                           const LabeledBasis& b2, const PerfectCertificate& c2) {
  const EndoFamily& fam = filt.family();
  Comparison out;
  if (!check_basis(fam, b1).ok() || !check_basis(fam, b2).ok())
    throw HypothesisFailed("the bases do not span the same weight spaces");
  const auto core1 = highest_core(c1, b1), core2 = highest_core(c2, b2);
  std::set<int> used;
  for (int h : core1) {
    const Offset& beta = b1.offset(h);
    const Subspace& low = filt.lowered(beta);
    int match = -1;
    for (int h2 : core2)
      if (!used.count(h2) && b2.offset(h2) == beta && low.contains(b1.vec(h) - b2.vec(h2))) {
        match = h2;
        break;
      }
    if (match < 0) throw HypothesisFailed("p_H(" + b1.labels[h] + ") is not the image of a core element of the second basis");
    used.insert(match);
  }
  if (used.size() != core2.size()) throw HypothesisFailed("the second highest core has extra residues in V_H");

  const GoodSequence seq = cyclic_sequence(fam), rev = cyclic_sequence(fam, true);
  SeqSpaces sp{filt, seq, {}, {}}, sp_rev{filt, rev, {}, {}};
  std::vector<std::vector<int>> d2(b2.size());
  for (int b = 0; b < static_cast<int>(b2.size()); ++b) d2[b] = dtop(c2, b2, seq, b).d;
  const int N = static_cast<int>(b1.size());
  out.psi.assign(N, -1);
  out.scalars.assign(N, RatFunc(0));
  for (int b = 0; b < N; ++b) {
    const Offset& beta = b1.offset(b);
    const auto d = dtop(c1, b1, seq, b).d;
    const Subspace& gt = sp.gt(d, beta);
    std::vector<int> found;
    for (int x : b2.ids.at(beta)) {
      if (compare_seq(d2[x], d) != 0) continue;
      if (auto c = absorb(gt, b2.vec(x), b1.vec(b))) {
        if (found.empty()) out.scalars[b] = *c;
        found.push_back(x);
      }
    }
    if (found.empty()) {
      out.report.add("no partner for " + b1.labels[b] + " with d = " + seq_string(d));
      continue;
    }
    if (found.size() > 1) out.report.add("several partners for " + b1.labels[b]);
    out.psi[b] = found.front();
  }
  if (!out.report.ok()) return out;
  std::set<int> image(out.psi.begin(), out.psi.end());
  if (image.size() != b2.size() || b1.size() != b2.size()) out.report.add("psi is not a bijection");
  for (int b = 0; b < N; ++b) {
    const int x = out.psi[b];
    const auto d = dtop(c1, b1, rev, b).d;
    if (compare_seq(d, dtop(c2, b2, rev, x).d) != 0) {
      out.report.add("d differs along the second sequence for " + b1.labels[b]);
      continue;
    }
    if (!absorb(sp_rev.gt(d, b1.offset(b)), b2.vec(x), b1.vec(b)))
      out.report.add("congruence fails along the second sequence for " + b1.labels[b]);
  }
  for (int h : core1)
    if (!filt.lowered(b1.offset(h)).contains(b1.vec(h) - b2.vec(out.psi[h])))
      out.report.add("p_H(" + b1.labels[h] + ") != p_H(psi(b))");
  out.report.merge(morphism_check(lower_graph(fam, b1, c1), lower_graph(fam, b2, c2), out.psi, true), "strict: ");
  return out;
}

namespace {

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.dim() == 0 || b.dim() == 0) return Subspace(a.ambient_dim());
  Mat nb(b.basis().rows(), b.basis().cols());
  for (std::size_t r = 0; r < nb.rows(); ++r)
    for (std::size_t c = 0; c < nb.cols(); ++c) nb(r, c) = -b.basis()(r, c);
  Mat k = kernel(a.basis().hcat(nb));
  if (k.cols() == 0) return Subspace(a.ambient_dim());
  std::vector<std::size_t> top(a.dim());
  for (std::size_t x = 0; x < top.size(); ++x) top[x] = x;
  return Subspace::span(a.basis() * k.select_rows(top));
}

}  // namespace

Perturbation perturb_basis(const Filtration& filt, const LabeledBasis& basis, const PerfectCertificate& cert,
                           unsigned seed) {
  const EndoFamily& fam = filt.family();
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> small(-3, 3);
  const auto core = highest_core(cert, basis);
  const std::set<int> core_set(core.begin(), core.end());
  Perturbation out;
  std::vector<Vec> vecs(basis.size());
  std::map<Offset, std::vector<Vec>> noise;
  for (int b = 0; b < static_cast<int>(basis.size()); ++b) {
    const Offset& beta = basis.offset(b);
    Vec v = basis.vec(b);
    if (!core_set.count(b)) {
      int r0 = small(rng), r1 = small(rng);
      if (r0 == 0 && r1 == 0) r0 = 1;
      const RatFunc u = RatFunc(1) + RatFunc::q_pow(1) * (RatFunc(r0) + RatFunc(r1) * RatFunc::q_pow(1));
      v = scale(u, v);
      ++out.rescaled;
    }
    Subspace room = Subspace::full(fam.dim(beta));
    for (IndexPair il : fam.indices()) room = intersect(room, filt.level(il, beta, cert.d(b, il) + 1));
    Vec n(v.size());
    if (room.dim() > 0) {
      for (std::size_t k = 0; k < room.dim(); ++k) {
        const int c = small(rng);
        if (c != 0) n = n + scale(RatFunc(c), room.basis().col(k));
      }
      if (is_zero(n)) n = room.basis().col(0);
      ++out.noised;
    }
    noise[beta].push_back(n);
    vecs[b] = v;
  }
  std::map<Offset, std::size_t> pos;
  for (int b = 0; b < static_cast<int>(basis.size()); ++b) {
    const Offset& beta = basis.offset(b);
    vecs[b] = vecs[b] + noise[beta][pos[beta]++];
  }
  for (const auto& [beta, ids] : basis.ids) {
    std::vector<Vec> cols;
    for (int b : ids) cols.push_back(vecs[b]);
    if (!cols.empty() && rank(Mat::from_columns(cols, fam.dim(beta))) != ids.size())
      for (std::size_t k = 0; k < ids.size(); ++k)
        if (!is_zero(noise[beta][k])) {
          vecs[ids[k]] = vecs[ids[k]] - noise[beta][k];
          --out.noised;
        }
  }
  for (int b = 0; b < static_cast<int>(basis.size()); ++b) out.basis.add(basis.offset(b), vecs[b], basis.labels[b] + "'");
  return out;
}

PerfectCertificate duplicate_targets(const PerfectCertificate& cert, int a, int b) {
  PerfectCertificate out = cert;
  for (const auto& [key, e] : cert.maps)
    if (key.first == a) out.maps[{b, key.second}] = e;
  out.index_preimages();
  return out;
}

}  // namespace bbcrystal
