#include <algorithm>

#include "bbcrystal/perfect.hpp"

namespace bbcrystal {

namespace {

Mat checked_inverse(const Mat& m, const Offset& beta, const char* what) {
  try {
    return inverse(m);
  } catch (const SingularMatrix&) {
    throw SingularGram(std::string(what) + " is singular at " + to_string(beta));
  }
}

std::optional<RatFunc> absorb_up(const Subspace& s, const Vec& t, const Vec& w) {
  if (s.contains(t)) return s.contains(w) ? std::optional<RatFunc>(RatFunc(1)) : std::nullopt;
  auto y = solve(s.basis().hcat(Mat::from_columns({t}, t.size())), w);
  if (!y || y->back().is_zero()) return std::nullopt;
  return y->back();
}

// V^{<m} = ker e^m, with V^{<m} = 0 for m <= 0.
const Subspace& below(const Filtration& filt, IndexPair il, const Offset& beta, int m) {
  return filt.level(il, beta, std::max(m, 0));
}

}  // namespace

std::map<Offset, Mat> gram_matrices(const Ambient& amb, const EndoFamily& fam) {
  std::map<Offset, Mat> out;
  for (const auto& [beta, n] : fam.dims) out[beta] = n == 0 ? Mat(0, 0) : amb.space(beta).gram;
  return out;
}

EndoFamily upper_family(const EndoFamily& lower, const std::map<Offset, Mat>& gram) {
  if (lower.kind != FamilyKind::Lower) throw Error("upper_family: expects a lower family");
  EndoFamily up;
  up.kind = FamilyKind::Upper;
  up.datum = lower.datum;
  up.dom = lower.dom;
  up.H = lower.H;
  up.dims = lower.dims;
  std::map<Offset, Mat> ginv;
  for (const auto& [beta, n] : lower.dims)
    if (n > 0) ginv[beta] = checked_inverse(gram.at(beta), beta, "Gram matrix");
  // (f u, v) = (u, e v): e = G_src^{-1} F^T G_tgt.
  for (const auto& [key, f] : lower.mats) {
    const auto& [il, src] = key;
    const Offset tgt = lower.target(il, src);
    const std::size_t ns = lower.dim(src), nt = lower.dim(tgt);
    up.mats[{il, tgt}] = (ns == 0 || nt == 0) ? Mat(ns, nt) : ginv.at(src) * (f.transpose() * gram.at(tgt));
  }
  return up;
}

LabeledBasis dualize(const LabeledBasis& basis, const std::map<Offset, Mat>& gram) {
  std::map<Offset, Mat> dual;
  for (const auto& [beta, b] : basis.vectors)
    if (b.cols() > 0) dual[beta] = checked_inverse(b.transpose() * gram.at(beta), beta, "pairing of the basis");
  LabeledBasis out;
  for (int id = 0; id < static_cast<int>(basis.size()); ++id) {
    const auto& [beta, k] = basis.where[id];
    out.add(beta, dual.at(beta).col(k), basis.labels[id] + "^v");
  }
  return out;
}

PerfectCertificate certify_upper(const Filtration& filt, const LabeledBasis& basis) {
  const EndoFamily& fam = filt.family();
  PerfectCertificate cert;
  cert.kind = FamilyKind::Upper;
  cert.refutation.merge(check_basis(fam, basis));
  if (!cert.refutation.ok()) return cert;
  std::map<Offset, Mat> inv;
  for (const auto& [beta, b] : basis.vectors)
    if (b.cols() > 0) inv[beta] = inverse(b);
  const auto idx = fam.indices();
  for (int b = 0; b < static_cast<int>(basis.size()); ++b) {
    const Offset& beta = basis.offset(b);
    const Vec v = basis.vec(b);
    for (IndexPair il : idx) {
      const int d = d_upper(fam, il, beta, v);
      cert.depth[{b, il}] = d;
      CertEntry e;
      if (d == 0) {
        cert.maps[{b, il}] = e;
        continue;
      }
      const Offset t = fam.target(il, beta);
      const Vec w = fam.apply(il, beta, v);
      const Subspace& low = below(filt, il, t, d - 1);
      e.level = d - 1;
      const Vec x = inv.at(t) * w;
      const auto& ids = basis.ids.at(t);
      bool found = false;
      for (std::size_t k = 0; k < ids.size() && !found; ++k) {
        if (x[k].is_zero()) continue;
        Vec res = w - scale(x[k], basis.vec(ids[k]));
        if (!low.contains(res)) continue;
        e.target = ids[k];
        e.c = x[k];
        e.residual = std::move(res);
        found = true;
      }
      if (!found) {
        cert.refutation.add("(b)(i) " + basis.labels[b] + " " + to_string(il) + ": e(b) is not c E(b) modulo V^{<" +
                            std::to_string(d - 1) + "}");
        continue;
      }
      cert.maps[{b, il}] = e;
    }
  }
  cert.index_preimages();
  // (c): the full tuple is known since e lowers the height.
  for (const auto& [beta, ids] : basis.ids) {
    (void)beta;
    for (std::size_t x = 0; x < ids.size(); ++x)
      for (std::size_t y = x + 1; y < ids.size(); ++y) {
        bool same = true;
        for (IndexPair il : idx) same = same && cert.bold(ids[x], il) == cert.bold(ids[y], il);
        if (same) cert.refutation.add("(c) " + basis.labels[ids[x]] + " and " + basis.labels[ids[y]] + " share every E target");
      }
  }
  std::vector<int> dead;
  for (int b = 0; b < static_cast<int>(basis.size()); ++b) {
    bool all_zero = true;
    for (IndexPair il : idx) all_zero = all_zero && cert.bold(b, il) == -1;
    if (all_zero) dead.push_back(b);
  }
  for (std::size_t x = 0; x < dead.size(); ++x)
    for (std::size_t y = x + 1; y < dead.size(); ++y)
      if (basis.offset(dead[x]) != basis.offset(dead[y]))
        cert.refutation.add("(c) " + basis.labels[dead[x]] + " and " + basis.labels[dead[y]] + " are both killed by every E");
  return cert;
}

CrystalGraph upper_graph(const EndoFamily& fam, const LabeledBasis& basis, const PerfectCertificate& cert) {
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
  // F_bold(b') = b whenever E_bold(b) = b'.
  for (const auto& [key, e] : cert.maps)
    if (e.target >= 0) g.add_edge(e.target, key.first, key.second);
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

Report check_lwcore(const Filtration& filt, const LabeledBasis& basis, const PerfectCertificate& cert, int kmax) {
  const EndoFamily& fam = filt.family();
  Report r;
  for (IndexPair il : fam.indices()) {
    for (int b = 0; b < static_cast<int>(basis.size()); ++b) {
      const int d = cert.d(b, il);
      Vec w = basis.vec(b);
      Offset cur = basis.offset(b);
      std::optional<int> bb = b;
      for (int k = 1; k <= kmax && k <= d; ++k) {
        w = fam.apply(il, cur, w);
        cur = fam.target(il, cur);
        if (bb) {
          const int t = *cert.bold(*bb, il);
          bb = t >= 0 ? std::optional<int>(t) : std::nullopt;
        }
        const Subspace& low = below(filt, il, cur, d - k);
        const bool ok = bb ? absorb_up(low, basis.vec(*bb), w).has_value() : low.contains(w);
        if (!ok) r.add("(a) " + basis.labels[b] + " " + to_string(il) + " k=" + std::to_string(k));
      }
    }
    for (const auto& [beta, ids] : basis.ids) {
      const std::size_t dim = fam.dim(beta);
      for (int k = 0; k <= kmax + 1; ++k) {
        std::vector<Vec> lt, eq;
        for (int b : ids) {
          if (cert.d(b, il) < k) lt.push_back(basis.vec(b));
          if (cert.d(b, il) == k) eq.push_back(basis.vec(b));
        }
        const Subspace& kk = filt.level(il, beta, k);
        const Subspace& k1 = filt.level(il, beta, k + 1);
        Subspace s_lt = lt.empty() ? Subspace(dim) : Subspace::span(Mat::from_columns(lt, dim));
        if (!(s_lt == kk)) r.add("(b) " + to_string(il) + " k=" + std::to_string(k) + " at " + to_string(beta));
        Subspace s_eq = eq.empty() ? Subspace(dim) : Subspace::span(Mat::from_columns(eq, dim));
        if (s_eq.dim() != eq.size() || eq.size() != k1.dim() - kk.dim() || !((s_eq + kk) == k1))
          r.add("(c) " + to_string(il) + " k=" + std::to_string(k) + " at " + to_string(beta));
      }
    }
  }
  return r;
}

Report check_duality(const PerfectCertificate& lower, const PerfectCertificate& upper) {
  Report r;
  for (const auto& [key, d] : lower.depth) {
    const auto& [b, il] = key;
    auto it = upper.depth.find(key);
    if (it == upper.depth.end()) {
      r.add("missing dual of element " + std::to_string(b));
      continue;
    }
    if (it->second != d)
      r.add("d_il(b) = " + std::to_string(d) + " but d^v_il(b^v) = " + std::to_string(it->second) + " for element " +
            std::to_string(b) + " " + to_string(il));
    auto e = e_bold(lower, b, il);
    auto E = upper.bold(b, il);
    const int lhs = e ? *e : -1;
    if (!E || *E != lhs)
      r.add("(e_bold b)^v != E_bold(b^v) for element " + std::to_string(b) + " " + to_string(il));
  }
  return r;
}

}  // namespace bbcrystal
