#include "bbcrystal/kashiwara.hpp"

#include <algorithm>

namespace bbcrystal {

KashiwaraOps::KashiwaraOps(AmbientPtr amb) : amb_(std::move(amb)) {}

const Mat& KashiwaraOps::kernel_basis(int i, const Offset& beta) const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto key = std::make_pair(i, beta);
  auto it = kernels_.find(key);
  if (it != kernels_.end()) return it->second;
  const std::size_t n = amb_->dim(beta);
  const int kmax = datum().is_real(i) ? std::min(1, beta[i]) : beta[i];
  std::vector<const Mat*> blocks;
  std::size_t rows = 0;
  for (int k = 1; k <= kmax; ++k) {
    blocks.push_back(&amb_->raise_matrix({i, k}, beta));
    rows += blocks.back()->rows();
  }
  Mat stacked(rows, n);
  std::size_t r0 = 0;
  for (const Mat* b : blocks) {
    for (std::size_t r = 0; r < b->rows(); ++r)
      for (std::size_t c = 0; c < n; ++c) stacked(r0 + r, c) = (*b)(r, c);
    r0 += b->rows();
  }
  Mat k = rows == 0 ? Mat::identity(n) : kernel(stacked);
  return kernels_.emplace(key, std::move(k)).first->second;
}

Vec KashiwaraOps::apply_monomial(const IComposition& c, const Offset& beta, const Vec& x) const {
  Vec v = x;
  Offset cur = beta;
  if (datum().is_real(c.i)) {
    const int n = c.size();
    for (int t = 0; t < n; ++t) {
      v = amb_->lower_matrix({c.i, 1}, cur) * v;
      cur = cur + datum().alpha(c.i);
    }
    return scale(divided_power_coeff(n, datum().s(c.i)), v);
  }
  for (auto p = c.parts.rbegin(); p != c.parts.rend(); ++p) {
    v = amb_->lower_matrix({c.i, *p}, cur) * v;
    cur = cur + datum().alpha(c.i, *p);
  }
  return v;
}

const KashiwaraOps::StringData& KashiwaraOps::strings(int i, const Offset& beta) const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto key = std::make_pair(i, beta);
  auto it = strings_.find(key);
  if (it != strings_.end()) return it->second;
  StringData s;
  const std::size_t n = amb_->dim(beta);
  std::vector<Vec> cols;
  for (int m = 0; m <= beta[i]; ++m) {
    const Offset nu = beta - datum().alpha(i, m);
    const Mat& k = kernel_basis(i, nu);
    if (k.cols() == 0) continue;
    for (const IComposition& c : compositions_of(datum(), i, m))
      for (std::size_t j = 0; j < k.cols(); ++j) {
        Vec v = apply_monomial(c, nu, k.col(j));
        if (is_zero(v)) continue;
        s.columns.push_back({c, nu, j});
        cols.push_back(std::move(v));
      }
  }
  if (cols.size() != n)
    throw SolveFailed("string decomposition at " + to_string(beta) + " for i=" + std::to_string(i) + ": " +
                      std::to_string(cols.size()) + " columns for dimension " + std::to_string(n));
  if (n > 0) {
    try {
      s.phi_inv = inverse(Mat::from_columns(cols, n));
    } catch (const SingularMatrix&) {
      throw SolveFailed("string decomposition at " + to_string(beta) + " is not unique");
    }
  }
  return strings_.emplace(key, std::move(s)).first->second;
}

StringDecomposition KashiwaraOps::decompose(int i, const Offset& beta, const Vec& u) const {
  const StringData& s = strings(i, beta);
  StringDecomposition out{i, {}};
  if (s.columns.empty()) return out;
  Vec x = s.phi_inv * u;
  for (std::size_t a = 0; a < s.columns.size(); ++a) {
    if (x[a].is_zero()) continue;
    const Column& col = s.columns[a];
    auto pos = std::find_if(out.terms.begin(), out.terms.end(), [&](const StringTerm& t) { return t.c == col.c; });
    if (pos == out.terms.end()) {
      out.terms.push_back({col.c, col.beta, Vec(amb_->dim(col.beta))});
      pos = out.terms.end() - 1;
    }
    const Mat& k = kernel_basis(i, col.beta);
    for (std::size_t r = 0; r < k.rows(); ++r)
      if (!k(r, col.k).is_zero()) pos->u[r] += x[a] * k(r, col.k);
  }
  std::sort(out.terms.begin(), out.terms.end(), [](const StringTerm& a, const StringTerm& b) { return a.c < b.c; });
  return out;
}

Vec KashiwaraOps::reconstruct(const StringDecomposition& d, const Offset& beta) const {
  Vec v(amb_->dim(beta));
  for (const StringTerm& t : d.terms) v = v + apply_monomial(t.c, t.beta, t.u);
  return v;
}

namespace {

// The composition reached by f (raise = false) or e (raise = true) and its coefficient.
bool step(const BCDatum& d, IndexPair il, const IComposition& c, bool raise, IComposition* out, RatFunc* coeff) {
  *out = c;
  *coeff = RatFunc(1);
  if (d.is_real(il.i)) {
    const int n = c.size();
    if (raise && n == 0) return false;
    out->parts = raise ? (n == 1 ? std::vector<int>{} : std::vector<int>{n - 1}) : std::vector<int>{n + 1};
    return true;
  }
  if (!d.is_iso(il.i)) {
    if (!raise) {
      out->parts.insert(out->parts.begin(), il.l);
      return true;
    }
    if (c.parts.empty() || c.parts.front() != il.l) return false;
    out->parts.erase(out->parts.begin());
    return true;
  }
  const long cl = std::count(c.parts.begin(), c.parts.end(), il.l);
  if (!raise) {
    out->parts.push_back(il.l);
    std::sort(out->parts.rbegin(), out->parts.rend());
    *coeff = RatFunc(mpq_class(1, cl + 1));
    return true;
  }
  if (cl == 0) return false;
  out->parts.erase(std::find(out->parts.begin(), out->parts.end(), il.l));
  *coeff = RatFunc(cl);
  return true;
}

}  // namespace

Mat KashiwaraOps::image_matrix(const StringData& s, const Offset& target, bool raise, IndexPair il) const {
  const std::size_t rows = amb_->dim(target);
  std::vector<Vec> cols;
  for (const Column& col : s.columns) {
    IComposition c2;
    RatFunc coeff;
    if (!step(datum(), il, col.c, raise, &c2, &coeff)) {
      cols.push_back(Vec(rows));
      continue;
    }
    cols.push_back(scale(coeff, apply_monomial(c2, col.beta, kernel_basis(il.i, col.beta).col(col.k))));
  }
  Mat psi = Mat::from_columns(cols, rows);
  return s.columns.empty() ? Mat(rows, 0) : psi * s.phi_inv;
}

const Mat& KashiwaraOps::ftilde_matrix(IndexPair il, const Offset& beta) const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto key = std::make_pair(il, beta);
  auto it = f_memo_.find(key);
  if (it != f_memo_.end()) return it->second;
  Mat m = image_matrix(strings(il.i, beta), beta + datum().alpha(il.i, il.l), false, il);
  return f_memo_.emplace(key, std::move(m)).first->second;
}

const Mat& KashiwaraOps::etilde_matrix(IndexPair il, const Offset& beta) const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto key = std::make_pair(il, beta);
  auto it = e_memo_.find(key);
  if (it != e_memo_.end()) return it->second;
  const Offset target = beta - datum().alpha(il.i, il.l);
  Mat m = nonnegative(target) ? image_matrix(strings(il.i, beta), target, true, il) : Mat(0, amb_->dim(beta));
  return e_memo_.emplace(key, std::move(m)).first->second;
}

Report KashiwaraOps::check_ef_id(IndexPair il, const Offset& beta) const {
  Report r;
  const Mat& f = ftilde_matrix(il, beta);
  const Mat& e = etilde_matrix(il, beta + datum().alpha(il.i, il.l));
  if (!(e * f == Mat::identity(amb_->dim(beta))))
    r.add("e~f~ != id for " + to_string(il) + " at " + to_string(beta));
  return r;
}

Report KashiwaraOps::check_decomposition(int i, const Offset& beta) const {
  Report r;
  const std::size_t n = amb_->dim(beta);
  const std::string at = " at " + to_string(beta) + ", i=" + std::to_string(i);
  for (std::size_t b = 0; b < n; ++b) {
    Vec u(n);
    u[b] = 1;
    StringDecomposition d = decompose(i, beta, u);
    if (reconstruct(d, beta) != u) r.add("reconstruction fails" + at);
    for (const StringTerm& t : d.terms) {
      const int kmax = datum().is_real(i) ? std::min(1, t.beta[i]) : t.beta[i];
      for (int k = 1; k <= kmax; ++k)
        if (!is_zero(amb_->raise_matrix({i, k}, t.beta) * t.u)) r.add("(i) u_c not primitive" + at);
      if (amb_->kind() == AmbientKind::Highest && t.c.size() > 0 && amb_->pairing(i, t.beta) == 0)
        r.add("(iii) u_c nonzero at pairing 0" + at);
    }
  }
  return r;
}

}  // namespace bbcrystal
