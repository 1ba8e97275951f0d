#include "bbcrystal/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace bbcrystal {

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::from_columns(const std::vector<Vec>& cols, std::size_t rows) {
  Mat m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) m.set_col(j, cols[j]);
  return m;
}

Vec Mat::col(std::size_t j) const {
  Vec v(r_);
  for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Mat::set_col(std::size_t j, const Vec& v) {
  if (v.size() != r_) throw Error("Mat::set_col: size mismatch");
  for (std::size_t i = 0; i < r_; ++i) (*this)(i, j) = v[i];
}

Mat Mat::transpose() const {
  Mat t(c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Mat Mat::select_cols(const std::vector<std::size_t>& idx) const {
  Mat m(r_, idx.size());
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
  return m;
}

Mat Mat::select_rows(const std::vector<std::size_t>& idx) const {
  Mat m(idx.size(), c_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < c_; ++j) m(i, j) = (*this)(idx[i], j);
  return m;
}

Mat Mat::hcat(const Mat& o) const {
  if (o.r_ != r_) throw Error("Mat::hcat: row mismatch");
  Mat m(r_, c_ + o.c_);
  for (std::size_t i = 0; i < r_; ++i) {
    for (std::size_t j = 0; j < c_; ++j) m(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < o.c_; ++j) m(i, c_ + j) = o(i, j);
  }
  return m;
}

bool Mat::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const RatFunc& x) { return x.is_zero(); });
}

bool Mat::is_col_zero(std::size_t j) const {
  for (std::size_t i = 0; i < r_; ++i)
    if (!(*this)(i, j).is_zero()) return false;
  return true;
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.c_ != b.r_) throw Error("Mat product: dimension mismatch");
  Mat m(a.r_, b.c_);
  for (std::size_t i = 0; i < a.r_; ++i)
    for (std::size_t k = 0; k < a.c_; ++k) {
      const RatFunc& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.c_; ++j) {
        const RatFunc& y = b(k, j);
        if (!y.is_zero()) m(i, j) += x * y;
      }
    }
  return m;
}

Vec operator*(const Mat& a, const Vec& v) {
  if (a.c_ != v.size()) throw Error("Mat-vector product: dimension mismatch");
  Vec r(a.r_);
  for (std::size_t k = 0; k < a.c_; ++k) {
    if (v[k].is_zero()) continue;
    for (std::size_t i = 0; i < a.r_; ++i) {
      const RatFunc& x = a(i, k);
      if (!x.is_zero()) r[i] += x * v[k];
    }
  }
  return r;
}

Mat bar(const Mat& m) {
  Mat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = bar(m(i, j));
  return r;
}

Vec bar(const Vec& v) {
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = bar(v[i]);
  return r;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const RatFunc& x) { return x.is_zero(); });
}

Vec operator+(const Vec& a, const Vec& b) {
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vec operator-(const Vec& a, const Vec& b) {
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vec scale(const RatFunc& s, const Vec& v) {
  Vec r(v.size());
  if (s.is_zero()) return r;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) r[i] = s * v[i];
  return r;
}

RatFunc dot(const Vec& a, const Vec& b) {
  RatFunc s;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  return s;
}

// ---------------------------------------------------------------- exact solve

Mat solve_square(const Mat& a, const Mat& b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.rows() != n) throw Error("solve_square: shape mismatch");
  const std::size_t m = b.cols();
  std::vector<Vec> rows(n, Vec(n + m));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = a(i, j);
    for (std::size_t j = 0; j < m; ++j) rows[i][n + j] = b(i, j);
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = n;
    for (std::size_t i = k; i < n; ++i) {
      if (rows[i][k].is_zero()) continue;
      if (best == n || rows[i][k].weight() < rows[best][k].weight()) best = i;
    }
    if (best == n) throw SingularMatrix("solve_square: singular matrix");
    std::swap(rows[k], rows[best]);
    const RatFunc inv = rows[k][k].inverse();
    std::vector<std::size_t> nz;
    for (std::size_t j = k + 1; j < n + m; ++j)
      if (!rows[k][j].is_zero()) nz.push_back(j);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (rows[i][k].is_zero()) continue;
      RatFunc f = rows[i][k] * inv;
      for (std::size_t j : nz) rows[i][j] -= f * rows[k][j];
      rows[i][k] = RatFunc();
    }
  }
  Mat x(n, m);
  for (std::size_t c = 0; c < m; ++c) {
    for (std::size_t k = n; k-- > 0;) {
      RatFunc s = rows[k][n + c];
      for (std::size_t j = k + 1; j < n; ++j)
        if (!rows[k][j].is_zero() && !x(j, c).is_zero()) s -= rows[k][j] * x(j, c);
      x(k, c) = s.is_zero() ? s : s / rows[k][k];
    }
  }
  return x;
}

Mat inverse(const Mat& a) { return solve_square(a, Mat::identity(a.rows())); }

// ---------------------------------------------------------------- echelon

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct ModEchelon {
  std::vector<std::size_t> pivots, pivot_rows, nonpivots;
};

// Returns false if some entry has a pole at t.
bool mod_echelon(const Mat& m, std::uint64_t t, ModEchelon* out) {
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<std::uint64_t> a(R * C);
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j) {
      const RatFunc& x = m(i, j);
      if (x.is_zero()) continue;
      if (!x.eval_mod(t, &a[i * C + j])) return false;
    }
  std::vector<std::vector<std::uint64_t>> basis;
  std::vector<std::uint64_t> x(R);
  for (std::size_t j = 0; j < C; ++j) {
    for (std::size_t i = 0; i < R; ++i) x[i] = a[i * C + j];
    for (std::size_t k = 0; k < basis.size(); ++k) {
      std::uint64_t c = x[out->pivot_rows[k]];
      if (c == 0) continue;
      const auto& v = basis[k];
      for (std::size_t i = 0; i < R; ++i)
        if (v[i]) x[i] = modp::sub(x[i], modp::mul(c, v[i]));
    }
    std::size_t r = R;
    for (std::size_t i = 0; i < R; ++i)
      if (x[i]) {
        r = i;
        break;
      }
    if (r == R) {
      out->nonpivots.push_back(j);
      continue;
    }
    std::uint64_t inv = modp::inv(x[r]);
    for (auto& e : x) e = modp::mul(e, inv);
    basis.push_back(x);
    out->pivots.push_back(j);
    out->pivot_rows.push_back(r);
  }
  return true;
}

std::uint64_t eval_point(std::uint64_t attempt) {
  std::uint64_t t = splitmix(attempt + 0x1234) % modp::P;
  return t < 2 ? t + 2 : t;
}

}  // namespace

std::size_t rank_mod_p(const Mat& m) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    ModEchelon me;
    if (mod_echelon(m, eval_point(attempt), &me)) return me.pivots.size();
  }
}

ColumnEchelon column_echelon_exact(const Mat& m) {
  const std::size_t R = m.rows(), C = m.cols();
  ColumnEchelon out;
  std::vector<Vec> basis;  // reduced pivot columns, entry at pivot row = 1
  std::vector<Vec> combos;  // each reduced column as a combination of original pivots
  std::vector<std::pair<std::size_t, Vec>> dependent;
  for (std::size_t j = 0; j < C; ++j) {
    Vec x = m.col(j);
    Vec comb(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) {
      RatFunc c = x[out.pivot_rows[k]];
      if (c.is_zero()) continue;
      for (std::size_t i = 0; i < R; ++i)
        if (!basis[k][i].is_zero()) x[i] -= c * basis[k][i];
      for (std::size_t t = 0; t < combos[k].size(); ++t)
        if (!combos[k][t].is_zero()) comb[t] += c * combos[k][t];
    }
    std::size_t r = R;
    for (std::size_t i = 0; i < R; ++i)
      if (!x[i].is_zero()) {
        r = i;
        break;
      }
    if (r == R) {
      out.nonpivots.push_back(j);
      dependent.emplace_back(j, comb);
      continue;
    }
    RatFunc inv = x[r].inverse();
    for (auto& e : x)
      if (!e.is_zero()) e *= inv;
    // reduced column = (original column - sum comb * pivots) * inv
    Vec nc(basis.size() + 1);
    for (std::size_t t = 0; t < comb.size(); ++t) nc[t] = -comb[t] * inv;
    nc[basis.size()] = inv;
    for (auto& c : combos) c.resize(basis.size() + 1);
    combos.push_back(nc);
    basis.push_back(x);
    out.pivots.push_back(j);
    out.pivot_rows.push_back(r);
  }
  out.coeffs = Mat(out.pivots.size(), out.nonpivots.size());
  for (std::size_t idx = 0; idx < dependent.size(); ++idx) {
    Vec& comb = dependent[idx].second;
    comb.resize(out.pivots.size());
    for (std::size_t k = 0; k < comb.size(); ++k) out.coeffs(k, idx) = comb[k];
  }
  return out;
}

ColumnEchelon column_echelon(const Mat& m, std::size_t coeff_from) {
  for (std::uint64_t attempt = 0; attempt < 4; ++attempt) {
    ModEchelon me;
    if (!mod_echelon(m, eval_point(attempt), &me)) continue;
    ColumnEchelon out;
    out.pivots = me.pivots;
    out.pivot_rows = me.pivot_rows;
    out.nonpivots = me.nonpivots;
    out.coeffs = Mat(out.pivots.size(), out.nonpivots.size());
    std::vector<std::size_t> want;
    for (std::size_t idx = 0; idx < out.nonpivots.size(); ++idx)
      if (out.nonpivots[idx] >= coeff_from) want.push_back(idx);
    if (want.empty() || out.pivots.empty()) {
      // Dependent columns with no pivots are zero columns; check exactly.
      bool ok = true;
      if (out.pivots.empty())
        for (std::size_t idx : want) ok = ok && m.is_col_zero(out.nonpivots[idx]);
      if (ok) return out;
      continue;
    }
    std::vector<std::size_t> cols;
    for (std::size_t idx : want) cols.push_back(out.nonpivots[idx]);
    Mat a = m.select_rows(out.pivot_rows).select_cols(out.pivots);
    Mat b = m.select_rows(out.pivot_rows).select_cols(cols);
    Mat x = solve_square(a, b);
    // Certify the remaining rows.
    std::vector<bool> is_pivot_row(m.rows(), false);
    for (std::size_t r : out.pivot_rows) is_pivot_row[r] = true;
    bool ok = true;
    for (std::size_t i = 0; i < m.rows() && ok; ++i) {
      if (is_pivot_row[i]) continue;
      for (std::size_t c = 0; c < cols.size() && ok; ++c) {
        RatFunc s;
        for (std::size_t k = 0; k < out.pivots.size(); ++k) {
          const RatFunc& e = m(i, out.pivots[k]);
          if (!e.is_zero() && !x(k, c).is_zero()) s += e * x(k, c);
        }
        ok = (s == m(i, cols[c]));
      }
    }
    if (!ok) continue;
    for (std::size_t c = 0; c < want.size(); ++c)
      for (std::size_t k = 0; k < out.pivots.size(); ++k) out.coeffs(k, want[c]) = x(k, c);
    return out;
  }
  return column_echelon_exact(m);
}

std::size_t rank(const Mat& m) { return column_echelon(m).pivots.size(); }

Mat kernel(const Mat& m) {
  ColumnEchelon ce = column_echelon(m);
  Mat k(m.cols(), ce.nonpivots.size());
  for (std::size_t idx = 0; idx < ce.nonpivots.size(); ++idx) {
    k(ce.nonpivots[idx], idx) = 1;
    for (std::size_t p = 0; p < ce.pivots.size(); ++p) k(ce.pivots[p], idx) = -ce.coeffs(p, idx);
  }
  return k;
}

std::optional<Vec> solve(const Mat& a, const Vec& b) {
  Mat bm(b.size(), 1);
  bm.set_col(0, b);
  ColumnEchelon ce = column_echelon(a.hcat(bm), a.cols());
  if (!ce.pivots.empty() && ce.pivots.back() == a.cols()) return std::nullopt;
  Vec x(a.cols());
  const std::size_t idx = ce.nonpivots.size() - 1;
  for (std::size_t k = 0; k < ce.pivots.size(); ++k) x[ce.pivots[k]] = ce.coeffs(k, idx);
  return x;
}

// ---------------------------------------------------------------- Subspace

Subspace Subspace::span(const Mat& generators) {
  ColumnEchelon ce = column_echelon(generators);
  Subspace s;
  s.basis_ = generators.select_cols(ce.pivots);
  return s;
}

Subspace Subspace::full(std::size_t n) {
  Subspace s;
  s.basis_ = Mat::identity(n);
  return s;
}

std::optional<Vec> Subspace::coordinates(const Vec& v) const {
  if (v.size() != ambient_dim()) throw Error("Subspace: dimension mismatch");
  if (is_zero(v)) return Vec(dim());
  if (dim() == 0) return std::nullopt;
  return solve(basis_, v);
}

bool Subspace::contains(const Vec& v) const { return coordinates(v).has_value(); }

bool Subspace::contains(const Subspace& o) const {
  if (o.dim() > dim()) return false;
  if (o.dim() == 0) return true;
  ColumnEchelon ce = column_echelon(basis_.hcat(o.basis_), dim());
  return ce.pivots.size() == dim();
}

Subspace Subspace::operator+(const Subspace& o) const {
  if (o.dim() == 0) return *this;
  if (dim() == 0) return o;
  return span(basis_.hcat(o.basis_));
}

Subspace image(const Mat& m, const Subspace& s) {
  if (s.dim() == 0) return Subspace(m.rows());
  return Subspace::span(m * s.basis());
}

// ---------------------------------------------------------------- over Q

namespace {

// Row-reduce in place; returns pivot columns.
std::vector<std::size_t> qrref(QMat& m, std::size_t ncols) {
  std::vector<std::size_t> piv;
  std::size_t row = 0;
  for (std::size_t c = 0; c < ncols && row < m.size(); ++c) {
    std::size_t p = m.size();
    for (std::size_t i = row; i < m.size(); ++i)
      if (m[i][c] != 0) {
        p = i;
        break;
      }
    if (p == m.size()) continue;
    std::swap(m[row], m[p]);
    mpq_class inv = 1 / m[row][c];
    for (auto& e : m[row])
      if (e != 0) e *= inv;
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < m[row].size(); ++j)
      if (m[row][j] != 0) nz.push_back(j);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][c] == 0) continue;
      mpq_class f = m[i][c];
      for (std::size_t j : nz) m[i][j] -= f * m[row][j];
    }
    piv.push_back(c);
    ++row;
  }
  return piv;
}

}  // namespace

std::size_t qrank(QMat m) {
  if (m.empty()) return 0;
  return qrref(m, m[0].size()).size();
}

std::optional<QMat> qsolve(const QMat& a, const QMat& b, bool* unique) {
  const std::size_t n = a.empty() ? 0 : a[0].size();
  const std::size_t k = b.empty() ? 0 : b[0].size();
  QMat m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    m[i] = a[i];
    m[i].insert(m[i].end(), b[i].begin(), b[i].end());
  }
  std::vector<std::size_t> piv = qrref(m, n);
  if (unique) *unique = piv.size() == n;
  for (std::size_t i = piv.size(); i < m.size(); ++i)
    for (std::size_t c = 0; c < k; ++c)
      if (m[i][n + c] != 0) return std::nullopt;
  QMat x(n, QVec(k));
  for (std::size_t r = 0; r < piv.size(); ++r)
    for (std::size_t c = 0; c < k; ++c) x[piv[r]][c] = m[r][n + c];
  return x;
}

}  // namespace bbcrystal
