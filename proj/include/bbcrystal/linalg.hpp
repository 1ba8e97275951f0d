#pragma once

#include <optional>
#include <vector>

#include "bbcrystal/scalars.hpp"

namespace bbcrystal {

using Vec = std::vector<RatFunc>;

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

// Dense row-major matrix over Q(q).
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
  static Mat identity(std::size_t n);
  static Mat from_columns(const std::vector<Vec>& cols, std::size_t rows);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  RatFunc& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const RatFunc& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  Vec col(std::size_t j) const;
  void set_col(std::size_t j, const Vec& v);
  Mat transpose() const;
  Mat select_cols(const std::vector<std::size_t>& idx) const;
  Mat select_rows(const std::vector<std::size_t>& idx) const;
  Mat hcat(const Mat& o) const;
  bool is_zero() const;
  bool is_col_zero(std::size_t j) const;

  friend Mat operator*(const Mat& a, const Mat& b);
  friend Vec operator*(const Mat& a, const Vec& v);
  friend bool operator==(const Mat& a, const Mat& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
  }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<RatFunc> a_;
};

Mat bar(const Mat& m);
Vec bar(const Vec& v);
bool is_zero(const Vec& v);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec scale(const RatFunc& s, const Vec& v);
RatFunc dot(const Vec& a, const Vec& b);

// Greedy column basis of m, certified exactly. Column j of m equals
// sum_k coeffs(k, idx) * column pivots[k] for nonpivots[idx].
struct ColumnEchelon {
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> pivot_rows;
  std::vector<std::size_t> nonpivots;
  Mat coeffs;
};

// Only nonpivot columns with index >= coeff_from receive (certified)
// coefficients; earlier nonpivot columns are reported but not certified.
ColumnEchelon column_echelon(const Mat& m, std::size_t coeff_from = 0);
ColumnEchelon column_echelon_exact(const Mat& m);
std::size_t rank(const Mat& m);
std::size_t rank_mod_p(const Mat& m);
Mat kernel(const Mat& m);
std::optional<Vec> solve(const Mat& a, const Vec& b);
Mat solve_square(const Mat& a, const Mat& b);
Mat inverse(const Mat& a);

// Column span inside Q(q)^n with a certified independent basis.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient = 0) : basis_(ambient, 0) {}
  static Subspace span(const Mat& generators);
  static Subspace full(std::size_t n);

  std::size_t dim() const { return basis_.cols(); }
  std::size_t ambient_dim() const { return basis_.rows(); }
  const Mat& basis() const { return basis_; }
  bool contains(const Vec& v) const;
  bool contains(const Subspace& o) const;
  std::optional<Vec> coordinates(const Vec& v) const;
  Subspace operator+(const Subspace& o) const;
  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.dim() == b.dim() && a.contains(b);
  }

 private:
  Mat basis_;
};

Subspace image(const Mat& m, const Subspace& s);

// Dense linear algebra over Q.
using QVec = std::vector<mpq_class>;
using QMat = std::vector<QVec>;
std::size_t qrank(QMat m);
// Solve a X = b for all right-hand sides; nullopt if some column is
// inconsistent. unique is set when the solution space is a point.
std::optional<QMat> qsolve(const QMat& a, const QMat& b, bool* unique);

}  // namespace bbcrystal
