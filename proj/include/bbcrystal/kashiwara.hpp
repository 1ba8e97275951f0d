#pragma once

#include "bbcrystal/ambient.hpp"

namespace bbcrystal {

class SolveFailed : public Error {
 public:
  using Error::Error;
};

struct StringTerm {
  IComposition c;
  Offset beta;  // offset of u_c
  Vec u;
};

struct StringDecomposition {
  int i = 0;
  std::vector<StringTerm> terms;
};

// i-string decompositions and lower Kashiwara operators on an ambient space.
class KashiwaraOps {
 public:
  explicit KashiwaraOps(AmbientPtr amb);

  const Ambient& ambient() const { return *amb_; }
  const AmbientPtr& ambient_ptr() const { return amb_; }
  const BCDatum& datum() const { return amb_->datum(); }

  // Joint kernel of the raising operators for i at beta, as columns.
  const Mat& kernel_basis(int i, const Offset& beta) const;
  // b_{i,c} x for x at offset beta (divided power for real i).
  Vec apply_monomial(const IComposition& c, const Offset& beta, const Vec& x) const;

  StringDecomposition decompose(int i, const Offset& beta, const Vec& u) const;
  Vec reconstruct(const StringDecomposition& d, const Offset& beta) const;

  // dim(beta + l alpha_i) x dim(beta) and dim(beta - l alpha_i) x dim(beta).
  const Mat& ftilde_matrix(IndexPair il, const Offset& beta) const;
  const Mat& etilde_matrix(IndexPair il, const Offset& beta) const;
  Vec ftilde(IndexPair il, const Offset& beta, const Vec& u) const { return ftilde_matrix(il, beta) * u; }
  Vec etilde(IndexPair il, const Offset& beta, const Vec& u) const { return etilde_matrix(il, beta) * u; }

  // etilde o ftilde = id on the weight space at beta.
  Report check_ef_id(IndexPair il, const Offset& beta) const;
  // Conditions (i)-(iii) of the decomposition of every basis vector at beta;
  // (iii) is asserted on V(lambda) only.
  Report check_decomposition(int i, const Offset& beta) const;

 private:
  struct Column {
    IComposition c;
    Offset beta;
    std::size_t k;  // kernel column
  };
  struct StringData {
    std::vector<Column> columns;
    Mat phi_inv;
  };
  const StringData& strings(int i, const Offset& beta) const;
  Mat image_matrix(const StringData& s, const Offset& target, bool raise, IndexPair il) const;

  AmbientPtr amb_;
  mutable std::recursive_mutex mu_;
  mutable std::map<std::pair<int, Offset>, Mat> kernels_;
  mutable std::map<std::pair<int, Offset>, StringData> strings_;
  mutable std::map<std::pair<IndexPair, Offset>, Mat> f_memo_, e_memo_;
};

}  // namespace bbcrystal
