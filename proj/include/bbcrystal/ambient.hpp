#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "bbcrystal/halfalgebra.hpp"

namespace bbcrystal {

// One weight space of U^- or V(lambda), realized as words modulo the radical
// of the form.
struct WeightSpace {
  Offset beta;
  std::vector<Word> reps;
  Mat gram;                     // form on reps
  std::vector<Word> candidates;  // b_jk * (reps one step up), sorted
  Mat cand_coords;               // dim x |candidates|
  std::size_t dim() const { return reps.size(); }
};

enum class AmbientKind { Uminus, Highest };

// U^-_q(g) (acting on 1) or V(lambda) = U^- v_lambda. Words act on the vacuum;
// the raising operators are e'_il resp. E_il.
class Ambient {
 public:
  static std::shared_ptr<Ambient> uminus(const BCDatum& datum);
  static std::shared_ptr<Ambient> highest(const BCDatum& datum, std::vector<int> dom);

  Ambient(const Ambient&) = delete;
  Ambient& operator=(const Ambient&) = delete;

  const BCDatum& datum() const { return datum_; }
  AmbientKind kind() const { return kind_; }
  const std::vector<int>& dom() const { return dom_; }
  int rank() const { return datum_.rank(); }
  std::string key() const;

  // <h_i, wt> for the weight at offset beta; U^- uses dom = 0.
  int pairing(int i, const Offset& beta) const { return datum_.pairing(i, beta, dom_); }

  const WeightSpace& space(const Offset& beta) const;
  std::size_t dim(const Offset& beta) const;

  NCVec raise_word(IndexPair il, const Word& w) const;
  NCVec raise(IndexPair il, const NCVec& v) const;
  RatFunc word_form(const Word& u, const Word& v) const;

  Vec coords(const Word& w) const;
  Vec coords(const NCVec& v, const Offset& beta) const;
  NCVec element(const Vec& x, const Offset& beta) const;

  // Left multiplication by b_il: V_beta -> V_{beta + l alpha_i}.
  const Mat& lower_matrix(IndexPair il, const Offset& beta) const;
  // e'_il or E_il: V_beta -> V_{beta - l alpha_i} (0 rows if out of range).
  const Mat& raise_matrix(IndexPair il, const Offset& beta) const;
  RatFunc form(const Offset& beta, const Vec& x, const Vec& y) const;

  // Letters (j,k) with k alpha_j <= beta.
  std::vector<IndexPair> letters(const Offset& beta) const;

 private:
  Ambient(const BCDatum& datum, AmbientKind kind, std::vector<int> dom);
  RatFunc raise_scalar(IndexPair il, const Offset& rest) const;

  BCDatum datum_;
  AmbientKind kind_;
  std::vector<int> dom_;

  mutable std::recursive_mutex mu_;
  mutable std::map<Offset, WeightSpace> spaces_;
  mutable std::map<std::pair<IndexPair, Word>, NCVec> raise_memo_;
  mutable std::map<std::pair<Word, Word>, RatFunc> form_memo_;
  mutable std::map<Word, Vec> coords_memo_;
  mutable std::map<std::pair<IndexPair, Offset>, Mat> lower_memo_;
  mutable std::map<std::pair<IndexPair, Offset>, Mat> raise_mat_memo_;
};

using AmbientPtr = std::shared_ptr<const Ambient>;

}  // namespace bbcrystal
