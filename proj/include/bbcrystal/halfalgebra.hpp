#pragma once

#include <map>
#include <memory>
#include <vector>

#include "bbcrystal/cartan.hpp"
#include "bbcrystal/linalg.hpp"

namespace bbcrystal {

using Word = std::vector<IndexPair>;

Offset word_offset(const Word& w, int rank);
Word concat(const Word& a, const Word& b);

// Finite Q(q)-combination of words; zero coefficients are never stored.
class NCVec {
 public:
  NCVec() = default;
  static NCVec word(const Word& w, const RatFunc& c = RatFunc(1));
  static NCVec one() { return word({}); }

  const std::map<Word, RatFunc>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add(const Word& w, const RatFunc& c);
  RatFunc coeff(const Word& w) const;

  NCVec& operator+=(const NCVec& o);
  NCVec& operator-=(const NCVec& o);
  friend NCVec operator+(NCVec a, const NCVec& b) { return a += b; }
  friend NCVec operator-(NCVec a, const NCVec& b) { return a -= b; }
  friend NCVec operator*(const RatFunc& s, const NCVec& v);
  // Concatenation product.
  friend NCVec operator*(const NCVec& a, const NCVec& b);
  friend bool operator==(const NCVec& a, const NCVec& b) { return a.terms_ == b.terms_; }

 private:
  std::map<Word, RatFunc> terms_;
};

// e'_il and e''_il on the free algebra.
NCVec eprime(const BCDatum& datum, IndexPair il, const NCVec& v);
NCVec edprime(const BCDatum& datum, IndexPair il, const NCVec& v);
// Kashiwara form by peeling the leading letter of u.
RatFunc kashiwara_form(const BCDatum& datum, const NCVec& u, const NCVec& v);
NCVec bar_nc(const NCVec& v);

struct IComposition {
  int i = 0;
  std::vector<int> parts;
  int size() const;
  auto operator<=>(const IComposition&) const = default;
};

// Elements of C_i of size n: (n) for real i, partitions for isotropic i,
// compositions otherwise. Size 0 gives the empty composition.
std::vector<IComposition> compositions_of(const BCDatum& datum, int i, int n);
bool is_canonical(const BCDatum& datum, const IComposition& c);
std::string to_string(const IComposition& c);

NCVec divided_power(const BCDatum& datum, int i, int n);
// b_{i,c}; rejects non-canonical c for isotropic i. For real i this is the
// divided power b_i^{(n)}.
NCVec monomial(const BCDatum& datum, const IComposition& c);

std::string to_string(const Word& w);

}  // namespace bbcrystal
