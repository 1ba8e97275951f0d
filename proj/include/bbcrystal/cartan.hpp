#pragma once

#include <compare>
#include <string>
#include <vector>

#include "bbcrystal/report.hpp"
#include "bbcrystal/scalars.hpp"

namespace bbcrystal {

class InvalidDatum : public Error {
 public:
  using Error::Error;
};

enum class IndexTag { Real, ImNonIso, Iso };

struct IndexPair {
  int i = 0;
  int l = 1;
  auto operator<=>(const IndexPair&) const = default;
};

// Root-lattice coordinates k_i of beta = sum k_i alpha_i.
using Offset = std::vector<int>;

struct Weight {
  std::vector<int> dom;
  Offset offset;
};

int height(const Offset& beta);

class BCDatum {
 public:
  BCDatum() = default;
  // Throws InvalidDatum naming the first violated condition.
  BCDatum(std::vector<std::vector<int>> a, std::vector<int> d, std::vector<std::string> names = {});

  int rank() const { return static_cast<int>(a_.size()); }
  int a(int i, int j) const { return a_.at(i).at(j); }
  int s(int i) const { return d_.at(i); }
  const std::vector<std::vector<int>>& matrix() const { return a_; }
  const std::vector<int>& symmetrizer() const { return d_; }
  const std::vector<std::string>& names() const { return names_; }

  IndexTag tag(int i) const;
  bool is_real(int i) const { return tag(i) == IndexTag::Real; }
  bool is_imaginary(int i) const { return tag(i) != IndexTag::Real; }
  bool is_iso(int i) const { return tag(i) == IndexTag::Iso; }

  // <h_i, lambda - beta> where dom_j = <h_j, lambda>; dom empty means 0.
  int pairing(int i, const Offset& beta, const std::vector<int>& dom = {}) const;
  Offset alpha(int i, int times = 1) const;

  friend bool operator==(const BCDatum& x, const BCDatum& y) { return x.a_ == y.a_ && x.d_ == y.d_; }

 private:
  std::vector<std::vector<int>> a_;
  std::vector<int> d_;
  std::vector<std::string> names_;
};

Report validate(const std::vector<std::vector<int>>& a, const std::vector<int>& d);

int pairing(const BCDatum& datum, int i, const Weight& w);
int bilinear(const BCDatum& datum, int i, const Weight& w);

// (i,1) for real i and (i,l), 1 <= l <= H, for imaginary i.
std::vector<IndexPair> iinf_up_to(const BCDatum& datum, int H);

// Offsets of height exactly h (lexicographic) and up to H (by height).
std::vector<Offset> offsets_of_height(int rank, int h);
std::vector<Offset> offsets_up_to(int rank, int H);

Offset operator+(const Offset& a, const Offset& b);
Offset operator-(const Offset& a, const Offset& b);
bool nonnegative(const Offset& beta);

std::string tag_name(IndexTag t);
std::string to_string(const Offset& beta);
std::string to_string(const IndexPair& il);

}  // namespace bbcrystal
