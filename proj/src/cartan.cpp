#include "bbcrystal/cartan.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace bbcrystal {

int height(const Offset& beta) { return std::accumulate(beta.begin(), beta.end(), 0); }

Report validate(const std::vector<std::vector<int>>& a, const std::vector<int>& d) {
  Report r;
  const std::size_t n = a.size();
  if (n == 0) {
    r.add("shape: empty matrix");
    return r;
  }
  for (const auto& row : a)
    if (row.size() != n) {
      r.add("shape: A is not square");
      return r;
    }
  if (d.size() != n) {
    r.add("shape: D has length " + std::to_string(d.size()) + ", expected " + std::to_string(n));
    return r;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (d[i] <= 0) r.add("(iv) symmetrizable: s_" + std::to_string(i) + " must be positive");
  for (std::size_t i = 0; i < n; ++i) {
    int x = a[i][i];
    if (!(x == 2 || (x <= 0 && x % 2 == 0)))
      r.add("(i) diagonal: a_" + std::to_string(i) + std::to_string(i) + " = " + std::to_string(x) +
            " not in {2, 0, -2, -4, ...}");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && a[i][j] > 0)
        r.add("(ii) off-diagonal: a_" + std::to_string(i) + std::to_string(j) + " = " +
              std::to_string(a[i][j]) + " > 0");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if ((a[i][j] == 0) != (a[j][i] == 0))
        r.add("(iii) zero pattern: a_" + std::to_string(i) + std::to_string(j) + " = 0 iff a_" +
              std::to_string(j) + std::to_string(i) + " = 0 fails");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (static_cast<long>(d[i]) * a[i][j] != static_cast<long>(d[j]) * a[j][i])
        r.add("(iv) symmetrizable: s_" + std::to_string(i) + " a_" + std::to_string(i) + std::to_string(j) +
              " != s_" + std::to_string(j) + " a_" + std::to_string(j) + std::to_string(i));
  return r;
}

BCDatum::BCDatum(std::vector<std::vector<int>> a, std::vector<int> d, std::vector<std::string> names)
    : a_(std::move(a)), d_(std::move(d)), names_(std::move(names)) {
  Report r = validate(a_, d_);
  if (!r.ok()) throw InvalidDatum(r.violations.front());
  if (names_.empty())
    for (int i = 0; i < rank(); ++i) names_.push_back(std::to_string(i));
  if (static_cast<int>(names_.size()) != rank()) throw InvalidDatum("shape: names length mismatch");
}

IndexTag BCDatum::tag(int i) const {
  int x = a(i, i);
  if (x == 2) return IndexTag::Real;
  if (x == 0) return IndexTag::Iso;
  return IndexTag::ImNonIso;
}

int BCDatum::pairing(int i, const Offset& beta, const std::vector<int>& dom) const {
  int v = dom.empty() ? 0 : dom.at(i);
  for (int j = 0; j < rank(); ++j) v -= beta.at(j) * a(i, j);
  return v;
}

Offset BCDatum::alpha(int i, int times) const {
  Offset o(rank(), 0);
  o.at(i) = times;
  return o;
}

int pairing(const BCDatum& datum, int i, const Weight& w) {
  if (i < 0 || i >= datum.rank()) throw Error("pairing: index out of range");
  return datum.pairing(i, w.offset, w.dom);
}

int bilinear(const BCDatum& datum, int i, const Weight& w) { return datum.s(i) * pairing(datum, i, w); }

std::vector<IndexPair> iinf_up_to(const BCDatum& datum, int H) {
  std::vector<IndexPair> out;
  for (int i = 0; i < datum.rank(); ++i) {
    if (datum.is_real(i)) {
      out.push_back({i, 1});
    } else {
      for (int l = 1; l <= H; ++l) out.push_back({i, l});
    }
  }
  return out;
}

std::vector<Offset> offsets_of_height(int rank, int h) {
  std::vector<Offset> out;
  Offset cur(rank, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == rank - 1) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (int k = left; k >= 0; --k) {
      cur[pos] = k;
      rec(pos + 1, left - k);
    }
  };
  if (rank > 0) rec(0, h);
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<Offset> offsets_up_to(int rank, int H) {
  std::vector<Offset> out;
  for (int h = 0; h <= H; ++h)
    for (auto& o : offsets_of_height(rank, h)) out.push_back(std::move(o));
  return out;
}

Offset operator+(const Offset& a, const Offset& b) {
  Offset r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Offset operator-(const Offset& a, const Offset& b) {
  Offset r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

bool nonnegative(const Offset& beta) {
  for (int k : beta)
    if (k < 0) return false;
  return true;
}

std::string tag_name(IndexTag t) {
  switch (t) {
    case IndexTag::Real:
      return "re";
    case IndexTag::ImNonIso:
      return "im_noniso";
    case IndexTag::Iso:
      return "iso";
  }
  return "?";
}

std::string to_string(const Offset& beta) {
  std::string s = "(";
  for (std::size_t i = 0; i < beta.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(beta[i]);
  }
  return s + ")";
}

std::string to_string(const IndexPair& il) {
  return "(" + std::to_string(il.i) + "," + std::to_string(il.l) + ")";
}

}  // namespace bbcrystal
