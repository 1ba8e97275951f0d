#pragma once

#include <functional>
#include <map>

#include "bbcrystal/halfalgebra.hpp"

namespace oracle {

using namespace bbcrystal;

// Every word of weight beta.
inline std::vector<Word> all_words(const BCDatum& d, const Offset& beta) {
  std::vector<Word> out;
  Word cur;
  std::function<void(Offset)> rec = [&](Offset left) {
    if (height(left) == 0) {
      out.push_back(cur);
      return;
    }
    for (int j = 0; j < d.rank(); ++j) {
      const int maxl = d.is_real(j) ? std::min(1, left[j]) : left[j];
      for (int l = 1; l <= maxl; ++l) {
        cur.push_back({j, l});
        left[j] -= l;
        rec(left);
        left[j] += l;
        cur.pop_back();
      }
    }
  };
  rec(beta);
  return out;
}

// Contravariant form on U^- v_lambda computed naively: push E_il through the
// word one letter at a time, scalars read off from the weight of the tail.
inline RatFunc naive_vform(const BCDatum& d, const std::vector<int>& dom, const Word& u, const Word& v) {
  std::function<NCVec(IndexPair, const Word&)> E = [&](IndexPair il, const Word& w) -> NCVec {
    NCVec out;
    for (std::size_t p = 0; p < w.size(); ++p) {
      if (w[p] != il) continue;
      Word tail(w.begin() + p + 1, w.end());
      int n = d.pairing(il.i, word_offset(tail, d.rank()), dom);
      // (1 - q_i^{2ln}) / (1 - q_i^{2l})
      RatFunc num = RatFunc(1) - RatFunc::q_pow(2 * d.s(il.i) * il.l * n);
      RatFunc den = RatFunc(1) - RatFunc::q_pow(2 * d.s(il.i) * il.l);
      int e = 0;
      for (std::size_t t = 0; t < p; ++t) e -= w[t].l * il.l * d.a(il.i, w[t].i);
      Word rest(w.begin(), w.begin() + p);
      rest.insert(rest.end(), tail.begin(), tail.end());
      out.add(rest, RatFunc::q_pow(d.s(il.i) * e) * num / den);
    }
    return out;
  };
  std::function<RatFunc(const Word&, const Word&)> form = [&](const Word& a, const Word& b) -> RatFunc {
    if (a.empty()) return b.empty() ? RatFunc(1) : RatFunc();
    if (word_offset(a, d.rank()) != word_offset(b, d.rank())) return RatFunc();
    Word rest(a.begin() + 1, a.end());
    RatFunc s;
    const NCVec raised = E(a.front(), b);
    for (const auto& [w, c] : raised.terms()) s += c * form(rest, w);
    return s;
  };
  return form(u, v);
}

inline BCDatum corpus(const std::string& name) {
  if (name == "re1") return BCDatum({{2}}, {1});
  if (name == "iso1") return BCDatum({{0}}, {1});
  if (name == "im1") return BCDatum({{-2}}, {1});
  if (name == "sl3") return BCDatum({{2, -1}, {-1, 2}}, {1, 1});
  if (name == "reiso") return BCDatum({{2, -1}, {-1, 0}}, {1, 1});
  if (name == "reim") return BCDatum({{2, -1}, {-1, -2}}, {1, 1});
  throw Error("unknown corpus datum " + name);
}

inline const std::vector<std::string>& corpus_names() {
  static const std::vector<std::string> n = {"re1", "iso1", "im1", "sl3", "reiso", "reim"};
  return n;
}

}  // namespace oracle
