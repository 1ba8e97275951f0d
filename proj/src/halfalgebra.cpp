#include "bbcrystal/halfalgebra.hpp"

#include <algorithm>
#include <functional>

namespace bbcrystal {

Offset word_offset(const Word& w, int rank) {
  Offset o(rank, 0);
  for (const auto& il : w) o.at(il.i) += il.l;
  return o;
}

Word concat(const Word& a, const Word& b) {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

NCVec NCVec::word(const Word& w, const RatFunc& c) {
  NCVec v;
  v.add(w, c);
  return v;
}

void NCVec::add(const Word& w, const RatFunc& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(w, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

RatFunc NCVec::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? RatFunc() : it->second;
}

NCVec& NCVec::operator+=(const NCVec& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

NCVec& NCVec::operator-=(const NCVec& o) {
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

NCVec operator*(const RatFunc& s, const NCVec& v) {
  NCVec r;
  if (s.is_zero()) return r;
  for (const auto& [w, c] : v.terms_) r.terms_.emplace(w, s * c);
  return r;
}

NCVec operator*(const NCVec& a, const NCVec& b) {
  NCVec r;
  for (const auto& [wa, ca] : a.terms_)
    for (const auto& [wb, cb] : b.terms_) r.add(concat(wa, wb), ca * cb);
  return r;
}

namespace {

// Shared expansion of e' (sign = -1) and e'' (sign = +1) on one word.
void eprime_word(const BCDatum& datum, IndexPair il, const Word& w, const RatFunc& c, int sign,
                 NCVec* out) {
  int expo = 0;
  const int si = datum.s(il.i);
  for (std::size_t p = 0; p < w.size(); ++p) {
    if (w[p] == il) {
      Word rest(w.begin(), w.begin() + p);
      rest.insert(rest.end(), w.begin() + p + 1, w.end());
      out->add(rest, c * RatFunc::q_pow(si * expo));
    }
    expo += sign * w[p].l * il.l * datum.a(il.i, w[p].i);
  }
}

NCVec eprime_sign(const BCDatum& datum, IndexPair il, const NCVec& v, int sign) {
  NCVec out;
  for (const auto& [w, c] : v.terms()) eprime_word(datum, il, w, c, sign, &out);
  return out;
}

}  // namespace

NCVec eprime(const BCDatum& datum, IndexPair il, const NCVec& v) { return eprime_sign(datum, il, v, -1); }

NCVec edprime(const BCDatum& datum, IndexPair il, const NCVec& v) { return eprime_sign(datum, il, v, +1); }

RatFunc kashiwara_form(const BCDatum& datum, const NCVec& u, const NCVec& v) {
  std::map<std::pair<Word, Word>, RatFunc> memo;
  std::function<RatFunc(const Word&, const Word&)> form = [&](const Word& a, const Word& b) -> RatFunc {
    if (a.size() == 0) return b.empty() ? RatFunc(1) : RatFunc();
    if (word_offset(a, datum.rank()) != word_offset(b, datum.rank())) return RatFunc();
    auto key = std::make_pair(a, b);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    Word rest(a.begin() + 1, a.end());
    NCVec raised = eprime(datum, a.front(), NCVec::word(b));
    RatFunc s;
    for (const auto& [w, c] : raised.terms()) s += c * form(rest, w);
    memo.emplace(key, s);
    return s;
  };
  RatFunc s;
  for (const auto& [wa, ca] : u.terms())
    for (const auto& [wb, cb] : v.terms()) {
      RatFunc f = form(wa, wb);
      if (!f.is_zero()) s += ca * cb * f;
    }
  return s;
}

NCVec bar_nc(const NCVec& v) {
  NCVec r;
  for (const auto& [w, c] : v.terms()) r.add(w, bar(c));
  return r;
}

int IComposition::size() const {
  int s = 0;
  for (int p : parts) s += p;
  return s;
}

std::vector<IComposition> compositions_of(const BCDatum& datum, int i, int n) {
  std::vector<IComposition> out;
  if (n == 0) {
    out.push_back({i, {}});
    return out;
  }
  if (datum.is_real(i)) {
    out.push_back({i, {n}});
    return out;
  }
  const bool partitions = datum.is_iso(i);
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int maxpart) {
    if (left == 0) {
      out.push_back({i, cur});
      return;
    }
    for (int p = 1; p <= std::min(left, maxpart); ++p) {
      cur.push_back(p);
      rec(left - p, partitions ? p : left - p);
      cur.pop_back();
    }
  };
  rec(n, n);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_canonical(const BCDatum& datum, const IComposition& c) {
  for (int p : c.parts)
    if (p <= 0) return false;
  if (datum.is_real(c.i)) return c.parts.size() <= 1;
  if (datum.is_iso(c.i)) return std::is_sorted(c.parts.rbegin(), c.parts.rend());
  return true;
}

std::string to_string(const IComposition& c) {
  std::string s = "(";
  for (std::size_t k = 0; k < c.parts.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(c.parts[k]);
  }
  return s + ")";
}

NCVec divided_power(const BCDatum& datum, int i, int n) {
  if (!datum.is_real(i)) throw Error("divided_power: index is not real");
  if (n < 0) throw Error("divided_power: negative exponent");
  return NCVec::word(Word(n, IndexPair{i, 1}), divided_power_coeff(n, datum.s(i)));
}

NCVec monomial(const BCDatum& datum, const IComposition& c) {
  if (!is_canonical(datum, c)) throw Error("monomial: non-canonical composition " + to_string(c));
  if (datum.is_real(c.i)) return divided_power(datum, c.i, c.size());
  Word w;
  for (int p : c.parts) w.push_back({c.i, p});
  return NCVec::word(w);
}

std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) s += "*";
    s += "b" + to_string(w[k]);
  }
  return s;
}

}  // namespace bbcrystal
