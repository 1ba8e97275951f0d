#include "bbcrystal/scalars.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace bbcrystal {

namespace modp {
std::uint64_t pow(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t reduce(const mpz_class& z) {
  return static_cast<std::uint64_t>(mpz_fdiv_ui(z.get_mpz_t(), P));
}
}  // namespace modp

// ---------------------------------------------------------------- Poly

Poly::Poly(long c) {
  if (c != 0) c_.emplace_back(c);
}

Poly::Poly(const mpz_class& c) {
  if (c != 0) c_.push_back(c);
}

Poly::Poly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(const mpz_class& c, int k) {
  Poly p;
  if (c == 0) return p;
  p.c_.assign(k + 1, mpz_class(0));
  p.c_[k] = c;
  return p;
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

int Poly::low_degree() const {
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (c_[k] != 0) return static_cast<int>(k);
  return 0;
}

bool Poly::is_monomial() const {
  if (c_.empty()) return false;
  for (std::size_t k = 0; k + 1 < c_.size(); ++k)
    if (c_[k] != 0) return false;
  return true;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

Poly& Poly::operator*=(const mpz_class& s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (auto& x : c_) x *= s;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  if (a.is_monomial()) return (b * a.lead()).shifted(a.degree());
  if (b.is_monomial()) return (a * b.lead()).shifted(b.degree());
  std::vector<mpz_class> r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  return Poly(std::move(r));
}

Poly Poly::shifted(int k) const {
  if (is_zero() || k == 0) return *this;
  Poly r;
  if (k > 0) {
    r.c_.assign(k, mpz_class(0));
    r.c_.insert(r.c_.end(), c_.begin(), c_.end());
  } else {
    if (low_degree() < -k) throw Error("Poly::shifted: negative exponent");
    r.c_.assign(c_.begin() + (-k), c_.end());
  }
  return r;
}

Poly Poly::reversed() const {
  Poly r = *this;
  std::reverse(r.c_.begin(), r.c_.end());
  r.trim();
  return r;
}

mpz_class Poly::content() const {
  mpz_class g = 0;
  for (const auto& x : c_) {
    if (x == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Poly Poly::divexact(const mpz_class& s) const {
  Poly r = *this;
  for (auto& x : r.c_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), s.get_mpz_t());
  return r;
}

mpz_class Poly::eval(const mpz_class& x) const {
  mpz_class r = 0;
  for (std::size_t k = c_.size(); k-- > 0;) {
    r *= x;
    r += c_[k];
  }
  return r;
}

std::uint64_t Poly::eval_mod(std::uint64_t t) const {
  std::uint64_t r = 0;
  for (std::size_t k = c_.size(); k-- > 0;) r = modp::add(modp::mul(r, t), modp::reduce(c_[k]));
  return r;
}

bool poly_divides(const Poly& b, const Poly& a, Poly* quotient) {
  if (b.is_zero()) return false;
  if (a.is_zero()) {
    if (quotient) *quotient = Poly();
    return true;
  }
  if (a.degree() < b.degree()) return false;
  if (b.is_monomial()) {
    int k = b.degree();
    if (a.low_degree() < k) return false;
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a[j] != 0 && !mpz_divisible_p(a[j].get_mpz_t(), b.lead().get_mpz_t())) return false;
    if (quotient) *quotient = a.shifted(-k).divexact(b.lead());
    return true;
  }
  const int db = b.degree();
  const int dq = a.degree() - db;
  std::vector<mpz_class> r = a.coeffs();
  std::vector<mpz_class> q(dq + 1);
  const mpz_class& lb = b.lead();
  for (int k = dq; k >= 0; --k) {
    mpz_class& top = r[k + db];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) return false;
    mpz_divexact(q[k].get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
    for (int j = 0; j <= db; ++j) {
      if (b[j] == 0) continue;
      mpz_submul(r[k + j].get_mpz_t(), q[k].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  for (int j = 0; j < db; ++j)
    if (r[j] != 0) return false;
  if (quotient) *quotient = Poly(std::move(q));
  return true;
}

namespace {

Poly primitive(const Poly& p) {
  if (p.is_zero()) return p;
  mpz_class c = p.content();
  if (p.lead() < 0) c = -c;
  return c == 1 ? p : p.divexact(c);
}

mpz_class max_norm(const Poly& p) {
  mpz_class m = 0;
  for (const auto& x : p.coeffs()) {
    mpz_class a = abs(x);
    if (a > m) m = a;
  }
  return m;
}

Poly pseudo_rem(Poly r, const Poly& b) {
  const mpz_class& lb = b.lead();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    Poly t = (b * r.lead()).shifted(r.degree() - b.degree());
    r = r * lb - t;
  }
  return r;
}

Poly prs_gcd(Poly a, Poly b) {
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    Poly r = pseudo_rem(a, b);
    a = std::move(b);
    b = primitive(r);
  }
  return primitive(a);
}

// Heuristic gcd of primitive polynomials by evaluation at a large integer.
bool heu_gcd(const Poly& a, const Poly& b, Poly* out) {
  mpz_class xi = 2 * std::min(max_norm(a), max_norm(b)) + 2;
  const int deg = std::max(a.degree(), b.degree());
  for (int iter = 0; iter < 6; ++iter) {
    if (mpz_sizeinbase(xi.get_mpz_t(), 2) * static_cast<std::size_t>(deg + 1) > 200000) return false;
    mpz_class ga = a.eval(xi);
    mpz_class gb = b.eval(xi);
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), ga.get_mpz_t(), gb.get_mpz_t());
    std::vector<mpz_class> digits;
    mpz_class half = xi / 2;
    while (g != 0) {
      mpz_class r;
      mpz_fdiv_r(r.get_mpz_t(), g.get_mpz_t(), xi.get_mpz_t());
      if (r > half) r -= xi;
      digits.push_back(r);
      g -= r;
      mpz_divexact(g.get_mpz_t(), g.get_mpz_t(), xi.get_mpz_t());
    }
    Poly cand = primitive(Poly(std::move(digits)));
    if (!cand.is_zero() && poly_divides(cand, a, nullptr) && poly_divides(cand, b, nullptr)) {
      *out = cand;
      return true;
    }
    xi = xi * 73794 / 27011;
  }
  return false;
}

}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return primitive(b) * b.content();
  if (b.is_zero()) return primitive(a) * a.content();
  const int v = std::min(a.low_degree(), b.low_degree());
  mpz_class ca = a.content();
  mpz_class cb = b.content();
  mpz_class c;
  mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  Poly pa = a.shifted(-a.low_degree());
  Poly pb = b.shifted(-b.low_degree());
  if (pa.is_constant() || pb.is_constant()) return Poly::monomial(c, v);
  pa = primitive(pa);
  pb = primitive(pb);
  Poly g;
  if (pa == pb) {
    g = pa;
  } else if (!heu_gcd(pa, pb, &g)) {
    g = prs_gcd(pa, pb);
  }
  return (g * c).shifted(v);
}

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(const mpq_class& c) : num_(c.get_num()), den_(c.get_den()) {}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error("RatFunc: zero denominator");
  canonicalize();
}

RatFunc RatFunc::q_pow(int k) {
  RatFunc r;
  if (k >= 0) {
    r.num_ = Poly::monomial(1, k);
  } else {
    r.num_ = Poly(1);
    r.den_ = Poly::monomial(1, -k);
  }
  return r;
}

RatFunc RatFunc::laurent(const std::vector<std::pair<int, mpq_class>>& terms) {
  RatFunc r;
  for (const auto& [e, c] : terms) r += RatFunc(c) * q_pow(e);
  return r;
}

void RatFunc::canonicalize() {
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  Poly g = poly_gcd(num_, den_);
  if (!(g.is_constant() && g[0] == 1)) {
    poly_divides(g, num_, &num_);
    poly_divides(g, den_, &den_);
  }
  if (den_.lead() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

namespace {
bool is_unit_poly(const Poly& p) { return p.is_constant() && p[0] == 1; }

Poly exact_div(const Poly& a, const Poly& b) {
  if (is_unit_poly(b)) return a;
  Poly q;
  if (!poly_divides(b, a, &q)) throw Error("RatFunc: inexact division");
  return q;
}
}  // namespace

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    canonicalize();
    return *this;
  }
  Poly g = poly_gcd(den_, o.den_);
  if (is_unit_poly(g)) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
    if (num_.is_zero()) den_ = Poly(1);
    return *this;
  }
  Poly d1 = exact_div(den_, g);
  Poly d2 = exact_div(o.den_, g);
  Poly n = num_ * d2 + o.num_ * d1;
  if (n.is_zero()) return *this = RatFunc();
  Poly g2 = poly_gcd(n, g);
  num_ = exact_div(n, g2);
  den_ = d1 * exact_div(o.den_, g2);
  if (den_.lead() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = RatFunc();
  Poly g1 = poly_gcd(num_, o.den_);
  Poly g2 = poly_gcd(o.num_, den_);
  num_ = exact_div(num_, g1) * exact_div(o.num_, g2);
  den_ = exact_div(den_, g2) * exact_div(o.den_, g1);
  if (den_.lead() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  return *this;
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw Error("RatFunc: division by zero");
  RatFunc r;
  r.num_ = den_;
  r.den_ = num_;
  if (r.den_.lead() < 0) {
    r.num_ = -r.num_;
    r.den_ = -r.den_;
  }
  return r;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) { return *this *= o.inverse(); }

bool RatFunc::eval_mod(std::uint64_t t, std::uint64_t* out) const {
  std::uint64_t d = den_.eval_mod(t);
  if (d == 0) return false;
  std::uint64_t n = num_.eval_mod(t);
  *out = modp::mul(n, modp::inv(d));
  return true;
}

RatFunc bar(const RatFunc& f) {
  if (f.is_zero()) return f;
  const int dn = f.num().degree();
  const int dd = f.den().degree();
  Poly n = f.num().reversed();
  Poly d = f.den().reversed();
  if (dd > dn) n = n.shifted(dd - dn);
  if (dn > dd) d = d.shifted(dn - dd);
  return RatFunc(std::move(n), std::move(d));
}

int ord0(const RatFunc& f) {
  if (f.is_zero()) return kOrdInfinity;
  return f.num().low_degree() - f.den().low_degree();
}

int ordinf(const RatFunc& f) {
  if (f.is_zero()) return kOrdInfinity;
  return f.den().degree() - f.num().degree();
}

mpq_class ev0(const RatFunc& f) {
  int v = ord0(f);
  if (v < 0) throw NotInA0("ev0: pole at q = 0");
  if (v > 0) return mpq_class(0);
  mpq_class r(f.num()[0], f.den()[0]);
  r.canonicalize();
  return r;
}

std::vector<mpq_class> series_at_zero(const RatFunc& f, int lo, int hi) {
  std::vector<mpq_class> out(hi >= lo ? hi - lo + 1 : 0);
  if (f.is_zero() || out.empty()) return out;
  const int v = ord0(f);
  Poly a = f.num().shifted(-f.num().low_degree());
  Poly b = f.den().shifted(-f.den().low_degree());
  const int need = hi - v;
  if (need < 0) return out;
  std::vector<mpq_class> c(need + 1);
  mpq_class b0(b[0]);
  for (int k = 0; k <= need; ++k) {
    mpq_class s = k < static_cast<int>(a.size()) ? mpq_class(a[k]) : mpq_class(0);
    for (int j = 1; j <= k && j < static_cast<int>(b.size()); ++j) s -= mpq_class(b[j]) * c[k - j];
    c[k] = s / b0;
  }
  for (int e = lo; e <= hi; ++e)
    if (e - v >= 0) out[e - lo] = c[e - v];
  return out;
}

std::vector<std::pair<int, mpq_class>> laurent_terms(const RatFunc& f) {
  std::vector<std::pair<int, mpq_class>> out;
  if (f.is_zero()) return out;
  if (!f.is_laurent()) throw Error("laurent_terms: not a Laurent polynomial");
  const int k = f.den().degree();
  const mpz_class& c = f.den().lead();
  for (std::size_t j = 0; j < f.num().size(); ++j) {
    if (f.num()[j] == 0) continue;
    mpq_class x(f.num()[j], c);
    x.canonicalize();
    out.emplace_back(static_cast<int>(j) - k, x);
  }
  return out;
}

// ---------------------------------------------------------------- q-numbers

RatFunc qint(int n, int s) {
  if (n < 0 || s < 1) throw Error("qint: need n >= 0, s >= 1");
  std::vector<std::pair<int, mpq_class>> terms;
  for (int k = 0; k < n; ++k) terms.emplace_back(s * (n - 1 - 2 * k), mpq_class(1));
  return RatFunc::laurent(terms);
}

RatFunc qfact(int n, int s) {
  RatFunc r(1);
  for (int k = 2; k <= n; ++k) r *= qint(k, s);
  return r;
}

RatFunc divided_power_coeff(int n, int s) { return qfact(n, s).inverse(); }

RatFunc tau(int s, int l) {
  if (s < 1 || l < 1) throw Error("tau: need s, l >= 1");
  return RatFunc(Poly(1), Poly(1) - Poly::monomial(1, 2 * s * l));
}

// ---------------------------------------------------------------- text

namespace {

std::string qpow_str(int e) {
  if (e == 1) return "q";
  return "q^" + std::to_string(e);
}

std::string term_str(const mpq_class& c, int e) {
  if (e == 0) return c.get_str();
  if (c == 1) return qpow_str(e);
  if (c == -1) return "-" + qpow_str(e);
  return c.get_str() + "*" + qpow_str(e);
}

std::string join_terms(const std::vector<std::pair<int, mpq_class>>& terms) {
  if (terms.empty()) return "0";
  std::string s;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const auto& [e, c] = terms[k];
    if (k == 0) {
      s += term_str(c, e);
    } else if (c < 0) {
      s += " - " + term_str(-c, e);
    } else {
      s += " + " + term_str(c, e);
    }
  }
  return s;
}

std::vector<std::pair<int, mpq_class>> poly_terms(const Poly& p) {
  std::vector<std::pair<int, mpq_class>> t;
  for (std::size_t j = 0; j < p.size(); ++j)
    if (p[j] != 0) t.emplace_back(static_cast<int>(j), mpq_class(p[j]));
  return t;
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  RatFunc parse() {
    RatFunc r = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing characters");
    return r;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw Error("parse_ratfunc: " + what + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
  }
  mpz_class integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return mpz_class(s_.substr(start, pos_ - start));
  }
  RatFunc expr() {
    RatFunc r;
    bool neg = false;
    if (accept('-')) neg = true;
    else accept('+');
    r = term();
    if (neg) r = -r;
    while (true) {
      if (accept('+')) r += term();
      else if (accept('-')) r -= term();
      else return r;
    }
  }
  RatFunc term() {
    RatFunc r = factor();
    while (true) {
      if (accept('*')) {
        r *= factor();
      } else if (accept('/')) {
        RatFunc d = factor();
        if (d.is_zero()) fail("division by zero");
        r /= d;
      } else {
        return r;
      }
    }
  }
  RatFunc factor() {
    RatFunc b = base();
    if (accept('^')) {
      bool neg = accept('-');
      mpz_class e = integer();
      long k = e.get_si();
      if (neg) k = -k;
      if (b.is_zero()) return b;
      RatFunc r(1);
      RatFunc x = k < 0 ? b.inverse() : b;
      for (long j = 0; j < std::abs(k); ++j) r *= x;
      return r;
    }
    return b;
  }
  RatFunc base() {
    skip();
    if (accept('(')) {
      RatFunc r = expr();
      if (!accept(')')) fail("expected ')'");
      return r;
    }
    if (accept('q')) return RatFunc::q_pow(1);
    if (accept('-')) return -factor();
    return RatFunc(mpq_class(integer()));
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_string(const Poly& p) { return join_terms(poly_terms(p)); }

std::string to_string(const RatFunc& f) {
  if (f.is_laurent() || f.is_zero()) return join_terms(laurent_terms(f));
  std::string n = to_string(f.num());
  std::string d = to_string(f.den());
  auto wrap = [](const Poly& p, const std::string& s) {
    std::size_t nz = 0;
    for (const auto& c : p.coeffs()) nz += (c != 0);
    return nz > 1 ? "(" + s + ")" : s;
  };
  return wrap(f.num(), n) + "/" + wrap(f.den(), d);
}

RatFunc parse_ratfunc(const std::string& text) { return Parser(text).parse(); }

}  // namespace bbcrystal
