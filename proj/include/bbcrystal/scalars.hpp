#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bbcrystal {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// f has a pole at q = 0 where a value in A_0 was required.
class NotInA0 : public Error {
 public:
  using Error::Error;
};

// Dense polynomial in Z[q]; coefficient k is the coefficient of q^k.
class Poly {
 public:
  Poly() = default;
  explicit Poly(long c);
  explicit Poly(const mpz_class& c);
  explicit Poly(std::vector<mpz_class> coeffs);
  static Poly monomial(const mpz_class& c, int k);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  int low_degree() const;
  std::size_t size() const { return c_.size(); }
  const mpz_class& operator[](std::size_t k) const { return c_[k]; }
  const mpz_class& lead() const { return c_.back(); }
  const std::vector<mpz_class>& coeffs() const { return c_; }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_monomial() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const mpz_class& s);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const mpz_class& s) { return a *= s; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  Poly shifted(int k) const;  // multiply by q^k (k may be negative if divisible)
  Poly reversed() const;      // q^deg p(1/q)
  mpz_class content() const;  // positive gcd of coefficients (0 for zero)
  Poly divexact(const mpz_class& s) const;
  mpz_class eval(const mpz_class& x) const;
  std::uint64_t eval_mod(std::uint64_t t) const;

 private:
  void trim();
  std::vector<mpz_class> c_;
};

// Exact quotient a / b if b divides a in Z[q].
bool poly_divides(const Poly& b, const Poly& a, Poly* quotient);
Poly poly_gcd(const Poly& a, const Poly& b);  // positive leading coefficient

// Element of Q(q) in canonical form.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(long c) : num_(c), den_(1) {}  // NOLINT(implicit)
  explicit RatFunc(const mpq_class& c);
  RatFunc(Poly num, Poly den);
  static RatFunc q_pow(int k);
  static RatFunc laurent(const std::vector<std::pair<int, mpq_class>>& terms);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_constant() && den_.is_constant() && num_ == den_; }
  bool is_laurent() const { return den_.is_monomial(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  RatFunc inverse() const;
  // Size measure used for pivot selection.
  std::size_t weight() const { return num_.size() + den_.size(); }
  // Value mod p at q = t; false if the denominator vanishes there.
  bool eval_mod(std::uint64_t t, std::uint64_t* out) const;

 private:
  void canonicalize();
  Poly num_;
  Poly den_;
};

constexpr int kOrdInfinity = 1 << 29;

RatFunc bar(const RatFunc& f);
int ord0(const RatFunc& f);    // kOrdInfinity for 0
int ordinf(const RatFunc& f);  // kOrdInfinity for 0
mpq_class ev0(const RatFunc& f);  // throws NotInA0
// Coefficients of q^lo .. q^hi in the expansion of f at q = 0.
std::vector<mpq_class> series_at_zero(const RatFunc& f, int lo, int hi);
// Coefficients c_k of a Laurent polynomial (throws unless laurent).
std::vector<std::pair<int, mpq_class>> laurent_terms(const RatFunc& f);

RatFunc qint(int n, int s);
RatFunc qfact(int n, int s);
RatFunc divided_power_coeff(int n, int s);
RatFunc tau(int s, int l);

std::string to_string(const RatFunc& f);
std::string to_string(const Poly& p);
RatFunc parse_ratfunc(const std::string& text);

// Arithmetic modulo the Mersenne prime 2^61 - 1.
namespace modp {
constexpr std::uint64_t P = (std::uint64_t{1} << 61) - 1;
inline std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s >= P ? s - P : s;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + P - b; }
inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 r = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(r & P);
  std::uint64_t hi = static_cast<std::uint64_t>(r >> 61);
  return add(lo, hi);
}
std::uint64_t pow(std::uint64_t a, std::uint64_t e);
inline std::uint64_t inv(std::uint64_t a) { return pow(a, P - 2); }
std::uint64_t reduce(const mpz_class& z);
}  // namespace modp

}  // namespace bbcrystal
