#include "doctest.h"

#include "../common/scalar_props.hpp"
#include "bbcrystal/linalg.hpp"

using namespace bbcrystal;
using oracle::eval;

namespace {
RatFunc P(const char* s) { return parse_ratfunc(s); }
}  // namespace

TEST_SUITE("scalars") {
  TEST_CASE("qint examples") {
    for (int s = 1; s <= 3; ++s) CHECK(qint(1, s) == RatFunc(1));
    CHECK(qint(2, 1) == P("q + q^-1"));
    // Oracle: evaluate the defining quotient at a rational point.
    const mpq_class t(3, 2);
    mpq_class expect = (oracle::pow(t, 6) - oracle::pow(t, -6)) / (oracle::pow(t, 2) - oracle::pow(t, -2));
    CHECK(eval(qint(3, 2), t) == expect);
    CHECK(qint(3, 2) == P("q^4 + 1 + q^-4"));
    for (int n = 0; n < 6; ++n) CHECK(bar(qint(n, 2)) == qint(n, 2));
  }

  TEST_CASE("factorials and divided powers") {
    CHECK(qfact(0, 3) == RatFunc(1));
    CHECK(qfact(2, 1) == P("q + q^-1"));
    RatFunc d = divided_power_coeff(3, 1);
    const mpq_class t(2, 5);
    mpq_class q2 = t + 1 / t;
    mpq_class q3 = t * t + 1 + 1 / (t * t);
    CHECK(eval(d, t) == 1 / (q2 * q3));
    CHECK(d == P("1/((q + q^-1)*(q^2 + 1 + q^-2))"));
  }

  TEST_CASE("tau") {
    CHECK(tau(1, 1) == P("1/(1 - q^2)"));
    CHECK(tau(2, 1) == P("1/(1 - q^4)"));
    CHECK(tau(1, 2) == tau(2, 1));
  }

  TEST_CASE("bar examples") {
    CHECK(bar(P("q")) == P("q^-1"));
    CHECK(bar(P("q + q^-1")) == P("q + q^-1"));
    RatFunc b = bar(tau(1, 1));
    CHECK(b == P("-q^2/(1 - q^2)"));
    CHECK(eval(b, mpq_class(3, 4)) == eval(tau(1, 1), mpq_class(4, 3)));
  }

  TEST_CASE("valuations") {
    CHECK(ev0(tau(1, 1)) == 1);
    CHECK(ord0(P("q^3/(1 + q)")) == 3);
    CHECK(ordinf(P("q + q^-1")) == -1);
    CHECK(ord0(P("q + q^-1")) == -1);
    CHECK(ev0(P("q/(1+q)")) == 0);
    CHECK_THROWS_AS(ev0(P("q^-1 + 1")), NotInA0);
    CHECK(ord0(RatFunc()) == kOrdInfinity);
  }

  TEST_CASE("text rendering") {
    CHECK(to_string(P("1 + q^-2")) == "q^-2 + 1");
    CHECK(to_string(RatFunc()) == "0");
    CHECK(to_string(P("1/2*q^3 - q")) == "-q + 1/2*q^3");
    RatFunc f = P("(3*q^2 - 1)/(2 + q^5)");
    CHECK(parse_ratfunc(to_string(f)) == f);
  }

  TEST_CASE("canonical form") {
    RatFunc f(Poly({mpz_class(2), mpz_class(2)}), Poly({mpz_class(-4), mpz_class(0), mpz_class(4)}));
    // (2 + 2q) / (4q^2 - 4) = 1 / (2q - 2)
    CHECK(f.num() == Poly(1));
    CHECK(f.den() == Poly({mpz_class(-2), mpz_class(2)}));
    CHECK(RatFunc(Poly(), Poly(7)).den() == Poly(1));
  }

  TEST_CASE("polynomial gcd") {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 200; ++k) {
      Poly c = oracle::random_poly(rng, 4, 5);
      Poly a = oracle::random_poly(rng, 5, 5);
      Poly b = oracle::random_poly(rng, 5, 5);
      if (c.is_zero() || a.is_zero() || b.is_zero()) continue;
      Poly g = poly_gcd(a * c, b * c);
      CHECK(poly_divides(c, g, nullptr));
      CHECK(poly_divides(g, a * c, nullptr));
      CHECK(poly_divides(g, b * c, nullptr));
    }
  }

  TEST_CASE("series at zero") {
    auto s = series_at_zero(tau(1, 1), -1, 4);
    std::vector<mpq_class> expect = {0, 1, 0, 1, 0, 1};
    CHECK(s == expect);
    auto t = series_at_zero(P("q^-2 + 3 + q"), -3, 1);
    std::vector<mpq_class> expect2 = {0, 1, 0, 3, 1};
    CHECK(t == expect2);
  }

  TEST_CASE("randomized property suite") {
    oracle::PropResult r = oracle::scalar_properties(12345, 1000);
    INFO(r.first_failure);
    CHECK(r.failures == 0);
  }

  TEST_CASE("exact linear algebra") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 5; ++trial) {
      const std::size_t n = 4;
      Mat a(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = oracle::random_ratfunc(rng);
      Mat inv = inverse(a);
      CHECK(a * inv == Mat::identity(n));
      // Dependent columns: third = q * first + second.
      Mat b(3, 4);
      for (std::size_t i = 0; i < 3; ++i) {
        b(i, 0) = oracle::random_ratfunc(rng);
        b(i, 1) = oracle::random_ratfunc(rng);
        b(i, 2) = RatFunc::q_pow(1) * b(i, 0) + b(i, 1);
        b(i, 3) = oracle::random_ratfunc(rng);
      }
      ColumnEchelon ce = column_echelon(b);
      ColumnEchelon ex = column_echelon_exact(b);
      CHECK(ce.pivots == ex.pivots);
      REQUIRE(ce.nonpivots.size() == 1);
      CHECK(ce.coeffs(0, 0) == RatFunc::q_pow(1));
      CHECK(ce.coeffs(1, 0) == RatFunc(1));
      CHECK(ce.coeffs == ex.coeffs);
      Mat k = kernel(b);
      CHECK((b * k).is_zero());
    }
  }
}
