#include "doctest.h"

#include <random>

#include "../common/oracle.hpp"
#include "../common/words.hpp"
#include "bbcrystal/kashiwara.hpp"

using namespace bbcrystal;

namespace {
RatFunc P(const char* s) { return parse_ratfunc(s); }
}  // namespace

TEST_SUITE("kashiwara") {
  TEST_CASE("decomposition examples") {
    auto v = Ambient::highest(BCDatum({{2}}, {1}), {2});
    KashiwaraOps ops(v);
    auto top = ops.decompose(0, {0}, {RatFunc(1)});
    REQUIRE(top.terms.size() == 1);
    CHECK(top.terms[0].c.parts.empty());
    CHECK(top.terms[0].u == Vec{RatFunc(1)});
    // b_i^2 v = b_i^{(2)} ([2]! v)
    auto two = ops.decompose(0, {2}, v->coords(Word{{0, 1}, {0, 1}}));
    REQUIRE(two.terms.size() == 1);
    CHECK(two.terms[0].c.parts == std::vector<int>{2});
    CHECK(two.terms[0].u == Vec{P("q + q^-1")});

    auto iso = Ambient::uminus(BCDatum({{0}}, {1}));
    KashiwaraOps iops(iso);
    auto d = iops.decompose(0, {3}, iso->coords(Word{{0, 2}, {0, 1}}));
    REQUIRE(d.terms.size() == 1);
    CHECK(d.terms[0].c.parts == std::vector<int>{2, 1});
    CHECK(d.terms[0].u == Vec{RatFunc(1)});
  }

  TEST_CASE("operator examples") {
    auto v = Ambient::highest(BCDatum({{2}}, {1}), {1});
    KashiwaraOps ops(v);
    CHECK(is_zero(ops.ftilde({0, 1}, {1}, {RatFunc(1)})));

    auto iso = Ambient::uminus(BCDatum({{0}}, {1}));
    KashiwaraOps iops(iso);
    Vec f = iops.ftilde({0, 1}, {1}, iso->coords(Word{{0, 1}}));
    CHECK(f == scale(RatFunc(mpq_class(1, 2)), iso->coords(Word{{0, 1}, {0, 1}})));

    auto im = Ambient::uminus(BCDatum({{-2}}, {1}));
    KashiwaraOps mops(im);
    Vec u = im->coords(Word{{0, 2}, {0, 1}});
    CHECK(mops.etilde({0, 2}, {3}, u) == im->coords(Word{{0, 1}}));
    CHECK(is_zero(mops.etilde({0, 1}, {3}, u)));
    // f~ prepends the part l.
    CHECK(mops.ftilde({0, 2}, {1}, im->coords(Word{{0, 1}})) == u);
  }

  TEST_CASE("ef identity examples") {
    KashiwaraOps a(Ambient::highest(BCDatum({{2}}, {1}), {2}));
    CHECK(a.check_ef_id({0, 1}, {0}).ok());
    auto im = Ambient::highest(BCDatum({{-2}}, {1}), {1});
    KashiwaraOps b(im);
    CHECK(im->pairing(0, {1}) > 0);
    CHECK(b.check_ef_id({0, 1}, {1}).ok());
  }

  TEST_CASE("reconstruction, weight shifts and ef identity on the corpus") {
    std::mt19937_64 rng(21);
    const int H = 4;
    for (const auto& name : oracle::corpus_names()) {
      BCDatum d = oracle::corpus(name);
      for (int kind = 0; kind < 2; ++kind) {
        AmbientPtr amb = kind ? AmbientPtr(Ambient::highest(d, std::vector<int>(d.rank(), 1)))
                              : AmbientPtr(Ambient::uminus(d));
        KashiwaraOps ops(amb);
        for (const Offset& beta : offsets_up_to(d.rank(), H)) {
          const std::size_t n = amb->dim(beta);
          INFO(name << (kind ? " V" : " U") << " " << to_string(beta));
          for (int i = 0; i < d.rank(); ++i) {
            CHECK(ops.check_decomposition(i, beta).ok());
            for (int t = 0; t < 20 && n > 0; ++t) {
              Vec u(n);
              for (auto& x : u) x = oracle::random_ratfunc(rng);
              CHECK(ops.reconstruct(ops.decompose(i, beta, u), beta) == u);
            }
          }
          for (const IndexPair& il : iinf_up_to(d, H)) {
            if (height(beta) + il.l > H) continue;
            const Mat& f = ops.ftilde_matrix(il, beta);
            CHECK(f.rows() == amb->dim(beta + d.alpha(il.i, il.l)));
            CHECK(f.cols() == n);
            if (kind == 0 || amb->pairing(il.i, beta) > 0) CHECK(ops.check_ef_id(il, beta).ok());
          }
        }
      }
    }
  }

  TEST_CASE("isotropic pairing zero is outside the hypothesis") {
    auto v = Ambient::highest(BCDatum({{0}}, {1}), {0});
    KashiwaraOps ops(v);
    CHECK(v->pairing(0, {0}) == 0);
    CHECK(ops.ftilde_matrix({0, 1}, {0}).rows() == 0);
  }
}
