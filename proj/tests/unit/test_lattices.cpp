#include "doctest.h"

#include <algorithm>
#include <random>

#include "../common/oracle.hpp"
#include "../common/words.hpp"
#include "bbcrystal/lattices.hpp"

using namespace bbcrystal;

namespace {
RatFunc P(const char* s) { return parse_ratfunc(s); }

std::size_t real_failures(const Report& r) {
  return std::count_if(r.violations.begin(), r.violations.end(),
                       [](const std::string& v) { return v.find("[re]") != std::string::npos; });
}
}  // namespace

TEST_SUITE("lattices") {
  TEST_CASE("dvr_reduce examples") {
    A0Lattice a = dvr_reduce({{RatFunc(1), P("q")}, {P("q"), RatFunc(1)}}, 2);
    CHECK(a.dim() == 2);
    CHECK(a.contains({RatFunc(1), P("q")}));
    CHECK(a.contains({P("q"), RatFunc(1)}));
    CHECK(a.contains({RatFunc(1), RatFunc(0)}));  // (1,q) - q (q,1) = (1-q^2, 0), a unit multiple
    A0Lattice b = dvr_reduce({{RatFunc(1), RatFunc(0)}, {P("q"), RatFunc(0)}, {RatFunc(0), P("q")}}, 2);
    CHECK(b.basis.col(0) == Vec{RatFunc(1), RatFunc(0)});
    CHECK(b.basis.col(1) == Vec{RatFunc(0), P("q")});
    CHECK_FALSE(b.contains({RatFunc(0), RatFunc(1)}));
    A0Lattice c = dvr_reduce({{P("q"), RatFunc(0)}, {RatFunc(0), RatFunc(1)}}, 2);
    CHECK(same_lattice(c, dvr_reduce({{RatFunc(0), RatFunc(1)}, {P("q"), RatFunc(0)}}, 2)));
    CHECK_FALSE(c.contains({RatFunc(1), RatFunc(0)}));
    CHECK_THROWS_AS(dvr_reduce({{RatFunc(1), P("q")}, {P("q"), P("q^2")}}, 2), RankDeficient);
  }

  TEST_CASE("cardinalities") {
    for (int n = 0; n <= 4; ++n) {
      CrystalData c = build_crystal(Ambient::highest(BCDatum({{2}}, {1}), {n}), n + 2);
      CHECK(c.graph.vertices.size() == static_cast<std::size_t>(n + 1));
      CHECK(c.graph.edges.size() == static_cast<std::size_t>(n));
      for (const auto& e : c.graph.edges) CHECK(e.to == e.from + 1);
      CHECK(c.graph.sources() == std::vector<int>{0});
    }
    CrystalData one = build_crystal(Ambient::highest(BCDatum({{2}}, {1}), {1}), 3);
    CHECK_FALSE(one.graph.f(1, {0, 1}).has_value());
    const std::size_t part[] = {1, 1, 2, 3, 5, 7, 11};
    CrystalData iso = build_crystal(Ambient::uminus(BCDatum({{0}}, {1})), 6);
    for (int m = 0; m <= 6; ++m) CHECK(iso.graph.count_at({m}) == part[m]);
    CrystalData im = build_crystal(Ambient::uminus(BCDatum({{-2}}, {1})), 6);
    for (int m = 0; m <= 6; ++m) CHECK(im.graph.count_at({m}) == (m == 0 ? 1u : 1u << (m - 1)));
  }

  TEST_CASE("crystal basis theorems on the corpus") {
    for (const auto& name : oracle::corpus_names()) {
      BCDatum d = oracle::corpus(name);
      for (int kind = 0; kind < 2; ++kind) {
        AmbientPtr amb = kind ? AmbientPtr(Ambient::highest(d, std::vector<int>(d.rank(), 1)))
                              : AmbientPtr(Ambient::uminus(d));
        CrystalData c = build_crystal(amb, 5);
        INFO(name << (kind ? " V" : " U"));
        CHECK(check_crystal_lattice(c).ok());
        CHECK(check_crystal_basis(c).ok());
        CHECK(crystal_axioms(c.graph).ok());
        Report e = check_lemma_euE(c);
        CHECK(real_failures(e) == e.violations.size());
        for (const auto& [beta, lat] : c.lattices) CHECK(c.graph.count_at(beta) == amb->dim(beta));
      }
    }
  }

  TEST_CASE("lemma euE: imaginary indices hold, real strings of length 3 do not") {
    CHECK(check_lemma_euE(build_crystal(Ambient::highest(BCDatum({{2}}, {1}), {1}), 3)).ok());
    CrystalData c = build_crystal(Ambient::highest(BCDatum({{2}}, {1}), {2}), 3);
    Vec u = c.lifts[2];
    CHECK(c.amb->raise_matrix({0, 1}, {2}) * u == Vec{P("q^-1")});
    CHECK(c.ops->etilde({0, 1}, {2}, u) == Vec{RatFunc(1)});
    CHECK_FALSE(check_lemma_euE(c).ok());
    CHECK(check_lemma_euE(build_crystal(Ambient::highest(BCDatum({{0}}, {1}), {1}), 4)).ok());
    CHECK(check_lemma_euE(build_crystal(Ambient::highest(BCDatum({{-2}}, {1}), {2}), 4)).ok());
    CHECK(c.ops->etilde({0, 1}, {0}, {RatFunc(1)}).empty());
  }

  TEST_CASE("negative control: perturbed lattice") {
    CrystalData c = build_crystal(Ambient::uminus(BCDatum({{0}}, {1})), 4);
    A0Lattice& lat = c.lattices.at({2});
    REQUIRE(lat.dim() == 2);
    for (std::size_t r = 0; r < 2; ++r) lat.basis(r, 0) += P("q^-1") * lat.basis(r, 1);
    CHECK_FALSE(check_crystal_lattice(c).ok());
  }

  TEST_CASE("lattice well-definedness and residue soundness") {
    std::mt19937_64 rng(4);
    for (const auto& name : oracle::corpus_names()) {
      BCDatum d = oracle::corpus(name);
      auto amb = Ambient::uminus(d);
      CrystalData c = build_crystal(amb, 4);
      for (const auto& [beta, lat] : c.lattices) {
        if (height(beta) == 0) continue;
        std::vector<Vec> gens;
        for (const IndexPair& il : iinf_up_to(d, 4)) {
          Offset src = beta - d.alpha(il.i, il.l);
          if (!nonnegative(src) || !c.lattices.count(src)) continue;
          Mat img = c.ops->ftilde_matrix(il, src) * c.lattices.at(src).basis;
          for (std::size_t k = 0; k < img.cols(); ++k) gens.push_back(img.col(k));
        }
        std::shuffle(gens.begin(), gens.end(), rng);
        CHECK(same_lattice(lat, dvr_reduce(gens, lat.dim())));
        for (int v : c.at.at(beta)) {
          Vec w(lat.dim());
          for (auto& x : w) {
            x = oracle::random_ratfunc(rng);
            if (!x.is_zero() && ord0(x) < 0) x = x * RatFunc::q_pow(-ord0(x));
          }
          Vec y = lat.basis * w;
          REQUIRE(lat.contains(y));
          CHECK(lat.residue(c.lifts[v] + scale(P("q"), y)) == c.residues[v]);
        }
      }
    }
  }

  TEST_CASE("isomorphism") {
    CrystalData a = build_crystal(Ambient::uminus(oracle::corpus("reiso")), 4);
    auto id = crystal_isomorphic(a.graph, a.graph);
    REQUIRE(id);
    for (std::size_t k = 0; k < id->size(); ++k) CHECK((*id)[k] == static_cast<int>(k));
    CrystalData s3 = build_crystal(Ambient::highest(BCDatum({{2}}, {1}), {2}), 5);
    CrystalData s4 = build_crystal(Ambient::highest(BCDatum({{2}}, {1}), {3}), 5);
    CHECK_FALSE(crystal_isomorphic(s3.graph, s4.graph));
    CHECK(morphism_check(s3.graph, s3.graph, {0, 1, 2}, true).ok());
    CHECK_FALSE(morphism_check(s3.graph, s3.graph, {0, 2, 1}, false).ok());
    // Relabel vertices: still isomorphic.
    CrystalGraph g = a.graph;
    const int n = static_cast<int>(g.vertices.size());
    std::vector<int> perm(n);
    for (int k = 0; k < n; ++k) perm[k] = n - 1 - k;
    CrystalGraph h;
    h.datum = g.datum;
    h.dom = g.dom;
    h.vertices.resize(n);
    for (const auto& v : g.vertices) {
      h.vertices[perm[v.id]] = v;
      h.vertices[perm[v.id]].id = perm[v.id];
    }
    for (const auto& e : g.edges) h.add_edge(perm[e.from], perm[e.to], e.il);
    auto m = crystal_isomorphic(g, h);
    REQUIRE(m);
    CHECK(*m == perm);
  }
}
