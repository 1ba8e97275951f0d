#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

#include "../common/scalar_props.hpp"
#include "../common/words.hpp"
#include "bbcrystal/verify.hpp"
#include "bbcrystal/vlambda.hpp"

using namespace bbcrystal;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why + (detail.empty() ? "" : "; " + detail);
    pass = false;
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

struct Criterion {
  int id;
  std::string name;
  std::string tolerance;
  double limit;  // seconds
  std::function<Outcome()> run;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<int> ones(const BCDatum& d) { return std::vector<int>(d.rank(), 1); }

// U^- and V(1,...,1) of every corpus datum.
template <class F>
void for_corpus(F&& body) {
  for (const auto& name : oracle::corpus_names()) {
    const BCDatum d = oracle::corpus(name);
    body(name + " U^-", make_ambient(d, {}));
    body(name + " V", make_ambient(d, ones(d)));
  }
}

Outcome cardinalities() {
  Outcome o;
  double worst = 0;
  for (int n = 0; n <= 4; ++n) {
    const auto t0 = std::chrono::steady_clock::now();
    CrystalData c = build_crystal(make_ambient(BCDatum({{2}}, {1}), {n}), n + 2);
    const auto& g = c.graph;
    bool chain = g.vertices.size() == static_cast<std::size_t>(n + 1) && g.edges.size() == static_cast<std::size_t>(n);
    for (const auto& e : g.edges) chain = chain && e.il == IndexPair{0, 1} && e.to == e.from + 1;
    if (!chain) o.fail("rank-1 real dom=(" + std::to_string(n) + ") is not an (n+1)-chain");
    worst = std::max(worst, seconds_since(t0));
  }
  const std::vector<std::size_t> part = {1, 1, 2, 3, 5, 7, 11}, comp = {1, 1, 2, 4, 8, 16, 32};
  for (const auto& [a, want] : {std::pair{0, part}, std::pair{-2, comp}}) {
    const auto t0 = std::chrono::steady_clock::now();
    CrystalData c = build_crystal(make_ambient(BCDatum({{a}}, {1}), {}), 6);
    std::string got;
    for (int m = 0; m <= 6; ++m) {
      got += (m ? "," : "") + std::to_string(c.graph.count_at({m}));
      if (c.graph.count_at({m}) != want[m]) o.fail("a_ii=" + std::to_string(a) + " count at " + std::to_string(m));
    }
    o.note("a_ii=" + std::to_string(a) + ": " + got);
    worst = std::max(worst, seconds_since(t0));
  }
  if (worst >= 10) o.fail("a sub-case took longer than 10 s");
  return o;
}

Outcome crystal_theorems() {
  Outcome o;
  std::size_t lat = 0, basis = 0, re = 0, im = 0, im_checked = 0;
  for_corpus([&](const std::string& tag, AmbientPtr amb) {
    CrystalData c = build_crystal(amb, 5);
    const std::size_t l = check_crystal_lattice(c).violations.size();
    const std::size_t b = check_crystal_basis(c).violations.size();
    if (l) o.fail(tag + ": crystal lattice");
    if (b) o.fail(tag + ": crystal basis");
    lat += l;
    basis += b;
    if (amb->kind() != AmbientKind::Highest) return;
    Report e = check_lemma_euE(c);
    for (const auto& v : e.violations) (v.find("[re]") != std::string::npos ? re : im)++;
    for (int i = 0; i < amb->rank(); ++i) im_checked += amb->datum().is_imaginary(i);
  });
  if (re + im) o.fail("euE congruence violated");
  o.note("lattice " + std::to_string(lat) + ", basis " + std::to_string(basis) + ", euE real-index " +
         std::to_string(re) + ", euE imaginary-index " + std::to_string(im) + " violations");
  return o;
}

Outcome relations() {
  Outcome o;
  std::size_t n = 0;
  for_corpus([&](const std::string& tag, AmbientPtr amb) {
    Report r = check_relations(*amb, 6);
    if (!r.ok()) o.fail(tag + ": " + r.violations.front());
    ++n;
  });
  o.note(std::to_string(n) + " modules at H=6");
  return o;
}

Outcome global_basis() {
  Outcome o;
  std::size_t a = 0, amod = 0, b = 0, checked = 0, solved = 0;
  std::string first_a;
  for_corpus([&](const std::string& tag, AmbientPtr amb) {
    auto c = std::make_shared<CrystalData>(build_crystal(amb, 5));
    GlobalBasis gb;
    try {
      gb = solve_global(c);
    } catch (const std::exception& e) {
      o.fail(tag + ": solve failed: " + e.what());
      return;
    }
    ++solved;
    Report g = verify_global(gb);
    if (!g.ok()) o.fail(tag + ": " + g.violations.front());
    const BCDatum& d = amb->datum();
    for (const IndexPair& il : iinf_up_to(d, 5)) {
      if (!d.is_imaginary(il.i)) continue;
      EilReport e = verify_Eil_bil(gb, il);
      if (!e.a.ok() && first_a.empty()) first_a = tag + " " + e.a.violations.front();
      a += e.a.violations.size();
      amod += e.a_mod_q.violations.size();
      b += e.b.violations.size();
      checked += e.checked;
    }
  });
  if (a) o.fail("identity (a) exact fails: " + first_a);
  if (amod) o.fail("identity (a) mod qL fails");
  if (b) o.fail("identity (b) fails");
  o.note(std::to_string(solved) + "/12 solved; (a) exact " + std::to_string(a) + ", (a) mod qL " +
         std::to_string(amod) + ", (b) " + std::to_string(b) + " violations over " + std::to_string(checked) +
         " checks");
  return o;
}

Outcome perfect_theorems() {
  Outcome o;
  std::size_t n = 0;
  for_corpus([&](const std::string& tag, AmbientPtr amb) {
    Pipeline p(amb, 5);
    PerfectCertificate cert = certify_lower(p.filt, p.basis);
    if (!cert.ok()) return o.fail(tag + ": " + cert.refutation.violations.front());
    if (!all_scalars_one(cert)) o.fail(tag + ": some c_b != 1");
    if (!crystal_isomorphic(lower_graph(p.fam, p.basis, cert), p.crystal->graph)) o.fail(tag + ": graph");
    Report basic = check_basic(p.filt, p.basis, cert, 3);
    if (!basic.ok()) o.fail(tag + ": " + basic.violations.front());
    n += p.basis.size();
  });
  o.note(std::to_string(n) + " basis elements at H=5");
  return o;
}

Outcome uniqueness() {
  Outcome o;
  std::size_t rescaled = 0, refuted = 0, controls = 0;
  for_corpus([&](const std::string& tag, AmbientPtr amb) {
    Pipeline p(amb, 5);
    PerfectCertificate cert = certify_lower(p.filt, p.basis);
    if (!cert.ok()) return o.fail(tag + ": first basis");
    Perturbation pert = perturb_basis(p.filt, p.basis, cert, 20);
    rescaled += pert.rescaled;
    PerfectCertificate c2 = certify_lower(p.filt, pert.basis);
    if (!c2.ok()) return o.fail(tag + ": second basis " + c2.refutation.violations.front());
    Comparison cmp = compare_perfect(p.filt, p.basis, cert, pert.basis, c2);
    if (!cmp.ok()) o.fail(tag + ": " + cmp.report.violations.front());
    bool vacuous = false;
    Report neg = negative_control(p.filt, p.basis, cert, &vacuous);
    if (vacuous) return;
    ++controls;
    if (neg.ok())
      o.fail(tag + ": negative control accepted");
    else
      ++refuted;
  });
  o.note(std::to_string(rescaled) + " elements rescaled; " + std::to_string(refuted) + "/" + std::to_string(controls) +
         " negative controls refuted");
  return o;
}

Outcome duality() {
  Outcome o;
  std::size_t n = 0;
  for_corpus([&](const std::string& tag, AmbientPtr amb) {
    Pipeline p(amb, 4);
    PerfectCertificate cert = certify_lower(p.filt, p.basis);
    if (!cert.ok()) return o.fail(tag + ": lower");
    UpperSide up(p);
    PerfectCertificate uc = certify_upper(up.filt, up.dual);
    if (!uc.ok()) return o.fail(tag + ": " + uc.refutation.violations.front());
    Report d = check_duality(cert, uc);
    if (!d.ok()) o.fail(tag + ": " + d.violations.front());
    if (!crystal_isomorphic(upper_graph(up.fam, up.dual, uc), p.crystal->graph)) o.fail(tag + ": upper graph");
    n += up.dual.size();
  });
  o.note(std::to_string(n) + " dual elements at H=4");
  return o;
}

Outcome scalar_kernel() {
  Outcome o;
  oracle::PropResult r = oracle::scalar_properties(2024, 1000);
  if (r.failures) o.fail(r.first_failure);
  std::size_t spaces = 0;
  for_corpus([&](const std::string& tag, AmbientPtr amb) {
    KashiwaraOps ops(amb);
    const BCDatum& d = amb->datum();
    for (const Offset& beta : offsets_up_to(d.rank(), 5))
      for (const IndexPair& il : iinf_up_to(d, 5)) {
        if (height(beta) + il.l > 5) continue;
        if (amb->kind() == AmbientKind::Highest && amb->pairing(il.i, beta) <= 0) continue;
        Report e = ops.check_ef_id(il, beta);
        if (!e.ok()) o.fail(tag + ": " + e.violations.front());
        ++spaces;
      }
  });
  o.note(std::to_string(r.cases) + " scalar checks over 1000 cases, " + std::to_string(r.failures) + " failed; e~f~=id on " +
         std::to_string(spaces) + " (weight, index) pairs");
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "crystal cardinalities", "exact", 10 * 7, cardinalities},
      {2, "crystal lattice and basis theorems, euE congruence", "exact", 60, crystal_theorems},
      {3, "defining relations in the radical", "exact", 60, relations},
      {4, "global basis certification and Eil/bil identities", "exact", 600, global_basis},
      {5, "lower perfect basis theorems", "exact", 600, perfect_theorems},
      {6, "uniqueness of perfect graphs", "exact", 120, uniqueness},
      {7, "duality of lower and upper perfect bases", "exact", 600, duality},
      {8, "scalar kernel and e~ f~ = id", "exact", 600, scalar_kernel},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double t = seconds_since(t0);
    if (t >= c.limit) o.fail("time limit exceeded");
    failed += !o.pass;
    char head[160];
    std::snprintf(head, sizeof head, "[%s] criterion %d: %s | tolerance %s | %.2f s (limit %.0f s)", o.pass ? "PASS" : "FAIL",
                  c.id, c.name.c_str(), c.tolerance.c_str(), t, c.limit);
    std::cout << head << " | " << o.detail << std::endl;
  }
  std::cout << (8 - failed) << "/8 criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
