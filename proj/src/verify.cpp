#include <chrono>
#include <cstdio>
#include <sstream>

#include "bbcrystal/verify.hpp"
#include "bbcrystal/vlambda.hpp"

namespace bbcrystal {

AmbientPtr make_ambient(const BCDatum& d, const std::vector<int>& dom) {
  if (dom.empty()) return Ambient::uminus(d);
  return Ambient::highest(d, dom);
}

Pipeline::Pipeline(AmbientPtr a, int h)
    : amb(std::move(a)),
      H(h),
      crystal(std::make_shared<CrystalData>(build_crystal(amb, H))),
      global(solve_global(crystal)),
      fam(lower_family(*crystal->ops, H)),
      filt(fam),
      basis(basis_from_global(global)) {}

UpperSide::UpperSide(const Pipeline& p)
    : gram(gram_matrices(*p.amb, p.fam)), fam(upper_family(p.fam, gram)), filt(fam), dual(dualize(p.basis, gram)) {}

Report negative_control(const Filtration& filt, const LabeledBasis& basis, const PerfectCertificate& cert,
                        bool* vacuous) {
  if (vacuous) *vacuous = false;
  for (const auto& [beta, ids] : basis.ids)
    if (ids.size() >= 2) return check_lower_certificate(filt, basis, duplicate_targets(cert, ids[0], ids[1]));
  // One element per weight: copy a nonzero target table across weights.
  for (const auto& [key, e] : cert.maps) {
    if (e.target < 0) continue;
    const int a = key.first;
    for (int b = 0; b < static_cast<int>(basis.size()); ++b)
      if (basis.offset(b) != basis.offset(a))
        return check_lower_certificate(filt, basis, duplicate_targets(cert, a, b));
  }
  if (vacuous) *vacuous = true;
  return {};
}

bool all_scalars_one(const PerfectCertificate& cert) {
  for (const auto& [key, e] : cert.maps)
    if (e.target >= 0 && !e.c.is_one()) return false;
  return true;
}

namespace {

class Runner {
 public:
  explicit Runner(VerifyResult& out) : out_(out) {}

  template <class F>
  void run(const std::string& module, const std::string& name, F&& body) {
    Check c;
    c.module = module;
    c.name = name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      body(c);
    } catch (const std::exception& e) {
      c.report.add(std::string("exception: ") + e.what());
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out_.checks.push_back(std::move(c));
  }

 private:
  VerifyResult& out_;
};

void verify_ambient(Runner& run, const std::string& mod, AmbientPtr amb, const VerifyOptions& opt) {
  const BCDatum& d = amb->datum();
  const int H = opt.H;
  const bool highest = amb->kind() == AmbientKind::Highest;

  run.run(mod, "relations", [&](Check& c) {
    c.report = check_relations(*amb, H);
    if (highest) {
      c.report.merge(check_oint(*amb, H), "O_int ");
      c.report.merge(check_radical_submodule(*amb, H), "radical ");
      c.report.merge(check_bar_stability(*amb, H), "bar ");
    }
  });

  std::unique_ptr<Pipeline> p;
  run.run(mod, "crystal and global basis construction", [&](Check& c) {
    p = std::make_unique<Pipeline>(amb, H);
    c.checked = p->basis.size();
  });
  if (!p) return;
  const KashiwaraOps& ops = *p->crystal->ops;

  run.run(mod, "i-string decomposition", [&](Check& c) {
    for (const Offset& beta : offsets_up_to(d.rank(), H))
      for (int i = 0; i < d.rank(); ++i, ++c.checked) c.report.merge(ops.check_decomposition(i, beta));
  });
  run.run(mod, "e~ f~ = id", [&](Check& c) {
    for (const Offset& beta : offsets_up_to(d.rank(), H))
      for (const IndexPair& il : iinf_up_to(d, H)) {
        if (height(beta) + il.l > H) continue;
        if (highest && amb->pairing(il.i, beta) <= 0) continue;
        c.report.merge(ops.check_ef_id(il, beta));
        ++c.checked;
      }
  });
  run.run(mod, "crystal lattice", [&](Check& c) { c.report = check_crystal_lattice(*p->crystal); });
  run.run(mod, "crystal basis", [&](Check& c) {
    c.report = check_crystal_basis(*p->crystal);
    c.report.merge(crystal_axioms(p->crystal->graph), "axioms ");
    c.checked = p->crystal->graph.vertices.size();
  });
  if (highest) {
    run.run(mod, "e~ u = E u mod qL", [&](Check& c) {
      c.report = check_lemma_euE(*p->crystal);
      std::size_t real = 0;
      for (const auto& v : c.report.violations) real += v.find("[re]") != std::string::npos;
      c.note = std::to_string(real) + " real-index, " + std::to_string(c.report.violations.size() - real) +
               " imaginary-index violations";
    });
  }
  run.run(mod, "global basis", [&](Check& c) {
    c.report = verify_global(p->global);
    c.checked = p->basis.size();
  });
  std::vector<EilReport> eil;
  run.run(mod, "E_il G(b) = G(e~ b) exact", [&](Check& c) {
    for (const IndexPair& il : iinf_up_to(d, H))
      if (d.is_imaginary(il.i)) eil.push_back(verify_Eil_bil(p->global, il));
    for (const auto& e : eil) {
      c.report.merge(e.a);
      c.checked += e.checked;
    }
  });
  run.run(mod, "E_il G(b) = G(e~ b) mod qL", [&](Check& c) {
    for (const auto& e : eil) {
      c.report.merge(e.a_mod_q);
      c.checked += e.checked;
    }
  });
  run.run(mod, "b_il G(b) = G(f~ b)", [&](Check& c) {
    for (const auto& e : eil) {
      c.report.merge(e.b);
      c.checked += e.checked;
    }
  });

  PerfectCertificate cert;
  run.run(mod, "lower perfect basis", [&](Check& c) {
    cert = certify_lower(p->filt, p->basis);
    c.report = cert.refutation;
    if (!all_scalars_one(cert)) c.report.add("some c_b != 1 for the global basis");
    auto g = lower_graph(p->fam, p->basis, cert);
    if (!crystal_isomorphic(g, p->crystal->graph)) c.report.add("lower perfect graph is not isomorphic to the crystal");
    c.report.merge(check_basic(p->filt, p->basis, cert, opt.nmax), "basic ");
    c.checked = cert.maps.size();
  });
  run.run(mod, "highest core", [&](Check& c) {
    if (!cert.ok()) throw Error("no certificate");
    c.report = check_hwcore(p->filt, p->basis, cert, cyclic_sequence(p->fam));
    c.checked = highest_core(cert, p->basis).size();
  });
  run.run(mod, "uniqueness", [&](Check& c) {
    if (!cert.ok()) throw Error("no certificate");
    Perturbation pert = perturb_basis(p->filt, p->basis, cert, opt.seed);
    PerfectCertificate c2 = certify_lower(p->filt, pert.basis);
    c.report.merge(c2.refutation, "second basis ");
    if (c2.ok()) {
      Comparison cmp = compare_perfect(p->filt, p->basis, cert, pert.basis, c2);
      c.report.merge(cmp.report, "compare ");
    }
    bool vacuous = false;
    Report neg = negative_control(p->filt, p->basis, cert, &vacuous);
    if (!vacuous && neg.ok()) c.report.add("negative control was not refuted");
    c.checked = pert.basis.size();
    c.note = std::to_string(pert.rescaled) + " rescaled, " + std::to_string(pert.noised) + " noised; control " +
             (vacuous ? "vacuous" : neg.violations.empty() ? "accepted" : "refuted: " + neg.violations.front());
  });
  run.run(mod, "duality", [&](Check& c) {
    if (!cert.ok()) throw Error("no certificate");
    UpperSide up(*p);
    PerfectCertificate uc = certify_upper(up.filt, up.dual);
    c.report = uc.refutation;
    c.report.merge(check_duality(cert, uc), "dual ");
    c.report.merge(check_lwcore(up.filt, up.dual, uc, opt.nmax), "lwcore ");
    if (!crystal_isomorphic(upper_graph(up.fam, up.dual, uc), p->crystal->graph))
      c.report.add("upper perfect graph is not isomorphic to the crystal");
    c.checked = uc.maps.size();
  });
}

}  // namespace

bool VerifyResult::ok() const {
  for (const auto& c : checks)
    if (!c.ok()) return false;
  return true;
}

json VerifyResult::to_json(bool timings) const {
  json rows = json::array();
  for (const auto& c : checks) {
    json row = {{"module", c.module}, {"check", c.name}, {"ok", c.ok()}, {"checked", c.checked}};
    row["violations"] = report_json(c.report, 5);
    if (!c.note.empty()) row["note"] = c.note;
    if (timings) row["seconds"] = c.seconds;
    rows.push_back(row);
  }
  return json{{"ok", ok()}, {"checks", rows}};
}

std::string VerifyResult::text(bool timings) const {
  std::ostringstream s;
  for (const auto& c : checks) {
    s << (c.ok() ? "PASS " : "FAIL ") << c.module << "  " << c.name;
    if (!c.ok()) s << "  (" << c.report.violations.size() << " violations; first: " << c.report.violations.front() << ")";
    if (!c.note.empty()) s << "  [" << c.note << "]";
    if (timings) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "  %.2fs", c.seconds);
      s << buf;
    }
    s << '\n';
  }
  s << (ok() ? "all checks passed\n" : "verification failed\n");
  return s.str();
}

VerifyResult verify_all(const BCDatum& d, const VerifyOptions& opt) {
  if (opt.H < 1) throw InvalidInput("height must be at least 1");
  std::vector<int> dom = opt.dom.empty() ? std::vector<int>(d.rank(), 1) : opt.dom;
  if (static_cast<int>(dom.size()) != d.rank()) throw InvalidInput("lambda length differs from the rank");
  VerifyResult out;
  Runner run(out);
  verify_ambient(run, "U^-", make_ambient(d, {}), opt);
  std::string mod = "V(";
  for (std::size_t k = 0; k < dom.size(); ++k) mod += (k ? "," : "") + std::to_string(dom[k]);
  verify_ambient(run, mod + ")", make_ambient(d, dom), opt);
  return out;
}

}  // namespace bbcrystal
