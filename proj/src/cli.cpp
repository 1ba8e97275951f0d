#include "bbcrystal/cli.hpp"

#include <CLI11.hpp>
#include <ostream>

#include "bbcrystal/verify.hpp"

namespace bbcrystal {

namespace {

struct RunConfig {
  std::string datum;
  int H = 4;
  std::string lambda;
  std::string format = "json";
  unsigned seed = 1;
  std::string out;
  std::string basis, basis2;
  std::string dot;
  bool dual = false;
  bool timings = false;
  bool json_errors = false;
};

struct Failure {
  int code;
  std::string kind;
  std::string message;
};

class Session {
 public:
  Session(RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

  BCDatum datum() const {
    if (cfg_.datum.empty()) throw InvalidInput("--datum is required");
    return load_datum(cfg_.datum);
  }

  void emit(const std::string& text) const {
    if (cfg_.out.empty())
      out_ << text;
    else
      write_file(cfg_.out, text);
  }
  void emit(const json& j) const { emit(j.dump(2) + "\n"); }

  void check_height() const {
    if (cfg_.H < 1) throw InvalidInput("--height must be at least 1");
  }

  std::vector<int> dom_or_ones(const BCDatum& d) const {
    return cfg_.lambda.empty() ? std::vector<int>(d.rank(), 1) : parse_dom(cfg_.lambda, d.rank());
  }

  // U^- unless --lambda is given or the basis file declares V(lambda).
  std::vector<int> perfect_dom(const BCDatum& d, const json* file) const {
    std::vector<int> dom;
    if (!cfg_.lambda.empty()) dom = parse_dom(cfg_.lambda, d.rank());
    if (file && file->contains("lambda")) {
      std::vector<int> declared;
      try {
        declared = (*file)["lambda"].get<std::vector<int>>();
      } catch (const json::exception&) {
        throw InvalidInput("basis: lambda must be an integer array");
      }
      if (!dom.empty() && dom != declared) throw InvalidInput("basis file declares a different lambda");
      if (static_cast<int>(declared.size()) != d.rank()) throw InvalidInput("basis: lambda length differs from the rank");
      dom = declared;
    }
    return dom;
  }

  int datum_validate(const std::string& path) {
    const BCDatum d = load_datum(path);
    json tags = json::array();
    for (int i = 0; i < d.rank(); ++i) tags.push_back(tag_name(d.tag(i)));
    emit(json{{"ok", true}, {"rank", d.rank()}, {"tags", tags}, {"datum", datum_json(d)}});
    return ExitOk;
  }

  int crystal(const std::string& which) {
    check_height();
    const BCDatum d = datum();
    std::vector<int> dom;
    if (which == "blambda") dom = dom_or_ones(d);
    if (which == "binf" && !cfg_.lambda.empty()) throw InvalidInput("--lambda does not apply to binf");
    CrystalData c = build_crystal(make_ambient(d, dom), cfg_.H);
    if (cfg_.format == "dot")
      emit(crystal_dot(c.graph, which == "binf" ? "binf" : "blambda"));
    else if (cfg_.format == "text")
      emit(crystal_text(c.graph));
    else {
      json j = crystal_json(c.graph);
      if (which == "blambda") j["lambda"] = dom;
      j["height"] = cfg_.H;
      j["counts"] = weight_counts(c.graph);
      emit(j);
    }
    return ExitOk;
  }

  int global() {
    check_height();
    const BCDatum d = datum();
    std::vector<int> dom = cfg_.lambda.empty() ? std::vector<int>{} : parse_dom(cfg_.lambda, d.rank());
    auto c = std::make_shared<CrystalData>(build_crystal(make_ambient(d, dom), cfg_.H));
    GlobalBasis gb = solve_global(c);
    Report r = verify_global(gb);
    json j = global_json(gb);
    j["verification"] = report_json(r);
    emit(j);
    return r.ok() ? ExitOk : ExitFailed;
  }

  int perfect(const std::string& which) {
    check_height();
    const BCDatum d = datum();
    std::optional<json> f1, f2;
    if (!cfg_.basis.empty()) f1 = read_json(cfg_.basis);
    if (!cfg_.basis2.empty()) f2 = read_json(cfg_.basis2);
    const std::vector<int> dom = perfect_dom(d, f1 ? &*f1 : nullptr);
    if (f2 && perfect_dom(d, &*f2) != dom) throw InvalidInput("the two basis files live in different modules");
    Pipeline p(make_ambient(d, dom), cfg_.H);
    LabeledBasis b1 = f1 ? basis_from_json(*p.amb, *f1) : p.basis;

    if (which == "compare") return compare(p, b1, f2);
    const bool upper = which == "check-upper" || (which == "graph" && cfg_.dual);
    if (!upper) {
      PerfectCertificate cert = certify_lower(p.filt, b1);
      CrystalGraph g = lower_graph(p.fam, b1, cert);
      return finish(which, p, b1, cert, g, nullptr);
    }
    UpperSide up(p);
    // Without --basis the dual of the global basis; --dual dualizes the file.
    const bool from_lower = !f1 || cfg_.dual;
    LabeledBasis ub = from_lower ? dualize(b1, up.gram) : b1;
    PerfectCertificate cert = certify_upper(up.filt, ub);
    CrystalGraph g = upper_graph(up.fam, ub, cert);
    std::optional<Report> duality;
    if (from_lower) {
      PerfectCertificate lc = certify_lower(p.filt, b1);
      duality = lc.ok() ? check_duality(lc, cert) : lc.refutation;
    }
    return finish(which, p, ub, cert, g, duality ? &*duality : nullptr);
  }

  int verify(const std::string&) {
    const BCDatum d = datum();
    VerifyOptions opt;
    opt.H = cfg_.H;
    opt.seed = cfg_.seed;
    if (!cfg_.lambda.empty()) opt.dom = parse_dom(cfg_.lambda, d.rank());
    VerifyResult r = verify_all(d, opt);
    if (cfg_.format == "text")
      emit(r.text(cfg_.timings));
    else
      emit(r.to_json(cfg_.timings));
    return r.ok() ? ExitOk : ExitFailed;
  }

 private:
  static json read_json(const std::string& path) {
    try {
      return json::parse(read_file(path));
    } catch (const json::parse_error& e) {
      throw InvalidInput(path + ": " + e.what());
    }
  }

  int finish(const std::string& which, const Pipeline& p, const LabeledBasis& b, const PerfectCertificate& cert,
             const CrystalGraph& g, const Report* duality) {
    const bool iso = crystal_isomorphic(g, p.crystal->graph).has_value();
    if (which == "graph") {
      if (!cert.ok()) throw Failure{ExitFailed, "refuted", "not a perfect basis: " + cert.refutation.violations.front()};
      if (cfg_.format == "dot")
        emit(crystal_dot(g, cert.kind == FamilyKind::Lower ? "lower_perfect" : "upper_perfect"));
      else if (cfg_.format == "text")
        emit(crystal_text(g));
      else {
        json j = crystal_json(g);
        j["isomorphic_to_crystal"] = iso;
        emit(j);
      }
      return ExitOk;
    }
    if (!cfg_.dot.empty()) write_file(cfg_.dot, crystal_dot(g, "perfect"));
    json j;
    j["command"] = "perfect " + which;
    j["module"] = p.amb->kind() == AmbientKind::Uminus ? "uminus" : "highest";
    if (p.amb->kind() == AmbientKind::Highest) j["lambda"] = p.amb->dom();
    j["height"] = cfg_.H;
    j["certificate"] = certificate_json(cert, b);
    j["isomorphic_to_crystal"] = iso;
    bool ok = cert.ok();
    if (duality) {
      j["duality"] = report_json(*duality);
      ok = ok && duality->ok();
    }
    emit(j);
    return ok ? ExitOk : ExitFailed;
  }

  int compare(const Pipeline& p, const LabeledBasis& b1, const std::optional<json>& f2) {
    PerfectCertificate c1 = certify_lower(p.filt, b1);
    if (!c1.ok()) throw Failure{ExitFailed, "refuted", "first basis: " + c1.refutation.violations.front()};
    LabeledBasis b2;
    std::size_t rescaled = 0;
    if (f2) {
      b2 = basis_from_json(*p.amb, *f2);
    } else {
      Perturbation pert = perturb_basis(p.filt, b1, c1, cfg_.seed);
      b2 = std::move(pert.basis);
      rescaled = pert.rescaled;
    }
    PerfectCertificate c2 = certify_lower(p.filt, b2);
    if (!c2.ok()) throw Failure{ExitFailed, "refuted", "second basis: " + c2.refutation.violations.front()};
    Comparison cmp = compare_perfect(p.filt, b1, c1, b2, c2);
    json j = comparison_json(cmp, b1, b2);
    if (!f2) j["perturbation"] = {{"seed", cfg_.seed}, {"rescaled", rescaled}};
    if (!cfg_.dot.empty()) write_file(cfg_.dot, crystal_dot(lower_graph(p.fam, b1, c1), "perfect"));
    emit(j);
    return cmp.ok() ? ExitOk : ExitFailed;
  }

  RunConfig& cfg_;
  std::ostream& out_;
};

void add_common(CLI::App* app, RunConfig& cfg, bool lambda = true) {
  app->add_option("--datum", cfg.datum, "Datum file (JSON or TOML)");
  app->add_option("--height", cfg.H, "Truncation height H");
  if (lambda) app->add_option("--lambda", cfg.lambda, "Dominant weight as v1,v2,...");
  app->add_option("--out", cfg.out, "Write the artifact here instead of stdout");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Crystal bases, global bases and perfect bases of Borcherds-Bozec quantum groups"};
  app.require_subcommand(1);
  app.add_flag("--json-errors", cfg.json_errors, "Print errors as JSON on stdout");

  std::string datum_path;
  auto* datum = app.add_subcommand("datum", "Datum files");
  datum->require_subcommand(1);
  auto* validate_cmd = datum->add_subcommand("validate", "Check the Borcherds-Cartan axioms");
  validate_cmd->add_option("path", datum_path, "Datum file")->required();

  std::string crystal_kind;
  auto* crystal = app.add_subcommand("crystal", "B(infinity) or B(lambda) up to height H");
  crystal->add_option("kind", crystal_kind, "binf or blambda")->required()->check(CLI::IsMember({"binf", "blambda"}));
  add_common(crystal, cfg);
  crystal->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "dot", "text"}));

  auto* global = app.add_subcommand("global", "Lower global basis (U^- or V(lambda) with --lambda)");
  add_common(global, cfg);

  auto* perfect = app.add_subcommand("perfect", "Perfect-basis certification");
  perfect->require_subcommand(1);
  for (const char* name : {"check-lower", "check-upper", "graph", "compare"}) {
    auto* sub = perfect->add_subcommand(name);
    add_common(sub, cfg);
    sub->add_option("--basis", cfg.basis, "Basis file (default: the global basis)");
    if (std::string(name) == "compare") {
      sub->add_option("--basis2", cfg.basis2, "Second basis file (default: a perturbation of the first)");
      sub->add_option("--seed", cfg.seed);
    }
    if (std::string(name) != "compare") sub->add_flag("--dual", cfg.dual, "Dualize the basis through the form");
    if (std::string(name) == "graph")
      sub->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "dot", "text"}));
    else
      sub->add_option("--dot", cfg.dot, "Also write the perfect graph as DOT");
  }

  auto* verify = app.add_subcommand("verify", "Run the invariant suite");
  verify->require_subcommand(1);
  auto* verify_all_cmd = verify->add_subcommand("all", "Every check on U^- and V(lambda)");
  add_common(verify_all_cmd, cfg);
  verify_all_cmd->add_option("--seed", cfg.seed);
  verify_all_cmd->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "text"}));
  verify_all_cmd->add_flag("--timings", cfg.timings, "Report seconds per check");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << e.what() << "\n";
      return ExitOk;
    }
    if (cfg.json_errors)
      out << json{{"error", {{"kind", "usage"}, {"message", e.what()}}}, {"exit", int(ExitInvalid)}}.dump(2) << "\n";
    else
      err << "bbcrystal: " << e.what() << "\n" << "run with --help for usage\n";
    return ExitInvalid;
  }
  if (verify->parsed() && verify_all_cmd->get_option("--height")->count() == 0) cfg.H = 5;

  Session s(cfg, out);
  auto fail = [&](int code, const std::string& kind, const std::string& msg) {
    if (cfg.json_errors)
      out << json{{"error", {{"kind", kind}, {"message", msg}}}, {"exit", code}}.dump(2) << "\n";
    else
      err << "bbcrystal: " << msg << "\n";
    return code;
  };
  try {
    if (validate_cmd->parsed()) return s.datum_validate(datum_path);
    if (crystal->parsed()) return s.crystal(crystal_kind);
    if (global->parsed()) return s.global();
    for (auto* sub : perfect->get_subcommands({}))
      if (sub->parsed()) return s.perfect(sub->get_name());
    if (verify_all_cmd->parsed()) return s.verify("all");
  } catch (const Failure& f) {
    return fail(f.code, f.kind, f.message);
  } catch (const InvalidDatum& e) {
    return fail(ExitInvalid, "invalid datum", e.what());
  } catch (const InvalidInput& e) {
    return fail(ExitInvalid, "invalid input", e.what());
  } catch (const HypothesisFailed& e) {
    return fail(ExitFailed, "hypothesis", e.what());
  } catch (const std::exception& e) {
    return fail(ExitFailed, "error", e.what());
  }
  return fail(ExitInvalid, "usage", "no command");
}

}  // namespace bbcrystal
