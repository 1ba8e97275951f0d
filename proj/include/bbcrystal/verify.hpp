#pragma once

#include "bbcrystal/io.hpp"

namespace bbcrystal {

// Empty dom gives U^-, otherwise V(lambda).
AmbientPtr make_ambient(const BCDatum& d, const std::vector<int>& dom);

// Crystal, global basis and the lower family up to height H.
struct Pipeline {
  Pipeline(AmbientPtr amb, int H);
  Pipeline(const Pipeline&) = delete;
  Pipeline& operator=(const Pipeline&) = delete;

  AmbientPtr amb;
  int H;
  std::shared_ptr<CrystalData> crystal;
  GlobalBasis global;
  EndoFamily fam;
  Filtration filt;
  LabeledBasis basis;  // the global basis
};

// The adjoint family on the restricted dual and the dual basis.
struct UpperSide {
  explicit UpperSide(const Pipeline& p);
  UpperSide(const UpperSide&) = delete;
  UpperSide& operator=(const UpperSide&) = delete;

  std::map<Offset, Mat> gram;
  EndoFamily fam;
  Filtration filt;
  LabeledBasis dual;
};

// Forges a certificate (targets copied onto another element) and returns
// the re-check, which must refute it. Empty when no forgery exists.
Report negative_control(const Filtration& filt, const LabeledBasis& basis, const PerfectCertificate& cert,
                        bool* vacuous = nullptr);

bool all_scalars_one(const PerfectCertificate& cert);

struct Check {
  std::string module;  // "U^-" or "V(lambda)"
  std::string name;
  Report report;
  std::size_t checked = 0;
  double seconds = 0;
  std::string note;
  bool ok() const { return report.ok(); }
};

struct VerifyOptions {
  int H = 5;
  std::vector<int> dom;  // empty means all 1
  unsigned seed = 1;
  int nmax = 3;
};

struct VerifyResult {
  std::vector<Check> checks;
  bool ok() const;
  json to_json(bool timings) const;
  std::string text(bool timings) const;
};

VerifyResult verify_all(const BCDatum& d, const VerifyOptions& opt);

}  // namespace bbcrystal
