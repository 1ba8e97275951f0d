#pragma once

#include "bbcrystal/globalbasis.hpp"

namespace bbcrystal {

class HypothesisFailed : public Error {
 public:
  using Error::Error;
};

class SingularGram : public Error {
 public:
  using Error::Error;
};

enum class FamilyKind { Lower, Upper };

// f_il (lower, offset + l alpha_i) or e_il (upper, offset - l alpha_i) as
// per-weight matrices on the offsets of height <= H.
struct EndoFamily {
  FamilyKind kind = FamilyKind::Lower;
  BCDatum datum;
  std::vector<int> dom;
  int H = 0;
  std::map<Offset, std::size_t> dims;
  std::map<std::pair<IndexPair, Offset>, Mat> mats;  // keyed by source offset

  std::vector<IndexPair> indices() const { return iinf_up_to(datum, H); }
  bool in_range(const Offset& beta) const;
  std::size_t dim(const Offset& beta) const;
  Offset target(IndexPair il, const Offset& beta) const;
  // nullptr when the target leaves the truncation.
  const Mat* matrix(IndexPair il, const Offset& beta) const;
  Vec apply(IndexPair il, const Offset& beta, const Vec& v) const;
  int pairing(int i, const Offset& beta) const { return datum.pairing(i, beta, dom); }
};

EndoFamily lower_family(const KashiwaraOps& ops, int H);
// The raising operators of the ambient (E_il or e'_il) as an upper family.
EndoFamily raising_family(const Ambient& amb, int H);
// Weight shift and shapes, finite support below the vacuum.
Report check_weak(const EndoFamily& fam);

// Elements are numbered 0..size()-1; each lies in one weight space.
struct LabeledBasis {
  std::map<Offset, Mat> vectors;
  std::map<Offset, std::vector<int>> ids;
  std::vector<std::pair<Offset, std::size_t>> where;
  std::vector<std::string> labels;

  std::size_t size() const { return where.size(); }
  const Offset& offset(int id) const { return where.at(id).first; }
  Vec vec(int id) const;
  int add(const Offset& beta, const Vec& v, std::string label = {});
};

LabeledBasis basis_from_global(const GlobalBasis& gb);
// Per-weight independence and spanning.
Report check_basis(const EndoFamily& fam, const LabeledBasis& basis);

// f^n V (lower) or ker e^n (upper), and the derived depths, memoized.
class Filtration {
 public:
  explicit Filtration(const EndoFamily& fam) : fam_(fam) {}
  const EndoFamily& family() const { return fam_; }

  const Subspace& level(IndexPair il, const Offset& beta, int n) const;
  // d_il(v) for lower families, d^vee_il(v) for upper ones (v != 0).
  int depth(IndexPair il, const Offset& beta, const Vec& v) const;
  // f_{i_1}^{a_1} ... f_{i_r}^{a_r} as a matrix into beta, from the offset
  // returned in *source; nullopt when the source is not an offset.
  std::optional<Mat> monomial(const std::vector<IndexPair>& seq, const std::vector<int>& a,
                              const Offset& beta, Offset* source) const;
  Subspace v_ge(const std::vector<IndexPair>& seq, const std::vector<int>& a, const Offset& beta) const;
  Subspace v_gt(const std::vector<IndexPair>& seq, const std::vector<int>& a, const Offset& beta) const;
  // sum of f_il V at beta.
  const Subspace& lowered(const Offset& beta) const;

 private:
  const EndoFamily& fam_;
  mutable std::map<std::tuple<IndexPair, Offset, int>, Subspace> levels_;
  mutable std::map<Offset, Subspace> lowered_;
};

int d_lower(const Filtration& filt, IndexPair il, const Offset& beta, const Vec& v);
int d_upper(const EndoFamily& fam, IndexPair il, const Offset& beta, const Vec& v);

struct CertEntry {
  int target = -1;   // -1 is the element 0
  RatFunc c = 1;
  Vec residual;      // family(b) - c * target
  int level = 0;     // filtration level containing the residual
};

struct PerfectCertificate {
  FamilyKind kind = FamilyKind::Lower;
  std::map<std::pair<int, IndexPair>, int> depth;       // d_il or d^vee_il
  std::map<std::pair<int, IndexPair>, CertEntry> maps;  // f_bold or E_bold
  std::map<std::pair<int, IndexPair>, int> preimage;    // e_bold or F_bold
  Report refutation;
  bool ok() const { return refutation.ok(); }
  std::optional<int> bold(int b, IndexPair il) const;
  int d(int b, IndexPair il) const { return depth.at({b, il}); }
  void index_preimages();
};

// Finds f_bold and c_b and checks conditions (i)-(iii).
PerfectCertificate certify_lower(const Filtration& filt, const LabeledBasis& basis);
// Re-checks a given table of f_bold targets against the family.
Report check_lower_certificate(const Filtration& filt, const LabeledBasis& basis, const PerfectCertificate& cert);
CrystalGraph lower_graph(const EndoFamily& fam, const LabeledBasis& basis, const PerfectCertificate& cert);
std::optional<int> e_bold(const PerfectCertificate& cert, int b, IndexPair il);
// Membership identities between f^n V, d_il and f_bold for n <= nmax.
Report check_basic(const Filtration& filt, const LabeledBasis& basis, const PerfectCertificate& cert, int nmax);

// A good sequence of indices: the cyclic repetition of one period.
struct GoodSequence {
  std::vector<IndexPair> period;
  IndexPair at(std::size_t k) const { return period.at(k % period.size()); }
};
GoodSequence cyclic_sequence(const EndoFamily& fam, bool reversed = false);

struct DTop {
  std::vector<int> d;  // trailing zeros trimmed
  int core = 0;
};
DTop dtop(const PerfectCertificate& cert, const LabeledBasis& basis, const GoodSequence& seq, int b);
std::vector<int> highest_core(const PerfectCertificate& cert, const LabeledBasis& basis);
// d(i,b) = L(i,b) by membership, the spans of V^{>=i,a}, monotonicity,
// injectivity of e_{i,a} on B_{i,a}, and the bases of V^{>=}/V^{>} and V_H.
Report check_hwcore(const Filtration& filt, const LabeledBasis& basis, const PerfectCertificate& cert,
                    const GoodSequence& seq);

struct Comparison {
  std::vector<int> psi;  // basis ids of the first to the second
  std::vector<RatFunc> scalars;
  Report report;
  bool ok() const { return report.ok(); }
};
// Throws HypothesisFailed if p_H(B_H) != p_H(B'_H) or the bases span
// different spaces.
Comparison compare_perfect(const Filtration& filt, const LabeledBasis& b1, const PerfectCertificate& c1,
                           const LabeledBasis& b2, const PerfectCertificate& c2);

// Unit rescalings 1 + q r(q) off the highest core plus random elements of
// the intersection of the f_il^{d_il(b)+1} V.
struct Perturbation {
  LabeledBasis basis;
  std::size_t rescaled = 0;
  std::size_t noised = 0;
};
Perturbation perturb_basis(const Filtration& filt, const LabeledBasis& basis, const PerfectCertificate& cert,
                           unsigned seed);

// f_bold targets of a copied onto b (same weight).
PerfectCertificate duplicate_targets(const PerfectCertificate& cert, int a, int b);

// Upper side. The form identifies V with its restricted dual.
std::map<Offset, Mat> gram_matrices(const Ambient& amb, const EndoFamily& fam);
EndoFamily upper_family(const EndoFamily& lower, const std::map<Offset, Mat>& gram);
LabeledBasis dualize(const LabeledBasis& basis, const std::map<Offset, Mat>& gram);

PerfectCertificate certify_upper(const Filtration& filt, const LabeledBasis& basis);
CrystalGraph upper_graph(const EndoFamily& fam, const LabeledBasis& basis, const PerfectCertificate& cert);
// e^k along E_bold, and ker e^k spanned by the b with d^vee < k, for k <= kmax.
Report check_lwcore(const Filtration& filt, const LabeledBasis& basis, const PerfectCertificate& cert, int kmax);
// d_il(b) = d^vee_il(b^vee) and (e_bold b)^vee = E_bold(b^vee).
Report check_duality(const PerfectCertificate& lower, const PerfectCertificate& upper);

}  // namespace bbcrystal
