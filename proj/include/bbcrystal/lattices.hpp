#pragma once

#include "bbcrystal/crystal_graph.hpp"
#include "bbcrystal/kashiwara.hpp"

namespace bbcrystal {

class RankDeficient : public Error {
 public:
  using Error::Error;
};

// Free A_0-lattice of full rank, with a basis triangular along pivot_rows:
// column k vanishes on pivot_rows[0..k-1] and not on pivot_rows[k].
struct A0Lattice {
  Offset beta;
  Mat basis;
  std::vector<std::size_t> pivot_rows;

  std::size_t dim() const { return basis.cols(); }
  Vec coordinates(const Vec& v) const;
  bool contains(const Vec& v) const;
  // Residue in L/qL in lattice coordinates; throws NotInA0 outside L.
  QVec residue(const Vec& v) const;
};

A0Lattice dvr_reduce(const std::vector<Vec>& generators, std::size_t dim);

struct CrystalData {
  AmbientPtr amb;
  std::shared_ptr<KashiwaraOps> ops;
  int H = 0;
  std::map<Offset, A0Lattice> lattices;
  CrystalGraph graph;
  std::vector<Vec> lifts;       // ambient coordinates of a lattice element per vertex
  std::vector<QVec> residues;   // lattice coordinates mod q per vertex
  std::map<Offset, std::vector<int>> at;
};

// Closure of the vacuum under all ftilde_il up to height H.
CrystalData build_crystal(AmbientPtr amb, int H);
CrystalData build_crystal(std::shared_ptr<KashiwaraOps> ops, int H);

// Kashiwara operators in lattice coordinates are A_0-integral; residues form
// a Q-basis of L/qL of the right size.
Report check_crystal_lattice(const CrystalData& c);
// e~ and f~ send B to B u {0} and f~ b = b' iff e~ b' = b.
Report check_crystal_basis(const CrystalData& c);
// e~_il u = E_il u mod qL on lattice basis vectors and vertex lifts (V(lambda)).
Report check_lemma_euE(const CrystalData& c);

// Unimodular change of basis between two lattices.
bool same_lattice(const A0Lattice& a, const A0Lattice& b);

}  // namespace bbcrystal
