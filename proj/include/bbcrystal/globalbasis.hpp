#pragma once

#include "bbcrystal/lattices.hpp"

namespace bbcrystal {

class NoSolution : public Error {
 public:
  using Error::Error;
};

struct GlobalBasisSlice {
  Offset beta;
  Mat integral;             // A_Q-basis of the integral form (ambient coordinates)
  Mat barmat;               // bar involution in lattice coordinates
  std::vector<int> vertices;
  Mat G;                    // column k is G(vertices[k]) in ambient coordinates
  Mat coeffs;               // G = integral * coeffs, Laurent entries
  int degree = 0;           // Laurent degree bound used by the solver
};

struct GlobalBasis {
  std::shared_ptr<const CrystalData> crystal;
  std::map<Offset, GlobalBasisSlice> slices;
  std::vector<std::size_t> column;  // vertex -> column in its slice

  Vec G(int vertex) const;
  // Q-linear extension of G to L/qL (residue in lattice coordinates).
  Vec G_of_residue(const Offset& beta, const QVec& residue) const;
};

// bar in the coordinates of the lattice basis: Lambda^{-1} bar(Lambda).
Mat bar_matrix(const A0Lattice& lattice);

// Integral form spanned by divided-power monomials on the vacuum: returns a
// basis at every weight up to H, certified by Laurent coordinates.
std::map<Offset, Mat> integral_bases(const KashiwaraOps& ops, int H);

GlobalBasis solve_global(std::shared_ptr<const CrystalData> crystal);

// bar-invariance, congruence mod qL, Laurent coordinates, barmat involutive,
// residues of G a Q-basis of L/qL.
Report verify_global(const GlobalBasis& gb);

struct EilReport {
  Report a;        // E_il G(b) = G(e~ b) exactly
  Report a_mod_q;  // the same modulo qL
  Report b;        // b_il G(b) = G(f~ b), with multiplicities for isotropic i
  std::size_t checked = 0;
};
// E_il is E_action on V(lambda) and e'_il on U^-.
EilReport verify_Eil_bil(const GlobalBasis& gb, IndexPair il);

}  // namespace bbcrystal
