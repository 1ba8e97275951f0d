#pragma once

#include "bbcrystal/ambient.hpp"

namespace bbcrystal {

// Per-weight quotient of the free algebra (or of U^- v_lambda) by the radical.
struct QuotientBasis {
  Offset alpha;
  std::vector<Word> words;
  Mat gram;
  // Coordinates of a word of weight alpha in the representatives.
  Vec project(const Ambient& amb, const Word& w) const { return amb.coords(w); }
};

QuotientBasis quotient_basis(const Ambient& amb, const Offset& alpha);

// Primitive (Serre-type) and commutation relations up to height H lie in the radical.
Report check_relations(const Ambient& amb, int H);

// E_il on V(lambda) (e'_il on U^-), in quotient coordinates.
Vec E_action(const Ambient& amb, IndexPair il, const Offset& beta, const Vec& v);
RatFunc contravariant_form(const Ambient& amb, const Word& u, const Word& v);
const WeightSpace& vlambda_basis(const Ambient& amb, const Offset& beta);
// O_int conditions (d), (e), (f) up to height H.
Report check_oint(const Ambient& amb, int H);

// b_il (radical) in radical and contravariance on all weights up to H.
Report check_radical_submodule(const Ambient& amb, int H);
Report check_bar_stability(const Ambient& amb, int H);

}  // namespace bbcrystal
