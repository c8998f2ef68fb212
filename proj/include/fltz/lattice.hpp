#ifndef FLTZ_LATTICE_HPP
#define FLTZ_LATTICE_HPP

#include "fltz/linalg.hpp"

namespace fltz {

// Projection N -> N / sat(span S) with an integral right inverse.
struct QuotientMap {
  int source_rank = 0;
  int target_rank = 0;
  IMat matrix;   // target_rank x source_rank
  IMat section;  // source_rank x target_rank, matrix * section = id

  IVec apply(const IVec& x) const { return mat_apply(matrix, x); }
  QVec apply(const QVec& x) const { return mat_apply(matrix, x); }
  IVec lift(const IVec& y) const { return mat_apply(section, y); }
  // Transport of a covector p (with p . ker = 0) to the quotient: p o section.
  QVec covector(const QVec& p) const;
};

QuotientMap quotient_lattice(const IMat& vectors, int rank);

}  // namespace fltz

#endif
