#ifndef FLTZ_LINALG_HPP
#define FLTZ_LINALG_HPP

#include <optional>

#include "fltz/exact.hpp"

namespace fltz {

// u * m * v = d with d diagonal, each diagonal entry nonnegative and dividing
// the next; u and v unimodular.
struct SmithNormalForm {
  IMat u, d, v;
};

SmithNormalForm smith_normal_form(const IMat& m);

IMat identity_matrix(int n);
IMat transpose(const IMat& m);
IMat mat_mul(const IMat& a, const IMat& b);
IVec mat_apply(const IMat& m, const IVec& x);
QVec mat_apply(const IMat& m, const QVec& x);

int rank_rational(const IMat& m);
Int det(const IMat& m);

// One rational solution of m x = b, or absent if inconsistent. Free
// coordinates (in the SNF coordinate system) are set to zero.
std::optional<QVec> solve_rational(const IMat& m, const QVec& b);

// One integral solution of m x = b, or absent if none exists.
std::optional<IVec> solve_integer(const IMat& m, const IVec& b);

// Basis (rows) of the saturated kernel {x in Z^n : m x = 0}.
IMat integer_kernel(const IMat& m);

// Inverse of a unimodular integer matrix, integral.
IMat inverse_unimodular(const IMat& m);

// Extend k independent rows that form part of a Z-basis (all SNF invariant
// factors 1) to a full unimodular n x n matrix whose first k rows are the
// input. Absent if the rows do not span a saturated sublattice.
std::optional<IMat> extend_to_basis(const IMat& rows, int n);

}  // namespace fltz

#endif
