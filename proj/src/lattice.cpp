#include "fltz/lattice.hpp"

namespace fltz {

QVec QuotientMap::covector(const QVec& p) const {
  QVec q(target_rank, Rat(0));
  for (int j = 0; j < target_rank; ++j) {
    Rat s = 0;
    for (int i = 0; i < source_rank; ++i) s += p[i] * Rat(section[i][j]);
    q[j] = s;
  }
  return q;
}

QuotientMap quotient_lattice(const IMat& vectors, int rank) {
  for (const auto& v : vectors)
    if ((int)v.size() != rank) throw Error("quotient_lattice: rank mismatch");
  QuotientMap q;
  q.source_rank = rank;
  if (vectors.empty()) {
    q.target_rank = rank;
    q.matrix = identity_matrix(rank);
    q.section = identity_matrix(rank);
    return q;
  }
  auto snf = smith_normal_form(vectors);
  int r = 0;
  int steps = std::min((int)vectors.size(), rank);
  for (int i = 0; i < steps; ++i)
    if (snf.d[i][i] != 0) ++r;
  // Rows w_i of v^-1 give a basis of Z^rank whose first r rows span the
  // saturation; coordinates of x in this basis are v^T x.
  IMat w = inverse_unimodular(snf.v);
  q.target_rank = rank - r;
  q.matrix.assign(q.target_rank, IVec(rank));
  for (int j = 0; j < q.target_rank; ++j)
    for (int i = 0; i < rank; ++i) q.matrix[j][i] = snf.v[i][r + j];
  q.section.assign(rank, IVec(q.target_rank));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < q.target_rank; ++j) q.section[i][j] = w[r + j][i];
  return q;
}

}  // namespace fltz
