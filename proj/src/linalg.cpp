#include "fltz/linalg.hpp"

#include <algorithm>

namespace fltz {

IMat identity_matrix(int n) {
  IMat m(n, IVec(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IMat transpose(const IMat& m) {
  if (m.empty()) return {};
  IMat t(m[0].size(), IVec(m.size()));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

IMat mat_mul(const IMat& a, const IMat& b) {
  size_t n = a.size(), k = b.size(), p = b.empty() ? 0 : b[0].size();
  IMat c(n, IVec(p, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (size_t j = 0; j < p; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

IVec mat_apply(const IMat& m, const IVec& x) {
  IVec y(m.size(), 0);
  for (size_t i = 0; i < m.size(); ++i) y[i] = dot(m[i], x);
  return y;
}

QVec mat_apply(const IMat& m, const QVec& x) {
  QVec y(m.size(), 0);
  for (size_t i = 0; i < m.size(); ++i) y[i] = dot(x, m[i]);
  return y;
}

namespace {

// Row/column elementary operations tracked in u (rows) and v (columns).
struct SnfWork {
  IMat a, u, v;

  void swap_rows(int i, int j) {
    std::swap(a[i], a[j]);
    std::swap(u[i], u[j]);
  }
  void swap_cols(int i, int j) {
    for (auto& row : a) std::swap(row[i], row[j]);
    for (auto& row : v) std::swap(row[i], row[j]);
  }
  void add_row(int dst, int src, const Int& c) {  // row dst += c * row src
    for (size_t j = 0; j < a[dst].size(); ++j) a[dst][j] += c * a[src][j];
    for (size_t j = 0; j < u[dst].size(); ++j) u[dst][j] += c * u[src][j];
  }
  void add_col(int dst, int src, const Int& c) {
    for (auto& row : a) row[dst] += c * row[src];
    for (auto& row : v) row[dst] += c * row[src];
  }
  void negate_row(int i) {
    for (auto& x : a[i]) x = -x;
    for (auto& x : u[i]) x = -x;
  }
};

}  // namespace

// Classical Smith reduction. Pivot choice: smallest nonzero absolute value,
// ties broken by lowest (row, column) index.
SmithNormalForm smith_normal_form(const IMat& m) {
  if (m.empty() || m[0].empty()) throw Error("smith_normal_form: empty matrix");
  int rows = (int)m.size(), cols = (int)m[0].size();
  SnfWork w{m, identity_matrix(rows), identity_matrix(cols)};

  int t = 0;
  int steps = std::min(rows, cols);
  while (t < steps) {
    // locate pivot in the trailing block
    int pi = -1, pj = -1;
    Int best = 0;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j) {
        if (w.a[i][j] == 0) continue;
        Int v = abs(w.a[i][j]);
        if (pi < 0 || v < best) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;  // trailing block is zero
    w.swap_rows(t, pi);
    w.swap_cols(t, pj);

    bool clean = true;
    for (int i = t + 1; i < rows; ++i) {
      if (w.a[i][t] == 0) continue;
      Int q = w.a[i][t] / w.a[t][t];
      w.add_row(i, t, -q);
      if (w.a[i][t] != 0) clean = false;
    }
    for (int j = t + 1; j < cols; ++j) {
      if (w.a[t][j] == 0) continue;
      Int q = w.a[t][j] / w.a[t][t];
      w.add_col(j, t, -q);
      if (w.a[t][j] != 0) clean = false;
    }
    if (!clean) continue;  // smaller remainders appeared, pick a new pivot

    // divisibility: pivot must divide every entry of the trailing block
    bool divides = true;
    for (int i = t + 1; i < rows && divides; ++i)
      for (int j = t + 1; j < cols && divides; ++j)
        if (w.a[i][j] % w.a[t][t] != 0) {
          w.add_row(t, i, 1);
          divides = false;
        }
    if (!divides) continue;

    if (w.a[t][t] < 0) w.negate_row(t);
    ++t;
  }
  return {w.u, w.a, w.v};
}

int rank_rational(const IMat& m) {
  if (m.empty()) return 0;
  QMat a(m.size());
  for (size_t i = 0; i < m.size(); ++i) a[i] = to_rational(m[i]);
  size_t rows = a.size(), cols = a[0].size();
  int rank = 0;
  size_t pr = 0;
  for (size_t c = 0; c < cols && pr < rows; ++c) {
    size_t piv = pr;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[pr], a[piv]);
    for (size_t i = 0; i < rows; ++i) {
      if (i == pr || a[i][c] == 0) continue;
      Rat f = a[i][c] / a[pr][c];
      for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[pr][j];
    }
    ++pr;
    ++rank;
  }
  return rank;
}

Int det(const IMat& m) {
  // fraction-free via rational elimination is fine at this scale
  int n = (int)m.size();
  if (n == 0) return 1;
  QMat a(n);
  for (int i = 0; i < n; ++i) a[i] = to_rational(m[i]);
  Rat d = 1;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[c], a[piv]);
      d = -d;
    }
    d *= a[c][c];
    for (int i = c + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      Rat f = a[i][c] / a[c][c];
      for (int j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  if (!is_integer(d)) throw Error("det: internal");
  return boost::multiprecision::numerator(d);
}

std::optional<QVec> solve_rational(const IMat& m, const QVec& b) {
  if (m.empty()) return QVec{};
  size_t rows = m.size(), cols = m[0].size();
  QMat a(rows, QVec(cols + 1));
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) a[i][j] = Rat(m[i][j]);
    a[i][cols] = b[i];
  }
  std::vector<int> pivot_col;
  size_t pr = 0;
  for (size_t c = 0; c < cols && pr < rows; ++c) {
    size_t piv = pr;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[pr], a[piv]);
    for (size_t i = 0; i < rows; ++i) {
      if (i == pr || a[i][c] == 0) continue;
      Rat f = a[i][c] / a[pr][c];
      for (size_t j = c; j <= cols; ++j) a[i][j] -= f * a[pr][j];
    }
    pivot_col.push_back((int)c);
    ++pr;
  }
  for (size_t i = pr; i < rows; ++i)
    if (a[i][cols] != 0) return std::nullopt;
  QVec x(cols, Rat(0));
  for (size_t r = 0; r < pivot_col.size(); ++r)
    x[pivot_col[r]] = a[r][cols] / a[r][pivot_col[r]];
  return x;
}

std::optional<IVec> solve_integer(const IMat& m, const IVec& b) {
  if (m.empty()) return IVec{};
  auto snf = smith_normal_form(m);
  int rows = (int)m.size(), cols = (int)m[0].size();
  IVec ub = mat_apply(snf.u, b);
  IVec y(cols, 0);
  int r = std::min(rows, cols);
  for (int i = 0; i < r; ++i) {
    const Int& d = snf.d[i][i];
    if (d == 0) {
      if (ub[i] != 0) return std::nullopt;
    } else {
      if (ub[i] % d != 0) return std::nullopt;
      y[i] = ub[i] / d;
    }
  }
  for (int i = r; i < rows; ++i)
    if (ub[i] != 0) return std::nullopt;
  return mat_apply(snf.v, y);
}

IMat integer_kernel(const IMat& m) {
  if (m.empty()) return {};
  auto snf = smith_normal_form(m);
  int rows = (int)m.size(), cols = (int)m[0].size();
  int r = 0;
  for (int i = 0; i < std::min(rows, cols); ++i)
    if (snf.d[i][i] != 0) ++r;
  // m v e_j = d e_j = 0 for j >= r, so kernel basis = trailing columns of v.
  IMat basis;
  for (int j = r; j < cols; ++j) {
    IVec col(cols);
    for (int i = 0; i < cols; ++i) col[i] = snf.v[i][j];
    basis.push_back(std::move(col));
  }
  return basis;
}

IMat inverse_unimodular(const IMat& m) {
  int n = (int)m.size();
  QMat a(n, QVec(2 * n, Rat(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = Rat(m[i][j]);
    a[i][n + i] = 1;
  }
  for (int c = 0; c < n; ++c) {
    int piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) throw Error("inverse_unimodular: singular");
    std::swap(a[c], a[piv]);
    Rat p = a[c][c];
    for (int j = 0; j < 2 * n; ++j) a[c][j] /= p;
    for (int i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      Rat f = a[i][c];
      for (int j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  IMat inv(n, IVec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!is_integer(a[i][n + j])) throw Error("inverse_unimodular: not unimodular");
      inv[i][j] = boost::multiprecision::numerator(a[i][n + j]);
    }
  return inv;
}

std::optional<IMat> extend_to_basis(const IMat& rows, int n) {
  int k = (int)rows.size();
  if (k == 0) return identity_matrix(n);
  auto snf = smith_normal_form(rows);
  for (int i = 0; i < k; ++i)
    if (snf.d[i][i] != 1) return std::nullopt;  // not saturated or not independent
  // rows = u^-1 [I 0] v^-1; block_diag(u^-1, I) * v^-1 has the rows on top.
  IMat uinv = inverse_unimodular(snf.u);
  IMat w = inverse_unimodular(snf.v);
  IMat b(n, IVec(n));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < n; ++j) {
      Int s = 0;
      for (int l = 0; l < k; ++l) s += uinv[i][l] * w[l][j];
      b[i][j] = s;
    }
  }
  for (int i = k; i < n; ++i) b[i] = w[i];
  return b;
}

}  // namespace fltz
