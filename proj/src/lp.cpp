#include "fltz/lp.hpp"

#include <algorithm>

namespace fltz {

namespace {

// Internal row form: a.x + s*t <= b, with s in {0,1} (t is the slack).
struct FmRow {
  QVec a;
  Rat s;
  Rat b;
};

struct Substitution {
  int var;
  QVec coeff;  // var = coeff . x  + s*t + c  over the remaining variables
  Rat s;
  Rat c;
};

// Eliminate equality rows by exact Gaussian substitution. Returns false when
// an inconsistent constant row appears.
bool eliminate_equalities(int n, std::vector<LinRow>& rows, std::vector<FmRow>& out,
                          std::vector<Substitution>& subs) {
  std::vector<QVec> eqs;
  std::vector<Rat> rhs;
  for (const auto& r : rows)
    if (r.rel == Rel::eq) {
      eqs.push_back(r.a);
      rhs.push_back(r.b);
    }
  std::vector<bool> eliminated(n, false);
  for (size_t e = 0; e < eqs.size(); ++e) {
    int pivot = -1;
    for (int j = 0; j < n; ++j)
      if (!eliminated[j] && eqs[e][j] != 0) {
        pivot = j;
        break;
      }
    if (pivot < 0) {
      if (rhs[e] != 0) return false;
      continue;
    }
    Rat p = eqs[e][pivot];
    Substitution s;
    s.var = pivot;
    s.coeff.assign(n, Rat(0));
    for (int j = 0; j < n; ++j)
      if (j != pivot) s.coeff[j] = -eqs[e][j] / p;
    s.s = 0;
    s.c = rhs[e] / p;
    // substitute into the remaining equalities
    for (size_t f = e + 1; f < eqs.size(); ++f) {
      Rat c = eqs[f][pivot];
      if (c == 0) continue;
      for (int j = 0; j < n; ++j) eqs[f][j] += c * s.coeff[j];
      eqs[f][pivot] = 0;
      rhs[f] -= c * s.c;
    }
    eliminated[pivot] = true;
    subs.push_back(std::move(s));
  }
  // substitute into the inequality rows
  for (const auto& r : rows) {
    if (r.rel == Rel::eq) continue;
    FmRow fr{r.a, r.rel == Rel::lt ? Rat(1) : Rat(0), r.b};
    for (const auto& s : subs) {
      Rat c = fr.a[s.var];
      if (c == 0) continue;
      for (int j = 0; j < (int)fr.a.size(); ++j) fr.a[j] += c * s.coeff[j];
      fr.a[s.var] = 0;
      fr.b -= c * s.c;
    }
    out.push_back(std::move(fr));
  }
  return true;
}

struct FmState {
  int n;
  std::vector<int> order;                  // elimination order of variables
  std::vector<std::vector<FmRow>> levels;  // rows alive before eliminating order[k]
  std::vector<FmRow> final_rows;           // rows in t only
};

// Eliminate all variables, leaving bounds on the slack t. Coefficients of t
// stay nonnegative because every source row has s >= 0.
FmState fm_eliminate(int n, std::vector<FmRow> rows, const std::vector<bool>& present) {
  FmState st;
  st.n = n;
  for (int v = 0; v < n; ++v)
    if (present[v]) st.order.push_back(v);
  for (int v : st.order) {
    st.levels.push_back(rows);
    std::vector<FmRow> lower, upper, rest;
    for (auto& r : rows) {
      if (r.a[v] > 0)
        upper.push_back(std::move(r));
      else if (r.a[v] < 0)
        lower.push_back(std::move(r));
      else
        rest.push_back(std::move(r));
    }
    for (const auto& lo : lower)
      for (const auto& up : upper) {
        // combine -a.x <= ... and a'.x <= ... to drop v
        Rat cl = -lo.a[v], cu = up.a[v];
        FmRow nr;
        nr.a.assign(n, Rat(0));
        for (int j = 0; j < n; ++j) nr.a[j] = lo.a[j] * cu + up.a[j] * cl;
        nr.s = lo.s * cu + up.s * cl;
        nr.b = lo.b * cu + up.b * cl;
        rest.push_back(std::move(nr));
      }
    rows = std::move(rest);
  }
  st.final_rows = std::move(rows);
  return st;
}

}  // namespace

std::optional<QVec> feasible_point(const LinearSystem& sys) {
  int n = sys.n;
  std::vector<LinRow> rows = sys.rows;
  std::vector<FmRow> ineqs;
  std::vector<Substitution> subs;
  if (!eliminate_equalities(n, rows, ineqs, subs)) return std::nullopt;

  bool any_strict = false;
  for (const auto& r : ineqs)
    if (r.s != 0) any_strict = true;

  std::vector<bool> present(n, true);
  for (const auto& s : subs) present[s.var] = false;

  FmState st = fm_eliminate(n, ineqs, present);

  // rows now involve only t: s*t <= b (s >= 0 by construction)
  Rat tmax = 1;  // cap; the slack scale is arbitrary
  for (const auto& r : st.final_rows) {
    if (r.s == 0) {
      if (r.b < 0) return std::nullopt;
    } else {
      tmax = std::min(tmax, r.b / r.s);
    }
  }
  if (any_strict && tmax <= 0) return std::nullopt;
  Rat t = any_strict ? tmax : std::min(tmax, Rat(0));

  // back-substitute, eliminated variables in reverse order
  QVec x(n, Rat(0));
  for (int k = (int)st.order.size() - 1; k >= 0; --k) {
    int v = st.order[k];
    bool has_lo = false, has_hi = false;
    Rat lo = 0, hi = 0;
    for (const auto& r : st.levels[k]) {
      if (r.a[v] == 0) continue;
      Rat rest = r.b - r.s * t;
      for (int j = 0; j < n; ++j)
        if (j != v && r.a[j] != 0) rest -= r.a[j] * x[j];
      Rat bound = rest / r.a[v];
      if (r.a[v] > 0) {
        if (!has_hi || bound < hi) hi = bound, has_hi = true;
      } else {
        if (!has_lo || bound > lo) lo = bound, has_lo = true;
      }
    }
    if (has_lo && has_hi)
      x[v] = (lo + hi) / 2;
    else if (has_lo)
      x[v] = lo + 1;
    else if (has_hi)
      x[v] = hi - 1;
    else
      x[v] = 0;
  }
  for (int k = (int)subs.size() - 1; k >= 0; --k) {
    const auto& s = subs[k];
    Rat val = s.c + s.s * t;
    for (int j = 0; j < n; ++j)
      if (s.coeff[j] != 0) val += s.coeff[j] * x[j];
    x[s.var] = val;
  }
  return x;
}

LpValue lp_max(const LinearSystem& sys, const QVec& c) {
  // introduce z = c.x as an extra variable and eliminate everything else
  int n = sys.n;
  std::vector<LinRow> rows;
  for (auto r : sys.rows) {
    r.a.resize(n + 1, Rat(0));
    if (r.rel == Rel::lt) r.rel = Rel::le;
    rows.push_back(std::move(r));
  }
  QVec zrow(n + 1, Rat(0));
  for (int j = 0; j < n; ++j) zrow[j] = c[j];
  zrow[n] = -1;
  rows.push_back({zrow, Rat(0), Rel::eq});

  std::vector<FmRow> ineqs;
  std::vector<Substitution> subs;
  if (!eliminate_equalities(n + 1, rows, ineqs, subs)) return {LpStatus::infeasible, 0};
  std::vector<bool> present(n + 1, true);
  for (const auto& s : subs) present[s.var] = false;
  present[n] = false;  // keep z

  // z may have been chosen as an equality pivot; recover it afterwards if so.
  bool z_substituted = false;
  for (const auto& s : subs)
    if (s.var == n) z_substituted = true;

  FmState st = fm_eliminate(n + 1, ineqs, present);
  bool has_hi = false;
  Rat hi = 0;
  for (const auto& r : st.final_rows) {
    if (r.a[n] == 0) {
      if (r.b < 0) return {LpStatus::infeasible, 0};
      continue;
    }
    if (r.a[n] > 0) {
      Rat bound = r.b / r.a[n];
      if (!has_hi || bound < hi) hi = bound, has_hi = true;
    }
  }
  // lower bounds on z can make the system infeasible only in combination with
  // upper bounds; FM has already combined them into constant rows above.
  if (z_substituted) {
    // z was pinned by equalities alone: evaluate it from a feasible point
    auto pt = feasible_point(sys);
    if (!pt) return {LpStatus::infeasible, 0};
    Rat z = 0;
    for (int j = 0; j < n; ++j) z += c[j] * (*pt)[j];
    return {LpStatus::bounded, z};
  }
  if (!has_hi) {
    auto pt = feasible_point(sys);
    if (!pt) return {LpStatus::infeasible, 0};
    return {LpStatus::unbounded, 0};
  }
  // check feasibility of the lower side
  bool has_lo = false;
  Rat lo = 0;
  for (const auto& r : st.final_rows) {
    if (r.a[n] < 0) {
      Rat bound = r.b / r.a[n];  // z >= bound
      if (!has_lo || bound > lo) lo = bound, has_lo = true;
    }
  }
  if (has_lo && lo > hi) return {LpStatus::infeasible, 0};
  return {LpStatus::bounded, hi};
}

std::optional<QVec> strict_lp_feasible(const std::vector<StrictInterval>& cs, int rank) {
  if (cs.empty()) return QVec(rank, Rat(0));
  LinearSystem sys(rank);
  for (const auto& c : cs) sys.add_open_interval(c.a, c.lo, c.hi);
  return feasible_point(sys);
}

}  // namespace fltz
