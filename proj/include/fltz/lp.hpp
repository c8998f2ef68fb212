#ifndef FLTZ_LP_HPP
#define FLTZ_LP_HPP

#include <optional>

#include "fltz/exact.hpp"

namespace fltz {

// a . x  (rel)  b
enum class Rel { le, lt, eq };

struct LinRow {
  QVec a;
  Rat b;
  Rel rel;
};

// A small exact linear system over the rationals, decided by Fourier-Motzkin
// elimination. Strict rows are handled by maximizing a shared slack.
struct LinearSystem {
  int n = 0;
  std::vector<LinRow> rows;

  explicit LinearSystem(int vars) : n(vars) {}

  void add(const QVec& a, Rel rel, const Rat& b) { rows.push_back({a, b, rel}); }
  void add(const IVec& a, Rel rel, const Rat& b) { rows.push_back({to_rational(a), b, rel}); }
  // lo < a.x < hi
  void add_open_interval(const IVec& a, const Rat& lo, const Rat& hi) {
    QVec q = to_rational(a);
    add(q, Rel::lt, hi);
    QVec m(q.size());
    for (size_t i = 0; i < q.size(); ++i) m[i] = -q[i];
    add(m, Rel::lt, -lo);
  }
};

// A point satisfying every row (strictly where the relation is strict),
// or absent when the system is infeasible.
std::optional<QVec> feasible_point(const LinearSystem& sys);

enum class LpStatus { infeasible, unbounded, bounded };

struct LpValue {
  LpStatus status;
  Rat value;  // only meaningful when bounded
};

// max c.x subject to the non-strict rows of sys (lt treated as le).
LpValue lp_max(const LinearSystem& sys, const QVec& c);

// Spec operation: a rational point with lo < a.p < hi strictly for every
// constraint, found by maximizing the common slack t in
// lo + t <= a.p <= hi - t. Empty input yields the origin.
struct StrictInterval {
  IVec a;
  Rat lo, hi;
};

std::optional<QVec> strict_lp_feasible(const std::vector<StrictInterval>& cs, int rank);

}  // namespace fltz

#endif
