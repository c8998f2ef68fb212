#include "fltz/cohomology.hpp"

#include <algorithm>
#include <mutex>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fltz {

namespace {

// Rank over Q of a small +-1 boundary matrix.
int rational_rank(QMat a) {
  if (a.empty()) return 0;
  size_t rows = a.size(), cols = a[0].size();
  int rank = 0;
  size_t pr = 0;
  for (size_t c = 0; c < cols && pr < rows; ++c) {
    size_t piv = pr;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[pr], a[piv]);
    for (size_t i = pr + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      Rat f = a[i][c] / a[pr][c];
      for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[pr][j];
    }
    ++pr;
    ++rank;
  }
  return rank;
}

}  // namespace

NegativeComplexTable::NegativeComplexTable(const FanPtr& fan) {
  int nrays = fan->num_rays();
  int n = fan->rank();
  degrees_ = n + 1;
  if (nrays > 20) throw Error("NegativeComplexTable: too many rays");

  // cone masks, for "jointly contained in a cone"
  std::vector<unsigned> cone_masks;
  for (const auto& c : fan->max_cones()) {
    unsigned m = 0;
    for (int i : c) m |= 1u << i;
    cone_masks.push_back(m);
  }

  ranks_.resize(1u << nrays);
  for (unsigned mask = 0; mask < (1u << nrays); ++mask) {
    // faces of the complex: subsets of mask contained in some cone
    std::set<unsigned> faces;
    faces.insert(0);  // the empty face
    for (unsigned cm : cone_masks) {
      unsigned base = mask & cm;
      // all subsets of base
      for (unsigned s = base;; s = (s - 1) & base) {
        faces.insert(s);
        if (s == 0) break;
      }
    }
    // group by dimension (=popcount-1)
    std::vector<std::vector<unsigned>> by_dim(nrays + 1);
    for (unsigned f : faces) by_dim[__builtin_popcount(f)].push_back(f);
    for (auto& v : by_dim) std::sort(v.begin(), v.end());

    // boundary ranks: d_k : C_k -> C_{k-1} with C_k spanned by (k+1)-subsets
    // (C_{-1} = empty face). rank H~_{k} = dim C_k - rank d_k - rank d_{k+1}.
    std::vector<int> brank(nrays + 2, 0);
    for (int k = 1; k <= nrays; ++k) {  // popcount k faces -> popcount k-1
      const auto& hi = by_dim[k];
      const auto& lo = by_dim[k - 1];
      if (hi.empty() || lo.empty()) continue;
      QMat mat(hi.size(), QVec(lo.size(), Rat(0)));
      for (size_t r = 0; r < hi.size(); ++r) {
        unsigned f = hi[r];
        int sign = 1;
        for (int b = 0; b < nrays; ++b) {
          if (!(f & (1u << b))) continue;
          unsigned sub = f & ~(1u << b);
          auto it = std::lower_bound(lo.begin(), lo.end(), sub);
          mat[r][it - lo.begin()] = sign;
          sign = -sign;
        }
      }
      brank[k] = rational_rank(mat);
    }
    std::vector<int> h(degrees_, 0);
    // H~_{p-1} corresponds to popcount p faces (C_{p-1} has dimension-popcount p)
    for (int p = 0; p < degrees_; ++p) {
      int dimC = (int)by_dim[p].size();  // chains in homological degree p-1
      int r_in = brank[p];               // boundary out of degree p-1
      int r_out = (p + 1 <= nrays) ? brank[p + 1] : 0;
      int hr = dimC - r_in - r_out;
      h[p] = std::max(hr, 0);
    }
    ranks_[mask] = std::move(h);
  }
}

namespace {

struct SweepBox {
  IVec lo, hi;
  bool valid = false;
};

// Bounding box of {m : <m, ray> >= values[ray]} via exact LP.
SweepBox polytope_box(const Fan& fan, const IVec& values) {
  SweepBox box;
  int n = fan.rank();
  LinearSystem sys(n);
  for (int i = 0; i < fan.num_rays(); ++i) sys.add(neg(fan.ray(i)), Rel::le, Rat(-values[i]));
  box.lo.assign(n, 0);
  box.hi.assign(n, 0);
  for (int j = 0; j < n; ++j) {
    QVec c(n, Rat(0));
    c[j] = 1;
    auto up = lp_max(sys, c);
    if (up.status == LpStatus::infeasible) return box;
    c[j] = -1;
    auto down = lp_max(sys, c);
    if (up.status != LpStatus::bounded || down.status != LpStatus::bounded) return box;
    box.hi[j] = floor_rat(up.value);
    box.lo[j] = ceil_rat(-down.value);
  }
  box.valid = true;
  return box;
}

}  // namespace

CohomologyTable line_bundle_cohomology(const SupportFunction& f, bool parallel,
                                       bool record_weights) {
  const FanPtr& fan = f.fan();
  if (!fan->is_complete()) throw IncompleteFan();
  int n = fan->rank();
  int nrays = fan->num_rays();

  // per-fan homology table, keyed by address with liveness check
  static std::map<const Fan*, std::pair<std::weak_ptr<const Fan>, std::shared_ptr<NegativeComplexTable>>>
      table_cache;
  static std::mutex table_mutex;
  std::shared_ptr<NegativeComplexTable> table;
  {
    std::lock_guard<std::mutex> lock(table_mutex);
    auto it = table_cache.find(fan.get());
    if (it != table_cache.end() && it->second.first.lock() == fan) {
      table = it->second.second;
    } else {
      table = std::make_shared<NegativeComplexTable>(fan);
      table_cache[fan.get()] = {fan, table};
    }
  }

  CohomologyTable out;
  out.h.assign(n + 1, 0);
  if (n == 0) {
    out.h[0] = 1;  // the point: h^0 = 1
    if (record_weights) out.weights[0].push_back(IVec{});
    return out;
  }

  // seed box: sections of F and the reflected sections of F_K - F
  IVec fk_minus_f(nrays);
  for (int i = 0; i < nrays; ++i) fk_minus_f[i] = 1 - f.value(i);
  SweepBox a = polytope_box(*fan, f.values());
  SweepBox b = polytope_box(*fan, fk_minus_f);
  IVec lo(n, 0), hi(n, 0);
  for (int j = 0; j < n; ++j) {
    if (a.valid && b.valid) {
      lo[j] = std::min(a.lo[j], -b.hi[j]);
      hi[j] = std::max(a.hi[j], -b.lo[j]);
    } else if (a.valid) {
      lo[j] = a.lo[j];
      hi[j] = a.hi[j];
    } else if (b.valid) {
      lo[j] = -b.hi[j];
      hi[j] = -b.lo[j];
    }
    lo[j] -= 2;
    hi[j] += 2;
  }

  // sweep one weight: ranks of the negative complex, added per degree
  auto sweep = [&](const IVec& m, std::vector<long>& h, std::map<int, std::vector<IVec>>* wts) {
    unsigned mask = 0;
    for (int i = 0; i < nrays; ++i)
      if (dot(m, fan->ray(i)) < f.value(i)) mask |= 1u << i;
    const auto& r = table->ranks(mask);
    for (int p = 0; p <= n; ++p) {
      if (r[p] == 0) continue;
      h[p] += r[p];
      if (wts) (*wts)[p].push_back(m);
    }
  };

  auto enumerate_box = [&](const IVec& boxlo, const IVec& boxhi, std::vector<IVec>& out_pts) {
    for (int j = 0; j < n; ++j)
      if (boxlo[j] > boxhi[j]) return;
    IVec m = boxlo;
    while (true) {
      out_pts.push_back(m);
      int j = 0;
      while (j < n) {
        if (m[j] < boxhi[j]) {
          ++m[j];
          break;
        }
        m[j] = boxlo[j];
        ++j;
      }
      if (j == n) break;
    }
  };

  auto run_weights = [&](const std::vector<IVec>& pts, std::vector<long>& h,
                         std::map<int, std::vector<IVec>>* wts) {
#ifdef _OPENMP
    if (parallel && !record_weights && pts.size() > 64) {
      int nt = omp_get_max_threads();
      std::vector<std::vector<long>> partial(nt, std::vector<long>(n + 1, 0));
#pragma omp parallel for schedule(static)
      for (long k = 0; k < (long)pts.size(); ++k)
        sweep(pts[k], partial[omp_get_thread_num()], nullptr);
      for (const auto& part : partial)
        for (int p = 0; p <= n; ++p) h[p] += part[p];
      return;
    }
#endif
    (void)parallel;
    for (const auto& m : pts) sweep(m, h, wts);
  };

  std::vector<IVec> pts;
  enumerate_box(lo, hi, pts);
  run_weights(pts, out.h, record_weights ? &out.weights : nullptr);

  // expand by shells until two consecutive shells are silent in every degree
  int silent = 0;
  while (silent < 2) {
    IVec nlo(lo), nhi(hi);
    for (int j = 0; j < n; ++j) {
      --nlo[j];
      ++nhi[j];
    }
    // shell = new box minus old box
    std::vector<IVec> shell;
    IVec m = nlo;
    while (true) {
      bool in_old = true;
      for (int j = 0; j < n; ++j)
        if (m[j] < lo[j] || m[j] > hi[j]) in_old = false;
      if (!in_old) shell.push_back(m);
      int j = 0;
      while (j < n) {
        if (m[j] < nhi[j]) {
          ++m[j];
          break;
        }
        m[j] = nlo[j];
        ++j;
      }
      if (j == n) break;
    }
    std::vector<long> shell_h(n + 1, 0);
    std::map<int, std::vector<IVec>> shell_w;
    run_weights(shell, shell_h, record_weights ? &shell_w : nullptr);
    bool contributed = false;
    for (long v : shell_h)
      if (v != 0) contributed = true;
    for (int p = 0; p <= n; ++p) out.h[p] += shell_h[p];
    if (record_weights)
      for (auto& [p, ws] : shell_w)
        for (auto& w : ws) out.weights[p].push_back(w);
    silent = contributed ? 0 : silent + 1;
    lo = nlo;
    hi = nhi;
  }
  if (record_weights)
    for (auto& [p, ws] : out.weights) std::sort(ws.begin(), ws.end());
  return out;
}

long euler_characteristic(const SupportFunction& f) {
  return line_bundle_cohomology(f).euler();
}

long hom_rank(const SupportFunction& f1, const SupportFunction& f2, int p) {
  auto table = line_bundle_cohomology(f2 - f1);
  if (p < 0 || p >= (int)table.h.size()) return 0;
  return table.h[p];
}

KContext::KContext(FanPtr fan) : fan_(std::move(fan)) {
  if (!fan_->is_complete()) throw IncompleteFan();
  if (!fan_->is_smooth()) throw Error("KContext: smooth fan required");
  int target = (int)fan_->max_cones().size();
  int n = fan_->rank();
  int nrays = fan_->num_rays();

  // candidate bundles: values in {0, -1, ..., -n} per ray, odometer order,
  // greedily kept while the Euler Gram matrix gains rank
  std::vector<IVec> kept_values;
  auto gram_rank = [&](const std::vector<IVec>& vals) {
    IMat gram(vals.size(), IVec(vals.size()));
    for (size_t i = 0; i < vals.size(); ++i)
      for (size_t j = 0; j < vals.size(); ++j) gram[i][j] = chi(sub(vals[i], vals[j]));
    return rank_rational(gram);
  };
  IVec cand(nrays, 0);
  int rank_now = 0;
  while (true) {
    std::vector<IVec> trial = kept_values;
    trial.push_back(cand);
    int r = gram_rank(trial);
    if (r > rank_now) {
      kept_values = std::move(trial);
      rank_now = r;
      if (rank_now == target) break;
    }
    // next candidate: decrement odometer over {0,-1,...,-n}
    int j = 0;
    while (j < nrays) {
      if (cand[j] > -n) {
        --cand[j];
        break;
      }
      cand[j] = 0;
      ++j;
    }
    if (j == nrays) break;
  }
  gram_rank_ = rank_now;
  if (gram_rank_ != target)
    throw Error("KContext: spanning family does not reach full Gram rank");
  for (auto& v : kept_values) family_.push_back(SupportFunction(fan_, v));
}

long KContext::chi(const IVec& values) {
  auto it = chi_cache_.find(values);
  if (it != chi_cache_.end()) return it->second;
  long v = line_bundle_cohomology(SupportFunction(fan_, values)).euler();
  chi_cache_[values] = v;
  return v;
}

std::vector<Int> KContext::k_class(const SupportFunction& f) {
  if (f.fan() != fan_) throw FanMismatch();
  std::vector<Int> pair;
  for (const auto& g : family_) pair.push_back(chi(add(f.values(), g.values())));
  return pair;
}

const StarQuotient& KContext::quotient(const ConeKey& sigma) {
  auto it = quotient_cache_.find(sigma);
  if (it == quotient_cache_.end())
    it = quotient_cache_.emplace(sigma, star_quotient(fan_, sigma)).first;
  return it->second;
}

std::vector<Int> KContext::k_class_orbit_pushforward(const ConeKey& sigma,
                                                     const SupportFunction& f) {
  if (f.fan() != fan_) throw FanMismatch();
  if (!f.vanishes_on(sigma)) throw NotTransverse();
  const StarQuotient& sq = quotient(sigma);
  std::vector<Int> pair;
  for (const auto& g : family_) {
    // chi(O_{sigma>0}(i*F) o O(G)) = chi on the orbit of i*(F+G)
    auto norm = transverse_normalize(f + g, sigma);
    SupportFunction restricted = restrict_to_orbit(norm.fn, sq);
    pair.push_back(line_bundle_cohomology(restricted).euler());
  }
  return pair;
}

bool KContext::verify_exact_triangle(const SupportFunction& f, int alpha_ray) {
  if (alpha_ray < 0 || alpha_ray >= fan_->num_rays()) throw NotARay();
  ConeKey alpha = {alpha_ray};
  if (!f.vanishes_on(alpha)) throw NotTransverse();
  auto with_alpha = k_class(f + basis_function(fan_, alpha_ray));
  auto plain = k_class(f);
  auto push = k_class_orbit_pushforward(alpha, f);
  for (size_t j = 0; j < family_.size(); ++j)
    if (with_alpha[j] - plain[j] + push[j] != 0) return false;
  return true;
}

ExceptionalReport exceptional_collection_check(KContext& ctx,
                                               const std::vector<SupportFunction>& objects) {
  ExceptionalReport rep;
  rep.expected_rank = (int)ctx.fan()->max_cones().size();
  int n = ctx.fan()->rank();
  for (size_t i = 0; i < objects.size(); ++i) {
    auto self = line_bundle_cohomology(objects[i] - objects[i]);
    if (self.h[0] != 1) {
      rep.exceptional = false;
      rep.violations.push_back("object " + std::to_string(i) + " has h^0(End) != 1");
    }
    for (int p = 1; p <= n; ++p)
      if (self.h[p] != 0) {
        rep.exceptional = false;
        rep.violations.push_back("object " + std::to_string(i) + " has self-Ext^" +
                                 std::to_string(p));
      }
  }
  for (size_t i = 0; i < objects.size(); ++i)
    for (size_t j = 0; j < i; ++j) {
      auto back = line_bundle_cohomology(objects[j] - objects[i]);  // Ext(F_i, F_j), i > j
      for (int p = 0; p <= n; ++p)
        if (back.h[p] != 0) {
          rep.semiorthogonal = false;
          rep.violations.push_back("Ext^" + std::to_string(p) + "(F_" + std::to_string(i) +
                                   ", F_" + std::to_string(j) + ") != 0");
        }
    }
  IMat classes;
  for (const auto& f : objects) classes.push_back(ctx.k_class(f));
  rep.k_rank = classes.empty() ? 0 : rank_rational(classes);
  return rep;
}

bool orlov_rank_check(const FanPtr& fan, const ConeKey& tau) {
  fan->require_cone(tau);
  if (tau.empty()) throw Error("orlov_rank_check: tau must be positive-dimensional");
  BlowupPartition bp = blowup_partition(fan, tau);
  StarQuotient sq = star_quotient(fan, tau);
  long lhs = (long)bp.blowup->max_cones().size();
  long rhs = (long)fan->max_cones().size() +
             ((long)tau.size() - 1) * (long)sq.fan->max_cones().size();
  return lhs == rhs;
}

}  // namespace fltz
