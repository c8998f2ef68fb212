#include "fltz/fan.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace fltz {

namespace {

std::mutex halfspace_mutex;

ConeKey sorted(ConeKey c) {
  std::sort(c.begin(), c.end());
  return c;
}

bool subset_of(const ConeKey& a, const ConeKey& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

ConeKey intersect(const ConeKey& a, const ConeKey& b) {
  ConeKey r;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

// Order: dimension first, then lexicographic index sets.
bool cone_order(const ConeKey& a, const ConeKey& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

IMat select_rows(const IMat& rays, const ConeKey& c) {
  IMat m;
  for (int i : c) m.push_back(rays[i]);
  return m;
}

// Whether the generators admit a nontrivial nonnegative linear relation,
// i.e. the cone they span contains a line.
bool positively_dependent(const IMat& gens, int rank) {
  int k = (int)gens.size();
  LinearSystem sys(k);
  QVec ones(k, Rat(1));
  sys.add(ones, Rel::eq, Rat(1));
  for (int j = 0; j < rank; ++j) {
    QVec row(k);
    for (int i = 0; i < k; ++i) row[i] = Rat(gens[i][j]);
    sys.add(row, Rel::eq, Rat(0));
  }
  for (int i = 0; i < k; ++i) {
    QVec row(k, Rat(0));
    row[i] = -1;
    sys.add(row, Rel::le, Rat(0));
  }
  return feasible_point(sys).has_value();
}

// Separating functional for the fan condition: w > 0 on the private rays of
// c1, w < 0 on those of c2, w = 0 on the shared rays. Exists iff the two
// simplicial cones meet in the common face spanned by the shared rays.
bool separable(const IMat& rays, int rank, const ConeKey& c1, const ConeKey& c2) {
  ConeKey shared = intersect(c1, c2);
  LinearSystem sys(rank);
  for (int i : c1)
    if (!std::binary_search(shared.begin(), shared.end(), i))
      sys.add_open_interval(rays[i], Rat(0), Rat(1));
  for (int i : c2)
    if (!std::binary_search(shared.begin(), shared.end(), i))
      sys.add_open_interval(rays[i], Rat(-1), Rat(0));
  for (int i : shared) sys.add(rays[i], Rel::eq, Rat(0));
  return feasible_point(sys).has_value();
}

}  // namespace

FanPtr Fan::build(int rank, IMat rays, std::vector<ConeKey> max_cones) {
  auto fan = std::shared_ptr<Fan>(new Fan());
  fan->rank_ = rank;

  for (auto& r : rays) {
    if ((int)r.size() != rank) throw Error("build_fan: ray of wrong rank");
    if (is_zero(r)) throw NotStronglyConvex("build_fan: zero ray");
    IVec p = primitivize(r);
    if (p != r) fan->reprimitivized_ = true;
    r = std::move(p);
  }
  for (size_t i = 0; i < rays.size(); ++i)
    for (size_t j = i + 1; j < rays.size(); ++j)
      if (rays[i] == rays[j]) throw FanConditionViolated("build_fan: duplicate ray");
  fan->rays_ = std::move(rays);

  std::set<ConeKey> max_set;
  for (auto& c : max_cones) {
    c = sorted(c);
    for (int i : c)
      if (i < 0 || i >= fan->num_rays()) throw Error("build_fan: ray index out of range");
    if (std::adjacent_find(c.begin(), c.end()) != c.end())
      throw Error("build_fan: repeated index in cone");
    max_set.insert(c);
  }
  fan->max_cones_.assign(max_set.begin(), max_set.end());
  std::sort(fan->max_cones_.begin(), fan->max_cones_.end(), cone_order);

  std::set<int> used;
  for (const auto& c : fan->max_cones_)
    for (int i : c) used.insert(i);
  if ((int)used.size() != fan->num_rays() && !fan->max_cones_.empty())
    throw Error("build_fan: ray not used by any max cone");
  if (fan->max_cones_.empty() && fan->num_rays() > 0)
    throw Error("build_fan: rays given but no cones");

  // simpliciality and strong convexity of the maximal cones
  for (const auto& c : fan->max_cones_) {
    if (c.empty()) continue;
    IMat gens = select_rows(fan->rays_, c);
    if (rank_rational(gens) != (int)c.size()) {
      if (positively_dependent(gens, rank)) throw NotStronglyConvex();
      throw NotSimplicial();
    }
  }

  // no max cone inside another; pairwise intersections are common faces
  for (size_t i = 0; i < fan->max_cones_.size(); ++i)
    for (size_t j = i + 1; j < fan->max_cones_.size(); ++j) {
      const auto& a = fan->max_cones_[i];
      const auto& b = fan->max_cones_[j];
      if (subset_of(a, b) || subset_of(b, a))
        throw FanConditionViolated("max cone is a face of another");
      if (!separable(fan->rays_, rank, a, b))
        throw FanConditionViolated("cones " + to_string(IVec(a.begin(), a.end())) + " and " +
                                   to_string(IVec(b.begin(), b.end())) +
                                   " overlap in a non-face");
    }

  // face lattice: all subsets of max cones (simplicial)
  std::set<ConeKey> faces;
  for (const auto& c : fan->max_cones_) {
    int k = (int)c.size();
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
      ConeKey f;
      for (int b = 0; b < k; ++b)
        if (mask & (1u << b)) f.push_back(c[b]);
      faces.insert(f);
    }
  }
  fan->cones_.assign(faces.begin(), faces.end());
  std::sort(fan->cones_.begin(), fan->cones_.end(), cone_order);
  fan->cone_set_ = std::move(faces);
  fan->halfspace_cache_.resize(fan->cones_.size());
  return fan;
}

int Fan::cone_pos(const ConeKey& c) const {
  auto it = std::lower_bound(cones_.begin(), cones_.end(), c, cone_order);
  if (it == cones_.end() || *it != c) throw ConeNotInFan();
  return (int)(it - cones_.begin());
}

bool Fan::is_smooth() const {
  for (const auto& c : max_cones_) {
    if (c.empty()) continue;
    auto snf = smith_normal_form(select_rows(rays_, c));
    for (size_t i = 0; i < c.size(); ++i)
      if (snf.d[i][i] != 1) return false;
  }
  return true;
}

bool Fan::is_complete() const {
  if (rank_ == 0) return !cones_.empty();
  if (max_cones_.empty()) return false;
  for (const auto& c : max_cones_)
    if ((int)c.size() != rank_) return false;
  // every facet shared by exactly two max cones, adjacency graph connected
  std::map<ConeKey, std::vector<int>> facet_owners;
  for (size_t i = 0; i < max_cones_.size(); ++i) {
    const auto& c = max_cones_[i];
    for (size_t drop = 0; drop < c.size(); ++drop) {
      ConeKey f;
      for (size_t l = 0; l < c.size(); ++l)
        if (l != drop) f.push_back(c[l]);
      facet_owners[f].push_back((int)i);
    }
  }
  for (const auto& [f, owners] : facet_owners)
    if (owners.size() != 2) return false;
  std::vector<int> comp(max_cones_.size(), -1);
  std::vector<int> stack = {0};
  comp[0] = 0;
  std::map<int, std::vector<int>> adj;
  for (const auto& [f, owners] : facet_owners) {
    adj[owners[0]].push_back(owners[1]);
    adj[owners[1]].push_back(owners[0]);
  }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (comp[w] < 0) {
        comp[w] = 0;
        stack.push_back(w);
      }
  }
  for (int c : comp)
    if (c < 0) return false;
  return true;
}

const Fan::Halfspaces& Fan::halfspaces(const ConeKey& c) const {
  int pos = cone_pos(c);
  {
    std::lock_guard<std::mutex> lock(halfspace_mutex);
    if (halfspace_cache_[pos]) return *halfspace_cache_[pos];
  }
  // Extend the generators to a rational basis; the dual rows of the extension
  // give coefficients (inequalities) and span-membership tests (equalities).
  int k = (int)c.size();
  IMat basis = select_rows(rays_, c);
  for (int j = 0; j < rank_ && (int)basis.size() < rank_; ++j) {
    IVec e(rank_, 0);
    e[j] = 1;
    basis.push_back(e);
    if (rank_rational(basis) != (int)basis.size()) basis.pop_back();
  }
  if ((int)basis.size() != rank_) throw Error("halfspaces: basis extension failed");
  // rows of inverse(transpose(basis-as-rows))? We need covectors w_i with
  // w_i . basis_j = delta_ij: the columns of the inverse of the row matrix.
  QMat a(rank_, QVec(2 * rank_, Rat(0)));
  for (int i = 0; i < rank_; ++i) {
    for (int j = 0; j < rank_; ++j) a[i][j] = Rat(basis[i][j]);
    a[i][rank_ + i] = 1;
  }
  for (int col = 0; col < rank_; ++col) {
    int piv = col;
    while (piv < rank_ && a[piv][col] == 0) ++piv;
    if (piv == rank_) throw Error("halfspaces: singular");
    std::swap(a[col], a[piv]);
    Rat p = a[col][col];
    for (int j = 0; j < 2 * rank_; ++j) a[col][j] /= p;
    for (int i = 0; i < rank_; ++i) {
      if (i == col || a[i][col] == 0) continue;
      Rat f = a[i][col];
      for (int j = 0; j < 2 * rank_; ++j) a[i][j] -= f * a[col][j];
    }
  }
  // w_i = column i of the inverse, cleared to integer covectors
  Halfspaces hs;
  for (int i = 0; i < rank_; ++i) {
    QVec w(rank_);
    for (int j = 0; j < rank_; ++j) w[j] = a[j][rank_ + i];
    Int lcm = 1;
    for (const Rat& q : w) {
      Int den = boost::multiprecision::denominator(q);
      lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
    }
    IVec wi(rank_);
    for (int j = 0; j < rank_; ++j)
      wi[j] = boost::multiprecision::numerator(w[j] * Rat(lcm));
    if (i < k)
      hs.inequalities.push_back(std::move(wi));
    else
      hs.equalities.push_back(std::move(wi));
  }
  std::lock_guard<std::mutex> lock(halfspace_mutex);
  if (!halfspace_cache_[pos]) halfspace_cache_[pos] = std::move(hs);
  return *halfspace_cache_[pos];
}

std::optional<QVec> Fan::cone_coefficients(const ConeKey& c, const QVec& point) const {
  const auto& hs = halfspaces(c);
  for (const auto& e : hs.equalities)
    if (dot(point, e) != 0) return std::nullopt;
  QVec coeffs;
  for (const auto& w : hs.inequalities) {
    Rat v = dot(point, w);
    if (v < 0) return std::nullopt;
    coeffs.push_back(v);
  }
  return coeffs;
}

bool Fan::cone_contains(const ConeKey& c, const QVec& point) const {
  return cone_coefficients(c, point).has_value();
}

std::optional<ConeKey> Fan::carrier(const QVec& point) const {
  for (const auto& c : cones_) {  // ordered by dimension
    auto coeffs = cone_coefficients(c, point);
    if (!coeffs) continue;
    bool interior = true;
    for (const Rat& q : *coeffs)
      if (q == 0) interior = false;
    if (interior) return c;
  }
  return std::nullopt;
}

int Fan::ray_index(const IVec& v) const {
  for (int i = 0; i < num_rays(); ++i)
    if (rays_[i] == v) return i;
  return -1;
}

std::string Fan::canonical_key() const {
  std::vector<std::pair<IVec, int>> order;
  for (int i = 0; i < num_rays(); ++i) order.push_back({rays_[i], i});
  std::sort(order.begin(), order.end());
  std::vector<int> newindex(num_rays());
  for (size_t i = 0; i < order.size(); ++i) newindex[order[i].second] = (int)i;
  std::vector<ConeKey> cones;
  for (auto c : max_cones_) {
    for (int& i : c) i = newindex[i];
    std::sort(c.begin(), c.end());
    cones.push_back(c);
  }
  std::sort(cones.begin(), cones.end(), cone_order);
  std::ostringstream os;
  os << rank_ << ";";
  for (const auto& [r, idx] : order) os << to_string(r);
  os << ";";
  for (const auto& c : cones) {
    os << "[";
    for (int i : c) os << i << ",";
    os << "]";
  }
  return os.str();
}

bool check_fan_map(const IMat& f, const Fan& source, const Fan& target) {
  if ((int)f.size() != target.rank()) throw Error("check_fan_map: matrix rows");
  for (const auto& row : f)
    if ((int)row.size() != source.rank()) throw Error("check_fan_map: matrix cols");
  for (const auto& c : source.max_cones()) {
    std::vector<QVec> images;
    for (int i : c) images.push_back(to_rational(mat_apply(f, source.ray(i))));
    bool found = c.empty() && !target.empty();
    for (const auto& t : target.max_cones()) {
      bool inside = true;
      for (const auto& im : images)
        if (!target.cone_contains(t, im)) {
          inside = false;
          break;
        }
      if (inside) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

SubfanResult star(const FanPtr& fan, const ConeKey& sigma) {
  fan->require_cone(sigma);
  std::vector<ConeKey> max;
  for (const auto& c : fan->max_cones())
    if (subset_of(sigma, c)) max.push_back(c);
  std::set<int> used;
  for (const auto& c : max)
    for (int i : c) used.insert(i);
  std::vector<int> ray_of_parent(used.begin(), used.end());
  std::map<int, int> newindex;
  for (size_t i = 0; i < ray_of_parent.size(); ++i) newindex[ray_of_parent[i]] = (int)i;
  IMat rays;
  for (int i : ray_of_parent) rays.push_back(fan->ray(i));
  for (auto& c : max)
    for (int& i : c) i = newindex[i];
  return {Fan::build(fan->rank(), rays, max), ray_of_parent};
}

StarQuotient star_quotient(const FanPtr& fan, const ConeKey& sigma) {
  fan->require_cone(sigma);
  StarQuotient out;
  if (sigma.empty()) {  // the star of 0 is the whole fan
    out.fan = fan;
    out.map = quotient_lattice({}, fan->rank());
    for (int i = 0; i < fan->num_rays(); ++i) {
      out.ray_origin.push_back(i);
      out.ray_scale.push_back(1);
    }
    return out;
  }
  out.map = quotient_lattice(select_rows(fan->rays(), sigma), fan->rank());

  // images of the rays of str(sigma) not in sigma, primitivized
  std::vector<int> origin;
  std::vector<Int> scale;
  IMat qrays;
  std::vector<ConeKey> qmax;
  for (const auto& c : fan->max_cones()) {
    if (!subset_of(sigma, c)) continue;
    ConeKey qc;
    for (int i : c) {
      if (std::binary_search(sigma.begin(), sigma.end(), i)) continue;
      IVec img = out.map.apply(fan->ray(i));
      if (is_zero(img)) throw Error("star_quotient: ray collapses");
      Int g = gcd_of(img);
      IVec prim = img;
      if (g > 1)
        for (Int& x : prim) x /= g;
      int idx = -1;
      for (size_t j = 0; j < qrays.size(); ++j)
        if (qrays[j] == prim) idx = (int)j;
      if (idx < 0) {
        idx = (int)qrays.size();
        qrays.push_back(prim);
        origin.push_back(i);
        scale.push_back(g);
      }
      qc.push_back(idx);
    }
    std::sort(qc.begin(), qc.end());
    qmax.push_back(qc);
  }
  if (qmax.empty()) qmax.push_back({});  // sigma maximal: the point fan
  out.fan = Fan::build(out.map.target_rank, qrays, qmax);
  out.ray_origin = origin;
  out.ray_scale = scale;
  return out;
}

FanPtr star_subdivision(const FanPtr& fan, const IVec& alpha) {
  IVec a = primitivize(alpha);
  if (fan->ray_index(a) >= 0) return fan;
  QVec aq = to_rational(a);
  if (!fan->in_support(aq)) throw AlphaOutsideSupport();

  IMat rays = fan->rays();
  int alpha_idx = (int)rays.size();
  rays.push_back(a);

  std::vector<ConeKey> all;
  for (const auto& c : fan->cones()) {
    if (fan->cone_contains(c, aq)) continue;
    all.push_back(c);  // survives
    // join with alpha when the join lies in some cone of the fan
    for (const auto& big : fan->max_cones()) {
      if (!subset_of(c, big) || !fan->cone_contains(big, aq)) continue;
      ConeKey j = c;
      j.push_back(alpha_idx);
      std::sort(j.begin(), j.end());
      all.push_back(j);
      break;
    }
  }
  // keep the maximal ones
  std::vector<ConeKey> max;
  for (const auto& c : all) {
    bool maximal = true;
    for (const auto& d : all)
      if (c != d && subset_of(c, d)) {
        maximal = false;
        break;
      }
    if (maximal) max.push_back(c);
  }
  return Fan::build(fan->rank(), rays, max);
}

BlowupPartition blowup_partition(const FanPtr& fan, const ConeKey& tau) {
  fan->require_cone(tau);
  if (tau.empty()) throw Error("blowup_partition: tau must be positive-dimensional");
  IVec alpha(fan->rank(), 0);
  for (int i : tau) alpha = add(alpha, fan->ray(i));
  alpha = primitivize(alpha);

  BlowupPartition bp;
  bp.blowup = star_subdivision(fan, alpha);
  bp.alpha_ray = bp.blowup->ray_index(alpha);
  if (bp.alpha_ray < 0) throw Error("blowup_partition: alpha became a ray of the base fan");

  for (const auto& c : bp.blowup->cones()) {
    bool has_alpha = std::binary_search(c.begin(), c.end(), bp.alpha_ray);
    if (!has_alpha) {
      bp.kept.push_back(c);
      continue;
    }
    // lifted iff contained in a cone of the base fan of the same dimension
    bool lifted = false;
    for (const auto& b : fan->cones()) {
      if (b.size() != c.size()) continue;
      bool inside = true;
      for (int i : c)
        if (!fan->cone_contains(b, to_rational(bp.blowup->ray(i)))) {
          inside = false;
          break;
        }
      if (inside) {
        lifted = true;
        break;
      }
    }
    if (lifted)
      bp.lifted.push_back(c);
    else
      bp.t_cones.push_back(c);
  }
  return bp;
}

int fiber_codimension(const BlowupPartition& bp, const FanPtr& base, const ConeKey& tau,
                      const ConeKey& cone_in_blowup) {
  bool in_t = false;
  for (const auto& c : bp.t_cones)
    if (c == cone_in_blowup) in_t = true;
  if (!in_t) throw ConeNotInFan("fiber_codimension: cone not in T");
  // |sigma/alpha| = dim sigma - 1; |p(sigma/alpha)| is the rank of the image
  // of sigma under the projection along tau.
  QuotientMap p = quotient_lattice(select_rows(base->rays(), tau), base->rank());
  IMat images;
  for (int i : cone_in_blowup) images.push_back(p.apply(bp.blowup->ray(i)));
  int image_rank = rank_rational(images);
  return (int)cone_in_blowup.size() - 1 - image_rank;
}

StopRemoval stop_removal_fan(const FanPtr& fan, const ConeKey& sigma) {
  fan->require_cone(sigma);
  StopRemoval out;
  std::vector<ConeKey> survivors;
  for (const auto& c : fan->cones()) {
    if (subset_of(sigma, c))
      out.removed.push_back(c);
    else
      survivors.push_back(c);
  }
  std::vector<ConeKey> max;
  for (const auto& c : survivors) {
    bool maximal = true;
    for (const auto& d : survivors)
      if (c != d && subset_of(c, d)) {
        maximal = false;
        break;
      }
    if (maximal) max.push_back(c);
  }
  std::set<int> used;
  for (const auto& c : max)
    for (int i : c) used.insert(i);
  out.ray_of_parent.assign(used.begin(), used.end());
  std::map<int, int> newindex;
  for (size_t i = 0; i < out.ray_of_parent.size(); ++i)
    newindex[out.ray_of_parent[i]] = (int)i;
  IMat rays;
  for (int i : out.ray_of_parent) rays.push_back(fan->ray(i));
  for (auto& c : max)
    for (int& i : c) i = newindex[i];
  out.fan = Fan::build(fan->rank(), rays, max);
  return out;
}

FanPtr point_fan() { return Fan::build(0, {}, {{}}); }

}  // namespace fltz
