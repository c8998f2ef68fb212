#include "fltz/skeleton.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace fltz {

namespace {

Rat fractional_part(const Rat& q) { return q - Rat(floor_rat(q)); }

// union-find
struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

IVec normalize_sign(IVec c) {
  for (const Int& x : c) {
    if (x > 0) return c;
    if (x < 0) return neg(c);
  }
  return c;
}

}  // namespace

SkeletonStratum stratum(const FanPtr& fan, const ConeKey& sigma) {
  fan->require_cone(sigma);
  int n = fan->rank();
  IMat gens;
  for (int i : sigma) gens.push_back(fan->ray(i));
  auto basis = extend_to_basis(gens, n);
  if (!basis) throw Error("stratum: cone generators are not part of a lattice basis");
  SkeletonStratum st;
  st.cone = sigma;
  st.rank = n;
  st.torus_dim = n - (int)sigma.size();
  IMat inv = inverse_unimodular(*basis);
  for (int j = (int)sigma.size(); j < n; ++j) {
    st.torus_basis.push_back((*basis)[j]);
    IVec dual(n);
    for (int i = 0; i < n; ++i) dual[i] = inv[i][j];
    st.perp_basis.push_back(dual);
  }
  return st;
}

std::vector<SkeletonStratum> strata(const FanPtr& fan) {
  std::vector<SkeletonStratum> out;
  for (const auto& c : fan->cones()) out.push_back(stratum(fan, c));
  return out;
}

ToralArrangement toral_arrangement(const FanPtr& fan, const SkeletonStratum& st) {
  ToralArrangement arr;
  arr.dim = st.torus_dim;
  std::set<IVec> seen;
  for (const auto& c : fan->cones()) {
    if (c.size() != st.cone.size() + 1) continue;
    if (!std::includes(c.begin(), c.end(), st.cone.begin(), st.cone.end())) continue;
    int beta = -1;
    for (int i : c)
      if (!std::binary_search(st.cone.begin(), st.cone.end(), i)) beta = i;
    IVec cov(st.torus_dim);
    for (int j = 0; j < st.torus_dim; ++j) cov[j] = dot(st.perp_basis[j], fan->ray(beta));
    cov = normalize_sign(cov);
    if (is_zero(cov)) throw Error("toral_arrangement: constraint covector vanished");
    if (seen.insert(cov).second) arr.covectors.push_back(cov);
  }
  return arr;
}

StratumComponents::StratumComponents(const FanPtr& fan, const ConeKey& sigma)
    : stratum_(stratum(fan, sigma)), arrangement_(toral_arrangement(fan, stratum_)) {
  int d = arrangement_.dim;
  if (d == 0) {
    cells_.push_back({{}, QVec{}, 0});
    components_.push_back({0, QVec{}, QVec(fan->rank(), Rat(0)), {}});
    return;
  }

  // integer translates of each constraint hyperplane meeting the unit cube
  for (const auto& c : arrangement_.covectors) {
    Int lo = 0, hi = 0;
    for (const Int& x : c) {
      if (x > 0) hi += x;
      if (x < 0) lo += x;
    }
    for (Int z = lo; z <= hi; ++z) planes_.push_back({c, z});
  }

  // split the cube into open sign cells
  std::vector<std::vector<int>> sides = {{}};
  for (size_t p = 0; p < planes_.size(); ++p) {
    std::vector<std::vector<int>> next;
    for (const auto& s : sides) {
      for (int side : {+1, -1}) {
        LinearSystem sys(d);
        for (int j = 0; j < d; ++j) {
          QVec e(d, Rat(0));
          e[j] = 1;
          sys.add(e, Rel::le, Rat(1));
          e[j] = -1;
          sys.add(e, Rel::le, Rat(0));
        }
        for (size_t l = 0; l <= p; ++l) {
          int sl = l < p ? s[l] : side;
          QVec row = to_rational(planes_[l].c);
          Rat rhs = Rat(planes_[l].z);
          if (sl > 0) {
            for (auto& x : row) x = -x;
            sys.add(row, Rel::lt, -rhs);  // c.b > z
          } else {
            sys.add(row, Rel::lt, rhs);  // c.b < z
          }
        }
        if (feasible_point(sys)) {
          auto t = s;
          t.push_back(side);
          next.push_back(std::move(t));
        }
      }
    }
    sides = std::move(next);
  }

  for (auto& s : sides) {
    LinearSystem sys(d);
    for (int j = 0; j < d; ++j) {
      QVec e(d, Rat(0));
      e[j] = 1;
      sys.add(e, Rel::le, Rat(1));
      e[j] = -1;
      sys.add(e, Rel::le, Rat(0));
    }
    for (size_t l = 0; l < planes_.size(); ++l) {
      QVec row = to_rational(planes_[l].c);
      Rat rhs = Rat(planes_[l].z);
      if (s[l] > 0) {
        for (auto& x : row) x = -x;
        sys.add(row, Rel::lt, -rhs);
      } else {
        sys.add(row, Rel::lt, rhs);
      }
    }
    auto rep = feasible_point(sys);
    if (!rep) throw Error("stratum_components: empty cell survived");
    cells_.push_back({s, *rep, -1});
  }

  // glue cells across cube faces by translation; a crossing exists iff some
  // facet point together with its translate avoids every plane strictly
  Dsu dsu((int)cells_.size());
  for (int j = 0; j < d; ++j) {
    for (size_t a = 0; a < cells_.size(); ++a) {
      for (size_t b = 0; b < cells_.size(); ++b) {
        // point x with x_j = 0 approached from cell b, x + e_j from cell a
        LinearSystem sys(d);
        QVec ej(d, Rat(0));
        ej[j] = 1;
        sys.add(ej, Rel::eq, Rat(0));
        for (int l = 0; l < d; ++l) {
          QVec e(d, Rat(0));
          e[l] = 1;
          sys.add(e, Rel::le, Rat(1));
          e[l] = -1;
          sys.add(e, Rel::le, Rat(0));
        }
        for (size_t l = 0; l < planes_.size(); ++l) {
          QVec row = to_rational(planes_[l].c);
          Rat rhs = Rat(planes_[l].z);
          // side per cell b at x
          if (cells_[b].side[l] > 0) {
            QVec m = row;
            for (auto& x : m) x = -x;
            sys.add(m, Rel::lt, -rhs);
          } else {
            sys.add(row, Rel::lt, rhs);
          }
          // side per cell a at x + e_j: c.(x+e_j) vs z, i.e. c.x vs z - c_j
          Rat rhs2 = rhs - Rat(planes_[l].c[j]);
          if (cells_[a].side[l] > 0) {
            QVec m = row;
            for (auto& x : m) x = -x;
            sys.add(m, Rel::lt, -rhs2);
          } else {
            sys.add(row, Rel::lt, rhs2);
          }
        }
        if (feasible_point(sys)) dsu.unite((int)a, (int)b);
      }
    }
  }

  // canonical representative per group: minimal (coordinate sum, lex)
  std::map<int, int> best;  // root -> cell index
  auto key = [&](int cell) {
    Rat sum = 0;
    for (const Rat& x : cells_[cell].rep) sum += x;
    return std::make_pair(sum, cells_[cell].rep);
  };
  for (size_t i = 0; i < cells_.size(); ++i) {
    int r = dsu.find((int)i);
    auto it = best.find(r);
    if (it == best.end() || key((int)i) < key(it->second)) best[r] = (int)i;
  }
  std::vector<int> reps;
  for (auto& [root, cell] : best) reps.push_back(cell);
  std::sort(reps.begin(), reps.end(), [&](int a, int b) { return key(a) < key(b); });
  std::map<int, int> group_of_root;
  for (size_t g = 0; g < reps.size(); ++g) group_of_root[dsu.find(reps[g])] = (int)g;
  for (size_t i = 0; i < cells_.size(); ++i) cells_[i].group = group_of_root[dsu.find((int)i)];

  for (size_t g = 0; g < reps.size(); ++g) {
    const Cell& c = cells_[reps[g]];
    SkeletonComponent comp;
    comp.id = (int)g;
    comp.rep_torus = c.rep;
    comp.rep_ambient = ambient_of_torus(c.rep);
    comp.signature = c.side;
    components_.push_back(std::move(comp));
  }
}

QVec StratumComponents::torus_coordinates(const QVec& ambient_p) const {
  QVec b(stratum_.torus_dim);
  for (int j = 0; j < stratum_.torus_dim; ++j)
    b[j] = fractional_part(dot(ambient_p, stratum_.torus_basis[j]));
  return b;
}

QVec StratumComponents::ambient_of_torus(const QVec& torus_point) const {
  int n = stratum_.rank;
  QVec p(n, Rat(0));
  for (int j = 0; j < stratum_.torus_dim; ++j)
    for (int i = 0; i < n; ++i) p[i] += torus_point[j] * Rat(stratum_.perp_basis[j][i]);
  return p;
}

int StratumComponents::locate(const QVec& torus_point) const {
  if (stratum_.torus_dim == 0) return 0;
  QVec b(torus_point.size());
  for (size_t j = 0; j < torus_point.size(); ++j) b[j] = fractional_part(torus_point[j]);
  std::vector<int> side(planes_.size());
  for (size_t l = 0; l < planes_.size(); ++l) {
    Rat v = dot(b, planes_[l].c) - Rat(planes_[l].z);
    if (v == 0) return -1;  // on the singular locus
    side[l] = v > 0 ? +1 : -1;
  }
  for (const auto& cell : cells_)
    if (cell.side == side) return cell.group;
  return -1;
}

StratumComponents stratum_components(const FanPtr& fan, const ConeKey& sigma) {
  return StratumComponents(fan, sigma);
}

Classification classify_point(const FanPtr& fan, const QVec& u, const QVec& p) {
  Classification out;
  auto carrier = fan->carrier(u);
  if (!carrier) {
    out.kind = Classification::not_in_skeleton;
    return out;
  }
  out.cone = *carrier;
  for (int i : out.cone)
    if (!is_integer(dot(p, fan->ray(i)))) {
      out.kind = Classification::not_in_skeleton;
      return out;
    }
  // singular iff p is integral on a cone strictly above the carrier
  for (const auto& c : fan->cones()) {
    if (c.size() != out.cone.size() + 1) continue;
    if (!std::includes(c.begin(), c.end(), out.cone.begin(), out.cone.end())) continue;
    int beta = -1;
    for (int i : c)
      if (!std::binary_search(out.cone.begin(), out.cone.end(), i)) beta = i;
    if (is_integer(dot(p, fan->ray(beta)))) {
      out.kind = Classification::on_singular_locus;
      return out;
    }
  }
  out.kind = Classification::interior;
  StratumComponents sc(fan, out.cone);
  out.component = sc.locate(sc.torus_coordinates(p));
  if (out.component < 0) throw Error("classify_point: interior point failed to locate");
  return out;
}

IVec cocore_divisor_of_point(const FanPtr& fan, const QVec& p) {
  IVec m(fan->num_rays());
  for (int i = 0; i < fan->num_rays(); ++i) {
    Rat v = dot(p, fan->ray(i));
    if (is_integer(v)) throw PointOnSingularLocus();
    m[i] = ceil_rat(v);
  }
  return m;
}

int grid_component_oracle(const FanPtr& fan, const ConeKey& sigma, int q) {
  SkeletonStratum st = stratum(fan, sigma);
  ToralArrangement arr = toral_arrangement(fan, st);
  int d = arr.dim;
  if (d == 0) return 1;

  auto cell_count = [&]() {
    long total = 1;
    for (int j = 0; j < d; ++j) total *= q;
    return total;
  }();

  auto decode = [&](long idx) {
    std::vector<int> c(d);
    for (int j = 0; j < d; ++j) {
      c[j] = (int)(idx % q);
      idx /= q;
    }
    return c;
  };
  auto encode = [&](const std::vector<int>& c) {
    long idx = 0;
    for (int j = d - 1; j >= 0; --j) idx = idx * q + c[j];
    return idx;
  };

  // off-constraint: no hyperplane translate cuts the open cell
  std::vector<char> off(cell_count, 1);
  for (long idx = 0; idx < cell_count; ++idx) {
    auto c = decode(idx);
    for (const auto& cov : arr.covectors) {
      Rat lo = 0, hi = 0;
      for (int j = 0; j < d; ++j) {
        Rat a = Rat(c[j], q), b = Rat(c[j] + 1, q);
        if (cov[j] > 0) {
          lo += Rat(cov[j]) * a;
          hi += Rat(cov[j]) * b;
        } else {
          lo += Rat(cov[j]) * b;
          hi += Rat(cov[j]) * a;
        }
      }
      // any integer strictly between lo and hi?
      Int z = floor_rat(hi);
      if (Rat(z) == hi) --z;  // largest integer < hi
      if (Rat(z) > lo) {
        off[idx] = 0;
        break;
      }
    }
  }

  Dsu dsu((int)cell_count);
  for (long idx = 0; idx < cell_count; ++idx) {
    if (!off[idx]) continue;
    auto c = decode(idx);
    for (int j = 0; j < d; ++j) {
      auto c2 = c;
      c2[j] = (c[j] + 1) % q;
      long idx2 = encode(c2);
      if (!off[idx2]) continue;
      // shared facet at level v; blocked iff an axis-supported constraint
      // subtorus contains it
      Rat v = Rat((c[j] + 1) % q, q);
      bool blocked = false;
      for (const auto& cov : arr.covectors) {
        bool axis = true;
        for (int l = 0; l < d; ++l)
          if (l != j && cov[l] != 0) axis = false;
        if (axis && cov[j] != 0 && is_integer(Rat(cov[j]) * v)) blocked = true;
      }
      if (!blocked) dsu.unite((int)idx, (int)idx2);
    }
  }
  std::set<int> roots;
  for (long idx = 0; idx < cell_count; ++idx)
    if (off[idx]) roots.insert(dsu.find((int)idx));
  return (int)roots.size();
}

}  // namespace fltz
