#include "fltz/support.hpp"

#include <algorithm>

namespace fltz {

SupportFunction::SupportFunction(FanPtr fan, IVec ray_values)
    : fan_(std::move(fan)), values_(std::move(ray_values)) {
  if ((int)values_.size() != fan_->num_rays())
    throw Error("support function: one value per ray required");
  pieces_.reserve(fan_->max_cones().size());
  for (const auto& c : fan_->max_cones()) {
    IMat gens;
    IVec rhs;
    for (int i : c) {
      gens.push_back(fan_->ray(i));
      rhs.push_back(values_[i]);
    }
    if (gens.empty()) {
      pieces_.push_back(IVec(fan_->rank(), 0));
      continue;
    }
    auto m = solve_integer(gens, rhs);
    if (!m) throw NonIntegralPiece();
    pieces_.push_back(*m);
  }
}

Rat SupportFunction::evaluate(const QVec& point) const {
  for (size_t i = 0; i < fan_->max_cones().size(); ++i)
    if (fan_->cone_contains(fan_->max_cones()[i], point)) return dot(point, pieces_[i]);
  throw Error("support function: point outside the fan support");
}

Int SupportFunction::evaluate(const IVec& point) const {
  Rat v = evaluate(to_rational(point));
  if (!is_integer(v)) throw Error("support function: non-integer value at lattice point");
  return boost::multiprecision::numerator(v);
}

bool SupportFunction::vanishes_on(const ConeKey& sigma) const {
  for (int i : sigma)
    if (values_[i] != 0) return false;
  return true;
}

SupportFunction SupportFunction::operator+(const SupportFunction& other) const {
  if (fan_ != other.fan_) throw FanMismatch();
  return SupportFunction(fan_, add(values_, other.values_));
}

SupportFunction SupportFunction::operator-(const SupportFunction& other) const {
  if (fan_ != other.fan_) throw FanMismatch();
  return SupportFunction(fan_, sub(values_, other.values_));
}

SupportFunction from_ray_values(const FanPtr& fan, const IVec& values) {
  return SupportFunction(fan, values);
}

SupportFunction zero_function(const FanPtr& fan) {
  return SupportFunction(fan, IVec(fan->num_rays(), 0));
}

SupportFunction basis_function(const FanPtr& fan, int ray) {
  if (ray < 0 || ray >= fan->num_rays()) throw NotARay();
  IVec v(fan->num_rays(), 0);
  v[ray] = 1;
  return SupportFunction(fan, v);
}

SupportFunction canonical_function(const FanPtr& fan) {
  return SupportFunction(fan, IVec(fan->num_rays(), 1));
}

SupportFunction pullback(const FanMap& map, const SupportFunction& f) {
  if (f.fan() != map.target) throw FanMismatch();
  if (!check_fan_map(map.matrix, *map.source, *map.target)) throw NotAFanMap();
  IVec values(map.source->num_rays());
  for (int i = 0; i < map.source->num_rays(); ++i)
    values[i] = f.evaluate(mat_apply(map.matrix, map.source->ray(i)));
  return SupportFunction(map.source, values);
}

std::optional<IVec> linear_equivalence(const SupportFunction& f1, const SupportFunction& f2) {
  if (f1.fan() != f2.fan()) throw FanMismatch();
  const Fan& fan = *f1.fan();
  if (fan.num_rays() == 0) return IVec(fan.rank(), 0);
  IMat rays = fan.rays();
  IVec d = sub(f1.values(), f2.values());
  return solve_integer(rays, d);
}

TransverseNormalization transverse_normalize(const SupportFunction& f, const ConeKey& sigma) {
  f.fan()->require_cone(sigma);
  IMat gens;
  IVec rhs;
  for (int i : sigma) {
    gens.push_back(f.fan()->ray(i));
    rhs.push_back(f.value(i));
  }
  IVec m(f.fan()->rank(), 0);
  if (!gens.empty()) {
    auto sol = solve_integer(gens, rhs);
    if (!sol) throw NonIntegralPiece("transverse_normalize: no integral extension");
    m = *sol;
  }
  IVec values(f.fan()->num_rays());
  for (int i = 0; i < f.fan()->num_rays(); ++i) values[i] = f.value(i) - dot(m, f.fan()->ray(i));
  return {SupportFunction(f.fan(), values), m};
}

SupportFunction restrict_to_orbit(const SupportFunction& f, const StarQuotient& sq) {
  const Fan& qfan = *sq.fan;
  IVec values(qfan.num_rays());
  for (int j = 0; j < qfan.num_rays(); ++j) {
    Int v = f.value(sq.ray_origin[j]);
    if (v % sq.ray_scale[j] != 0)
      throw NonIntegralPiece("restrict_to_orbit: non-integral quotient value");
    values[j] = v / sq.ray_scale[j];
  }
  return SupportFunction(sq.fan, values);
}

OrbitRestriction restrict_to_orbit(const SupportFunction& f, const ConeKey& sigma) {
  if (!f.vanishes_on(sigma)) throw NotTransverse();
  StarQuotient sq = star_quotient(f.fan(), sigma);
  return {restrict_to_orbit(f, sq), std::move(sq)};
}

SupportFunction lift_from_orbit(const SupportFunction& quotient_fn, const StarQuotient& sq,
                                const FanPtr& fan, int alpha_ray) {
  if (quotient_fn.fan() != sq.fan) throw FanMismatch();
  IVec values(fan->num_rays(), 0);
  for (int j = 0; j < sq.fan->num_rays(); ++j)
    values[sq.ray_origin[j]] = quotient_fn.value(j) * sq.ray_scale[j];
  values[alpha_ray] = 0;
  return SupportFunction(fan, values);
}

std::vector<IVec> lattice_points(const SupportFunction& f) {
  const Fan& fan = *f.fan();
  if (!fan.is_complete()) throw UnboundedPolytope();
  int n = fan.rank();
  if (n == 0) return {IVec{}};
  LinearSystem sys(n);
  for (int i = 0; i < fan.num_rays(); ++i) {
    IVec row = neg(fan.ray(i));  // <m, ray> >= F(ray)
    sys.add(row, Rel::le, Rat(-f.value(i)));
  }
  IVec lo(n), hi(n);
  for (int j = 0; j < n; ++j) {
    QVec c(n, Rat(0));
    c[j] = 1;
    auto up = lp_max(sys, c);
    if (up.status == LpStatus::infeasible) return {};
    c[j] = -1;
    auto down = lp_max(sys, c);
    if (up.status != LpStatus::bounded || down.status != LpStatus::bounded)
      throw UnboundedPolytope("lattice_points: polytope unbounded");
    hi[j] = floor_rat(up.value);
    lo[j] = ceil_rat(-down.value);
    if (lo[j] > hi[j]) return {};
  }
  std::vector<IVec> points;
  IVec m = lo;
  while (true) {
    bool ok = true;
    for (int i = 0; i < fan.num_rays() && ok; ++i)
      if (dot(m, fan.ray(i)) < f.value(i)) ok = false;
    if (ok) points.push_back(m);
    int j = 0;
    while (j < n) {
      if (m[j] < hi[j]) {
        ++m[j];
        break;
      }
      m[j] = lo[j];
      ++j;
    }
    if (j == n) break;
  }
  std::sort(points.begin(), points.end());
  return points;
}

}  // namespace fltz
