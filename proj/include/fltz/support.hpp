#ifndef FLTZ_SUPPORT_HPP
#define FLTZ_SUPPORT_HPP

#include "fltz/fan.hpp"

namespace fltz {

// Integer-valued piecewise linear function, linear on each cone of a smooth
// simplicial fan. Determined by its values on the rays; the linear piece on
// each maximal cone is an integral covector.
class SupportFunction {
 public:
  SupportFunction(FanPtr fan, IVec ray_values);

  const FanPtr& fan() const { return fan_; }
  const IVec& values() const { return values_; }
  const Int& value(int ray) const { return values_[ray]; }
  // Integral linear piece on the given maximal cone.
  const IVec& piece(int max_cone_index) const { return pieces_[max_cone_index]; }
  const std::vector<IVec>& pieces() const { return pieces_; }

  // Exact evaluation anywhere on the support of the fan.
  Rat evaluate(const QVec& point) const;
  Int evaluate(const IVec& point) const;

  bool vanishes_on(const ConeKey& sigma) const;

  SupportFunction operator+(const SupportFunction& other) const;
  SupportFunction operator-(const SupportFunction& other) const;

  bool operator==(const SupportFunction& other) const {
    return fan_ == other.fan_ && values_ == other.values_;
  }

 private:
  FanPtr fan_;
  IVec values_;
  std::vector<IVec> pieces_;  // per max cone
};

// Divisor D_F = sum of -F(alpha) D_alpha; stores the coefficients a_alpha.
struct DivisorCoefficients {
  IVec a;

  static DivisorCoefficients of(const SupportFunction& f) {
    IVec a(f.values().size());
    for (size_t i = 0; i < a.size(); ++i) a[i] = -f.value((int)i);
    return {a};
  }
  SupportFunction to_support_function(const FanPtr& fan) const {
    IVec v(a.size());
    for (size_t i = 0; i < a.size(); ++i) v[i] = -a[i];
    return SupportFunction(fan, v);
  }
};

SupportFunction from_ray_values(const FanPtr& fan, const IVec& values);
SupportFunction zero_function(const FanPtr& fan);
// 1 on the given ray, 0 on all others.
SupportFunction basis_function(const FanPtr& fan, int ray);
// Canonical support function: value 1 on every ray (F positive, D = K).
SupportFunction canonical_function(const FanPtr& fan);

SupportFunction pullback(const FanMap& map, const SupportFunction& f);

// The covector m with f1 - f2 = <m, .>, when the difference is linear.
std::optional<IVec> linear_equivalence(const SupportFunction& f1, const SupportFunction& f2);

// F' = F - <m, .> with F' vanishing on sigma; m extends F's piece on sigma.
struct TransverseNormalization {
  SupportFunction fn;
  IVec linear;  // the subtracted covector
};
TransverseNormalization transverse_normalize(const SupportFunction& f, const ConeKey& sigma);

// Induced support function on str(sigma)/sigma for F vanishing on sigma.
struct OrbitRestriction {
  SupportFunction fn;
  StarQuotient quotient;
};
OrbitRestriction restrict_to_orbit(const SupportFunction& f, const ConeKey& sigma);
SupportFunction restrict_to_orbit(const SupportFunction& f, const StarQuotient& sq);

// Lift of a quotient support function to Supp_alpha(fan): 0 at alpha and at
// rays outside str(alpha), the quotient value at each other ray of str(alpha).
SupportFunction lift_from_orbit(const SupportFunction& quotient_fn, const StarQuotient& sq,
                                const FanPtr& fan, int alpha_ray);

// All lattice points of {m : <m, ray> >= F(ray) for every ray}; this is the
// polytope of global sections of O(F). Requires a complete fan.
std::vector<IVec> lattice_points(const SupportFunction& f);

}  // namespace fltz

#endif
