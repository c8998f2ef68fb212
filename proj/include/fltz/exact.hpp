#ifndef FLTZ_EXACT_HPP
#define FLTZ_EXACT_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace fltz {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using IVec = std::vector<Int>;
using QVec = std::vector<Rat>;
using IMat = std::vector<IVec>;
using QMat = std::vector<QVec>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define FLTZ_ERROR(name)                 \
  struct name : Error {                  \
    using Error::Error;                  \
    name() : Error(#name) {}             \
  }

FLTZ_ERROR(FanConditionViolated);
FLTZ_ERROR(NotStronglyConvex);
FLTZ_ERROR(NotSimplicial);
FLTZ_ERROR(ConeNotInFan);
FLTZ_ERROR(AlphaOutsideSupport);
FLTZ_ERROR(NotARay);
FLTZ_ERROR(FanMismatch);
FLTZ_ERROR(NotAFanMap);
FLTZ_ERROR(NotTransverse);
FLTZ_ERROR(NonIntegralPiece);
FLTZ_ERROR(IncompleteFan);
FLTZ_ERROR(UnboundedPolytope);
FLTZ_ERROR(PointOnSingularLocus);
FLTZ_ERROR(ComponentMismatch);
FLTZ_ERROR(DeltaTooSmall);
FLTZ_ERROR(ConstraintViolated);
FLTZ_ERROR(QuadratureUnderflow);
FLTZ_ERROR(UnsupportedRank);

#undef FLTZ_ERROR

inline Int dot(const IVec& a, const IVec& b) {
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rat dot(const QVec& a, const IVec& b) {
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * Rat(b[i]);
  return s;
}

inline Rat dot(const QVec& a, const QVec& b) {
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline IVec add(const IVec& a, const IVec& b) {
  IVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline IVec sub(const IVec& a, const IVec& b) {
  IVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline IVec neg(const IVec& a) {
  IVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline Int gcd_of(const IVec& v) {
  Int g = 0;
  for (const Int& x : v) g = boost::multiprecision::gcd(g, x);
  return g;
}

inline bool is_zero(const IVec& v) {
  for (const Int& x : v)
    if (x != 0) return false;
  return true;
}

// Divide a nonzero integer vector by the gcd of its entries.
inline IVec primitivize(IVec v) {
  Int g = gcd_of(v);
  if (g == 0) throw Error("primitivize: zero vector");
  if (g > 1)
    for (Int& x : v) x /= g;
  return v;
}

inline QVec to_rational(const IVec& v) {
  QVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

// Smallest integer >= q.
inline Int ceil_rat(const Rat& q) {
  Int n = boost::multiprecision::numerator(q);
  Int d = boost::multiprecision::denominator(q);  // always > 0
  Int t = n / d;
  if (t * d < n) ++t;
  return t;
}

inline Int floor_rat(const Rat& q) { return -ceil_rat(-q); }

inline bool is_integer(const Rat& q) {
  return boost::multiprecision::denominator(q) == 1;
}

inline double to_double(const Rat& q) {
  return q.convert_to<double>();
}

inline double to_double(const Int& z) {
  return z.convert_to<double>();
}

inline std::string to_string(const Int& z) { return z.str(); }
inline std::string to_string(const Rat& q) {
  if (is_integer(q)) return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

inline std::string to_string(const IVec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += to_string(v[i]);
  }
  return s + ")";
}

inline std::string to_string(const QVec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += to_string(v[i]);
  }
  return s + ")";
}

}  // namespace fltz

#endif
