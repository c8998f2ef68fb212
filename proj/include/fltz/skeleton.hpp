#ifndef FLTZ_SKELETON_HPP
#define FLTZ_SKELETON_HPP

#include "fltz/support.hpp"

namespace fltz {

// Stratum L_sigma = sigma x sigma-perp. Torus coordinates are pairings with
// the basis vectors completing sigma's generators; everything is in units of
// 2 pi, so all skeleton conditions read "integer pairing".
struct SkeletonStratum {
  ConeKey cone;
  int rank = 0;
  IMat perp_basis;   // rows: basis of the saturated lattice sigma-perp in M
  IMat torus_basis;  // rows w_j in N completing sigma's generators to a basis
  int torus_dim = 0;
};

std::vector<SkeletonStratum> strata(const FanPtr& fan);
SkeletonStratum stratum(const FanPtr& fan, const ConeKey& sigma);

// Subtorus constraints on the torus factor: one integral covector per cone
// <sigma, beta> immediately above sigma; the singular locus is the union of
// {c . b in Z}.
struct ToralArrangement {
  int dim = 0;
  IMat covectors;  // sign-normalized, deduplicated
};

ToralArrangement toral_arrangement(const FanPtr& fan, const SkeletonStratum& st);

struct SkeletonComponent {
  int id = 0;
  QVec rep_torus;              // representative in [0,1)^dim, off every subtorus
  QVec rep_ambient;            // the same point as a covector p in M tensor Q
  std::vector<int> signature;  // side (+1/-1) per arrangement plane
};

// Open chambers of the torus minus the constraint subtori, computed exactly:
// cells of the lifted hyperplane arrangement in the unit cube, glued across
// cube faces by translation (union-find). Components are ordered by
// (coordinate sum, lex) of their representative.
class StratumComponents {
 public:
  StratumComponents(const FanPtr& fan, const ConeKey& sigma);

  const SkeletonStratum& stratum() const { return stratum_; }
  const ToralArrangement& arrangement() const { return arrangement_; }
  const std::vector<SkeletonComponent>& components() const { return components_; }

  // Component id of a torus point strictly avoiding every subtorus; -1 when
  // the point lies on the singular locus.
  int locate(const QVec& torus_point) const;

  QVec torus_coordinates(const QVec& ambient_p) const;
  QVec ambient_of_torus(const QVec& torus_point) const;

 private:
  SkeletonStratum stratum_;
  ToralArrangement arrangement_;
  std::vector<SkeletonComponent> components_;

  struct Plane {
    IVec c;
    Int z;
  };
  std::vector<Plane> planes_;
  struct Cell {
    std::vector<int> side;  // per plane: +1 / -1
    QVec rep;
    int group = -1;
  };
  std::vector<Cell> cells_;
};

StratumComponents stratum_components(const FanPtr& fan, const ConeKey& sigma);

struct Classification {
  enum Kind { interior, on_singular_locus, not_in_skeleton } kind;
  ConeKey cone;        // carrier cone of u (valid unless not_in_skeleton by support)
  int component = -1;  // valid when interior
};

// The smallest sigma with u in sigma and p integral on sigma, classified as
// an interior stratum point, a singular-locus point, or not in the skeleton.
Classification classify_point(const FanPtr& fan, const QVec& u, const QVec& p);

// m_alpha = ceil(alpha . p) per ray, for p interior in L_0. The associated
// divisor is sum of -m_alpha D_alpha, i.e. the support function with values
// m_alpha.
IVec cocore_divisor_of_point(const FanPtr& fan, const QVec& p);

// Test-oracle: component count by union-find over a 1/q grid with torus
// wraparound. Lives here so the CLI can expose it, but the chamber
// enumeration above never uses it.
int grid_component_oracle(const FanPtr& fan, const ConeKey& sigma, int q);

}  // namespace fltz

#endif
