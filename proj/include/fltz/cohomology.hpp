#ifndef FLTZ_COHOMOLOGY_HPP
#define FLTZ_COHOMOLOGY_HPP

#include <map>

#include "fltz/support.hpp"

namespace fltz {

struct CohomologyTable {
  std::vector<long> h;                       // h[0..n]
  std::map<int, std::vector<IVec>> weights;  // degree -> contributing weights

  long euler() const {
    long chi = 0;
    for (size_t p = 0; p < h.size(); ++p) chi += (p % 2 ? -1 : 1) * h[p];
    return chi;
  }
};

// Sheaf cohomology of O(F) on a complete smooth fan by the graded-piece
// sweep: for each weight m, h^p accumulates the rank of reduced homology in
// degree p-1 of the complex on the rays with <m, ray> < F(ray). The sweep
// box starts from the section polytopes of F and of F_K - F (reflected),
// inflated by 2, and expands until two consecutive shells contribute nothing.
CohomologyTable line_bundle_cohomology(const SupportFunction& f, bool parallel = true,
                                       bool record_weights = false);

long euler_characteristic(const SupportFunction& f);
// rank Ext^p(O(F1), O(F2)) = h^p(O(F2 - F1))
long hom_rank(const SupportFunction& f1, const SupportFunction& f2, int p);

// Reduced-homology ranks over Q for every subset of rays, precomputed once
// per fan. ranks[mask][p] = rank of reduced H_{p-1} of the complex whose
// faces are the subsets of mask jointly contained in a cone.
class NegativeComplexTable {
 public:
  explicit NegativeComplexTable(const FanPtr& fan);
  const std::vector<int>& ranks(unsigned mask) const { return ranks_[mask]; }
  int degrees() const { return degrees_; }

 private:
  std::vector<std::vector<int>> ranks_;
  int degrees_;
};

// Euler pairings against a spanning family of line bundles; memoizes the
// cohomology sweeps.
class KContext {
 public:
  explicit KContext(FanPtr fan);

  const FanPtr& fan() const { return fan_; }
  const std::vector<SupportFunction>& family() const { return family_; }
  int family_gram_rank() const { return gram_rank_; }

  long chi(const IVec& values);  // chi(O(F)) by value vector, memoized

  std::vector<Int> k_class(const SupportFunction& f);
  // Class of the pushforward O_{sigma>0}(i* F) for F transverse to sigma,
  // paired via the projection formula.
  std::vector<Int> k_class_orbit_pushforward(const ConeKey& sigma, const SupportFunction& f);

  bool verify_exact_triangle(const SupportFunction& f_transverse, int alpha_ray);

 private:
  FanPtr fan_;
  std::vector<SupportFunction> family_;
  int gram_rank_ = 0;
  std::map<IVec, long> chi_cache_;
  std::map<ConeKey, StarQuotient> quotient_cache_;
  const StarQuotient& quotient(const ConeKey& sigma);
};

struct ExceptionalReport {
  bool exceptional = true;      // one-dimensional endomorphisms, no self-Ext
  bool semiorthogonal = true;   // no backward morphisms
  int k_rank = 0;               // rank of the span of the K-classes
  int expected_rank = 0;        // number of maximal cones
  std::vector<std::string> violations;

  bool passes() const {
    return exceptional && semiorthogonal && k_rank == expected_rank;
  }
};

ExceptionalReport exceptional_collection_check(KContext& ctx,
                                               const std::vector<SupportFunction>& objects);

// #max(Bl_alpha(Sigma)) == #max(Sigma) + (n-k-1) * #max(str(tau)/tau) with k
// the orbit-closure dimension of tau.
bool orlov_rank_check(const FanPtr& fan, const ConeKey& tau);

}  // namespace fltz

#endif
