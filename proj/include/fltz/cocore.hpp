#ifndef FLTZ_COCORE_HPP
#define FLTZ_COCORE_HPP

#include "fltz/cohomology.hpp"
#include "fltz/skeleton.hpp"

namespace fltz {

// Feasibility certificate for Q(D) = {p : m_alpha - 1 < alpha . p < m_alpha}
// (torus units). Feasible iff the tropical section of D = sum -m_alpha
// D_alpha is Hamiltonian isotopic to a cocore.
struct CocoreCertificate {
  IVec m;
  bool feasible = false;
  QVec witness;  // valid when feasible
};

CocoreCertificate is_cocore(const FanPtr& fan, const IVec& m);

struct SignedLeaf {
  int sign;  // +1 / -1
  SupportFunction fn;
};

// Node-by-node record of the generation recursion for one stratum component:
// 2^{|sigma|} signed line bundles whose alternating sum is the class of the
// linking disk, together with the accumulated transverse datum it pushes
// forward.
struct GenerationWitness {
  ConeKey cone;
  std::vector<int> ray_choices;  // chosen ray alpha at each recursion level
  std::vector<SignedLeaf> leaves;
  SupportFunction target;  // element of Supp_sigma whose restriction is the
                           // base cocore function
  GenerationWitness(SupportFunction t) : target(std::move(t)) {}
};

GenerationWitness generation_witness(const FanPtr& fan, const ConeKey& sigma,
                                     const SkeletonComponent& component);
// Convenience: witness for the component of the given ambient representative.
GenerationWitness generation_witness(const FanPtr& fan, const ConeKey& sigma, const QVec& rep);

// sum of sign * [O(F_leaf)] == [O_{sigma>0}(i* target)] in the Euler pairing.
bool verify_generation(KContext& ctx, const GenerationWitness& witness);

// Beilinson-style report for P^n: every stratum component's linking-disk
// class as a signed combination of twists, plus the exceptional collection
// {O(-n), ..., O(0)}.
struct BeilinsonEntry {
  ConeKey cone;
  int component = 0;
  std::vector<std::pair<int, long>> signed_degrees;  // (sign, d) for O(d)
  bool k_identity = false;
  bool degrees_in_range = false;
};

struct BeilinsonReport {
  int n = 0;
  std::vector<BeilinsonEntry> entries;
  ExceptionalReport collection;
  bool passes() const {
    for (const auto& e : entries)
      if (!e.k_identity || !e.degrees_in_range) return false;
    return collection.passes();
  }
};

BeilinsonReport beilinson_witness(int n);

// Degree of O(F) on P^n: the class of O(F) is O(deg).
long projective_degree(const SupportFunction& f);

}  // namespace fltz

#endif
