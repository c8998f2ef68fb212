#include "fltz/cocore.hpp"

#include <algorithm>

#include "fltz/fixtures.hpp"

namespace fltz {

CocoreCertificate is_cocore(const FanPtr& fan, const IVec& m) {
  if ((int)m.size() != fan->num_rays()) throw Error("is_cocore: one m per ray required");
  CocoreCertificate cert;
  cert.m = m;
  std::vector<StrictInterval> cs;
  for (int i = 0; i < fan->num_rays(); ++i)
    cs.push_back({fan->ray(i), Rat(m[i] - 1), Rat(m[i])});
  auto p = strict_lp_feasible(cs, fan->rank());
  cert.feasible = p.has_value();
  if (p) cert.witness = *p;
  return cert;
}

namespace {

// Ambient covector a* with <a*, alpha> = 1, for transporting p to the
// quotient along alpha.
IVec dual_covector(const FanPtr& fan, int alpha_ray) {
  auto sol = solve_integer({fan->ray(alpha_ray)}, {Int(1)});
  if (!sol) throw Error("dual_covector: ray not primitive");
  return *sol;
}

QVec project_covector(const QuotientMap& q, const QVec& p_perp) {
  return q.covector(p_perp);
}

// p with p.alpha in Z translated into alpha-perp by an integral character.
QVec flatten_along(const FanPtr& fan, int alpha_ray, const QVec& p) {
  Rat pa = dot(p, fan->ray(alpha_ray));
  if (!is_integer(pa)) throw ComponentMismatch("representative not integral on alpha");
  IVec astar = dual_covector(fan, alpha_ray);
  QVec out(p.size());
  for (size_t i = 0; i < p.size(); ++i) out[i] = p[i] - pa * Rat(astar[i]);
  return out;
}

struct RecursionResult {
  std::vector<SignedLeaf> leaves;
  SupportFunction target;
  std::vector<int> ray_choices;
  RecursionResult(SupportFunction t) : target(std::move(t)) {}
};

RecursionResult witness_recurse(const FanPtr& fan, const ConeKey& sigma, const QVec& p) {
  if (sigma.empty()) {
    IVec m = cocore_divisor_of_point(fan, p);
    RecursionResult res(SupportFunction(fan, m));
    res.leaves.push_back({+1, res.target});
    return res;
  }
  int alpha = sigma.front();  // lowest-index ray of sigma
  StarQuotient sq = star_quotient(fan, {alpha});

  // image cone in the quotient fan
  ConeKey qsigma;
  for (int i : sigma) {
    if (i == alpha) continue;
    IVec img = sq.map.apply(fan->ray(i));
    IVec prim = primitivize(img);
    int idx = sq.fan->ray_index(prim);
    if (idx < 0) throw ComponentMismatch("cone does not descend to the quotient fan");
    qsigma.push_back(idx);
  }
  std::sort(qsigma.begin(), qsigma.end());
  sq.fan->require_cone(qsigma);

  // transport the representative; dither within its chamber if the image
  // lands on the quotient singular locus
  StratumComponents source(fan, sigma);
  QVec source_b = source.torus_coordinates(p);
  int source_id = source.locate(source_b);
  if (source_id < 0) throw ComponentMismatch("representative lies on the singular locus");

  StratumComponents quotient_sc(sq.fan, qsigma);
  QVec q = p;
  QVec qp;
  bool clean = false;
  for (int attempt = 0; attempt < 64 && !clean; ++attempt) {
    QVec flat = flatten_along(fan, alpha, q);
    qp = project_covector(sq.map, flat);
    if (quotient_sc.locate(quotient_sc.torus_coordinates(qp)) >= 0) {
      clean = true;
      break;
    }
    // deterministic rational dither in the stratum torus, denominators doubling
    Rat step = Rat(1, Int(1) << (attempt + 3));
    QVec b = source_b;
    for (size_t j = 0; j < b.size(); ++j)
      b[j] += step / Rat(1 + (int)j + attempt % 3);
    QVec cand = source.ambient_of_torus(b);
    if (source.locate(source.torus_coordinates(cand)) == source_id) q = cand;
  }
  if (!clean) throw ComponentMismatch("no clean representative found for the quotient");

  RecursionResult sub = witness_recurse(sq.fan, qsigma, qp);

  SupportFunction f_alpha = basis_function(fan, alpha);
  RecursionResult res(lift_from_orbit(sub.target, sq, fan, alpha));
  res.ray_choices.push_back(alpha);
  for (int c : sub.ray_choices) res.ray_choices.push_back(c);
  for (const auto& leaf : sub.leaves) {
    SupportFunction lifted = lift_from_orbit(leaf.fn, sq, fan, alpha);
    res.leaves.push_back({leaf.sign, lifted});
    res.leaves.push_back({-leaf.sign, lifted + f_alpha});
  }
  return res;
}

}  // namespace

GenerationWitness generation_witness(const FanPtr& fan, const ConeKey& sigma, const QVec& rep) {
  fan->require_cone(sigma);
  RecursionResult res = witness_recurse(fan, sigma, rep);
  GenerationWitness w(std::move(res.target));
  w.cone = sigma;
  w.ray_choices = std::move(res.ray_choices);
  w.leaves = std::move(res.leaves);
  return w;
}

GenerationWitness generation_witness(const FanPtr& fan, const ConeKey& sigma,
                                     const SkeletonComponent& component) {
  return generation_witness(fan, sigma, component.rep_ambient);
}

bool verify_generation(KContext& ctx, const GenerationWitness& witness) {
  std::vector<Int> sum;
  for (const auto& leaf : witness.leaves) {
    auto k = ctx.k_class(leaf.fn);
    if (sum.empty()) sum.assign(k.size(), 0);
    for (size_t j = 0; j < k.size(); ++j) sum[j] += Int(leaf.sign) * k[j];
  }
  auto target = ctx.k_class_orbit_pushforward(witness.cone, witness.target);
  return sum == target;
}

long projective_degree(const SupportFunction& f) {
  Int d = 0;
  for (const Int& v : f.values()) d -= v;
  return d.convert_to<long>();
}

BeilinsonReport beilinson_witness(int n) {
  if (n < 1) throw Error("beilinson_witness: n >= 1");
  FanPtr fan = projective_space_fan(n);
  BeilinsonReport rep;
  rep.n = n;
  KContext ctx(fan);
  for (const auto& sigma : fan->cones()) {
    StratumComponents sc(fan, sigma);
    for (const auto& comp : sc.components()) {
      GenerationWitness w = generation_witness(fan, sigma, comp);
      BeilinsonEntry entry;
      entry.cone = sigma;
      entry.component = comp.id;
      bool in_range = true;
      for (const auto& leaf : w.leaves) {
        long d = projective_degree(leaf.fn);
        entry.signed_degrees.push_back({leaf.sign, d});
        if (d < -n || d > 0) in_range = false;
        if (sigma.empty() && d > -1) in_range = false;  // cocores are O(-n-1+i)
      }
      entry.degrees_in_range = in_range;
      entry.k_identity = verify_generation(ctx, w);
      rep.entries.push_back(std::move(entry));
    }
  }
  std::vector<SupportFunction> collection;
  for (int d = -n; d <= 0; ++d) {
    IVec values(fan->num_rays(), 0);
    values[fan->num_rays() - 1] = -d;  // O(d) as a = (0,...,0,d)
    collection.push_back(SupportFunction(fan, values));
  }
  rep.collection = exceptional_collection_check(ctx, collection);
  return rep;
}

}  // namespace fltz
