#ifndef FLTZ_FAN_HPP
#define FLTZ_FAN_HPP

#include <memory>
#include <optional>
#include <set>

#include "fltz/lattice.hpp"
#include "fltz/lp.hpp"

namespace fltz {

class Fan;
using FanPtr = std::shared_ptr<const Fan>;

// Cones are ray-index sets, kept sorted. The zero cone is the empty set.
using ConeKey = std::vector<int>;

// A simplicial rational fan. Immutable after build; all derived data
// (face lattice, halfspace descriptions) is computed exactly.
class Fan {
 public:
  static FanPtr build(int rank, IMat rays, std::vector<ConeKey> max_cones);

  int rank() const { return rank_; }
  const IMat& rays() const { return rays_; }
  const IVec& ray(int i) const { return rays_[i]; }
  int num_rays() const { return (int)rays_.size(); }
  const std::vector<ConeKey>& max_cones() const { return max_cones_; }
  // Face lattice: every cone of the fan, ordered by dimension then
  // lexicographically. Includes the zero cone whenever the fan is nonempty.
  const std::vector<ConeKey>& cones() const { return cones_; }
  bool rays_were_reprimitivized() const { return reprimitivized_; }

  bool has_cone(const ConeKey& c) const { return cone_set_.count(c) > 0; }
  void require_cone(const ConeKey& c) const {
    if (!has_cone(c)) throw ConeNotInFan();
  }
  bool empty() const { return cones_.empty(); }

  bool is_smooth() const;
  bool is_complete() const;

  // Exact membership and simplicial coordinates.
  std::optional<QVec> cone_coefficients(const ConeKey& c, const QVec& point) const;
  bool cone_contains(const ConeKey& c, const QVec& point) const;
  // The smallest cone whose relative interior contains the point, if any.
  std::optional<ConeKey> carrier(const QVec& point) const;
  bool in_support(const QVec& point) const { return carrier(point).has_value(); }

  // Halfspace description of a cone: x in cone iff ineq . x >= 0 for every
  // inequality row and eq . x = 0 for every equality row.
  struct Halfspaces {
    IMat inequalities;
    IMat equalities;
  };
  const Halfspaces& halfspaces(const ConeKey& c) const;

  // Index of a ray given its primitive vector, or -1.
  int ray_index(const IVec& v) const;

  // Canonical structural key (rays sorted, cones remapped) for equality
  // of fans that differ only in ray order.
  std::string canonical_key() const;

 private:
  Fan() = default;

  int rank_ = 0;
  IMat rays_;
  std::vector<ConeKey> max_cones_;
  std::vector<ConeKey> cones_;
  std::set<ConeKey> cone_set_;
  bool reprimitivized_ = false;

  mutable std::vector<std::optional<Halfspaces>> halfspace_cache_;  // per cone index
  std::vector<ConeKey> cone_index_;                                 // cones_ sorted copy for lookup
  int cone_pos(const ConeKey& c) const;
};

struct FanMap {
  IMat matrix;  // target_rank x source_rank
  FanPtr source;
  FanPtr target;
};

bool check_fan_map(const IMat& f, const Fan& source, const Fan& target);

// Subfan of cones containing sigma, as a fan in the same lattice.
// ray_of_parent maps the new ray indices to the parent's.
struct SubfanResult {
  FanPtr fan;
  std::vector<int> ray_of_parent;
};

SubfanResult star(const FanPtr& fan, const ConeKey& sigma);

// Orbit closure fan str(sigma)/sigma together with the lattice projection.
// ray_origin[i] is a parent ray mapping onto quotient ray i, and ray_scale[i]
// the primitivization factor (image = scale * primitive).
struct StarQuotient {
  FanPtr fan;
  QuotientMap map;
  std::vector<int> ray_origin;
  std::vector<Int> ray_scale;
};

StarQuotient star_quotient(const FanPtr& fan, const ConeKey& sigma);

// alpha-subdivision: keep cones not containing alpha, add <sigma', alpha> for
// sigma' not containing alpha such that the join lies in a cone of the fan.
// If alpha is already a ray, the fan is returned unchanged.
FanPtr star_subdivision(const FanPtr& fan, const IVec& alpha);

// Partition of the cones of Bl_alpha(Sigma) at tau (alpha = sum of tau's
// primitive generators): cones without alpha, lifted cones sigma_{alpha_i,
// alpha}, and the remainder T.
struct BlowupPartition {
  FanPtr blowup;
  int alpha_ray = -1;  // index of alpha in the blowup fan
  std::vector<ConeKey> kept;
  std::vector<ConeKey> lifted;
  std::vector<ConeKey> t_cones;
};

BlowupPartition blowup_partition(const FanPtr& fan, const ConeKey& tau);

// |sigma/alpha| - |p(sigma/alpha)| for a cone of the blowup containing alpha,
// computed through the quotient projections.
int fiber_codimension(const BlowupPartition& bp, const FanPtr& base, const ConeKey& tau,
                      const ConeKey& cone_in_blowup);

// Subfan {tau : tau does not contain sigma} plus the removed cones.
struct StopRemoval {
  FanPtr fan;                    // may be empty (sigma = 0)
  std::vector<int> ray_of_parent;
  std::vector<ConeKey> removed;  // cones of str(sigma), parent indices
};

StopRemoval stop_removal_fan(const FanPtr& fan, const ConeKey& sigma);

FanPtr point_fan();

}  // namespace fltz

#endif
