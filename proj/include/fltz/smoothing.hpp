#ifndef FLTZ_SMOOTHING_HPP
#define FLTZ_SMOOTHING_HPP

#include <array>
#include <random>

#include "fltz/support.hpp"

namespace fltz {

using DVec = std::vector<double>;

// Quadrature model of the standard bump exp(-1/(1-|x|^2)) on the unit ball:
// symmetric nodes, weights normalized so the scheme integrates the kernel
// to exactly 1. Midpoint tensor grid for dim <= 3, antithetic Monte Carlo
// above.
struct Mollifier {
  int dim = 0;
  std::vector<DVec> nodes;
  DVec weights;  // includes the kernel factor; sums to 1

  static Mollifier make(int dim, unsigned seed = 7);
};

// Float shadow of a support function: per-cone linear pieces plus an exact
// piece locator turned numeric.
class PLShadow {
 public:
  explicit PLShadow(const SupportFunction& f);

  int dim() const { return dim_; }
  double value(const DVec& u) const;
  DVec gradient(const DVec& u) const;  // piece covector at u

  double max_piece_norm() const;  // max over maximal cones of |grad|
  double max_ray_norm() const;

 private:
  int dim_;
  std::vector<DVec> pieces_;
  std::vector<std::vector<DVec>> cone_rows_;  // membership functionals per cone
  std::vector<DVec> ray_dirs_;
  int locate(const DVec& u) const;
};

// C_D = 2 pi max |alpha| max |grad F_D|, from exact data.
double gradient_constant(const SupportFunction& f);

// Conical smoothing G(u) = 2 pi integral of F(u - eps r x) eta(x) dx with
// r = |u|, interpolated through a quadratic cap inside the ball of radius
// r_v.
class ConicalSmoother {
 public:
  ConicalSmoother(const SupportFunction& f, double eps, double r_v = 1.0, unsigned seed = 7);

  double eps() const { return eps_; }
  double constant() const { return c_d_; }
  const PLShadow& shadow() const { return shadow_; }

  double conical_value(const DVec& u) const;  // G, for u != 0
  DVec conical_gradient(const DVec& u) const;
  double value(const DVec& u) const;  // interpolated everywhere

 private:
  PLShadow shadow_;
  double eps_;
  double r_v_;
  double c_d_;
  Mollifier moll_;
};

struct Sample {
  DVec u;
  double t = 0;
  double measured = 0;
  double bound = 0;
  bool pass = true;
};

struct SampleReport {
  std::string check;
  unsigned seed = 7;
  std::vector<Sample> samples;
  double worst_margin = 0;  // max of measured - bound
  bool all_pass = true;

  void finalize();
};

// |grad G . alpha + 2 pi n_alpha| <= eps C_D (+ quadrature slack) on samples
// in U_alpha outside V. The divisor is D = sum n_alpha D_alpha.
SampleReport check_gradient_bound(const FanPtr& fan, const IVec& n_coeffs, double eps,
                                  int samples_per_ray, unsigned seed = 7, bool parallel = true);

// |G(lambda u) - lambda G(u)| < 1e-6 lambda |G(u)| + 1e-9.
SampleReport check_homogeneity(const FanPtr& fan, const IVec& n_coeffs, double eps, int samples,
                               unsigned seed = 7);

// grad G vs central finite differences, relative error < 1e-4.
SampleReport check_gradient_fd(const FanPtr& fan, const IVec& n_coeffs, double eps, int samples,
                               unsigned seed = 7, bool parallel = true);

// Combined section gradient g = grad H^{d/4}_D - (d/2pi) grad H^{d/4}_K:
// |g . alpha + 2 pi n_alpha + delta| <= delta/2 + tol in U_alpha.
SampleReport check_angle_bound(const FanPtr& fan, const IVec& n_coeffs, double delta,
                               int samples_per_ray, unsigned seed = 7);

// Positivity of the wrapping derivative lambda(d_t L_t) under delta(t) =
// delta_0 e^{-t}; requires 1 - eps_K(0) >= 1/(4 pi).
SampleReport check_cofinal_positivity(const FanPtr& fan, const IVec& n_coeffs, double delta0,
                                      int samples, unsigned seed = 7);

// Slices of the variable-radius smoothing of F_alpha along q + t alpha:
// finite differences nonnegative, and d H = 0 exactly where H = 0.
struct SliceReport {
  DVec t_grid;
  DVec values;
  DVec derivatives;  // central differences, size t_grid.size() - 2
  double min_derivative = 0;
  bool monotone = true;
  bool zero_locus_agrees = true;
};

SliceReport check_slice_monotonicity(const FanPtr& fan, int alpha_ray, const DVec& q, double t0,
                                     double t1, int steps, double eps = 0.05);
// Default slice base point: a boundary ray of str(alpha), scaled.
DVec default_slice_base(const FanPtr& fan, int alpha_ray);

// u in U_alpha: u/|u| in st(alpha) with distance > eps to every cone not
// containing alpha.
bool star_cover_membership(const FanPtr& fan, double eps, const DVec& u, int alpha_ray);
double distance_to_cone(const FanPtr& fan, const ConeKey& cone, const DVec& u);

struct DivisionReport {
  double eps = 0;
  bool covers = true;            // property 1 on the sample set
  bool contained = true;         // property 3 on the sample set
  double largest_working_eps = 0;
  int uncovered_samples = 0;
};

DivisionReport check_division(const FanPtr& fan, double eps, int samples = 2000,
                              unsigned seed = 7);

}  // namespace fltz

#endif
