#include "fltz/smoothing.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fltz {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double norm(const DVec& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double ddot(const DVec& a, const DVec& b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double bump(const DVec& x) {
  double r2 = 0;
  for (double v : x) r2 += v * v;
  if (r2 >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - r2));
}

DVec to_dvec(const IVec& v) {
  DVec d(v.size());
  for (size_t i = 0; i < v.size(); ++i) d[i] = to_double(v[i]);
  return d;
}

}  // namespace

Mollifier Mollifier::make(int dim, unsigned seed) {
  Mollifier m;
  m.dim = dim;
  if (dim <= 3) {
    const int k = 15;
    const double h = 2.0 / k;
    std::vector<int> idx(dim, 0);
    while (true) {
      DVec x(dim);
      for (int j = 0; j < dim; ++j) x[j] = -1.0 + h * (idx[j] + 0.5);
      double w = bump(x);
      if (w > 0) {
        m.nodes.push_back(x);
        m.weights.push_back(w);
      }
      int j = 0;
      while (j < dim) {
        if (++idx[j] < k) break;
        idx[j] = 0;
        ++j;
      }
      if (j == dim) break;
    }
  } else {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    const int pairs = 100000;
    for (int i = 0; i < pairs;) {
      DVec x(dim);
      for (int j = 0; j < dim; ++j) x[j] = uni(rng);
      double w = bump(x);
      if (w <= 0) continue;
      DVec nx(dim);
      for (int j = 0; j < dim; ++j) nx[j] = -x[j];
      m.nodes.push_back(x);
      m.weights.push_back(w);
      m.nodes.push_back(nx);  // antithetic pair keeps the scheme symmetric
      m.weights.push_back(w);
      ++i;
    }
  }
  double total = 0;
  for (double w : m.weights) total += w;
  for (double& w : m.weights) w /= total;
  return m;
}

PLShadow::PLShadow(const SupportFunction& f) : dim_(f.fan()->rank()) {
  const Fan& fan = *f.fan();
  for (size_t c = 0; c < fan.max_cones().size(); ++c) {
    pieces_.push_back(to_dvec(f.piece((int)c)));
    const auto& hs = fan.halfspaces(fan.max_cones()[c]);
    std::vector<DVec> rows;
    for (const auto& w : hs.inequalities) rows.push_back(to_dvec(w));
    for (const auto& w : hs.equalities) {
      rows.push_back(to_dvec(w));  // both signs: equality as two inequalities
      DVec neg = rows.back();
      for (double& x : neg) x = -x;
      rows.push_back(std::move(neg));
    }
    cone_rows_.push_back(std::move(rows));
  }
  for (int i = 0; i < fan.num_rays(); ++i) ray_dirs_.push_back(to_dvec(fan.ray(i)));
}

int PLShadow::locate(const DVec& u) const {
  int best = 0;
  double best_min = -1e300;
  for (size_t c = 0; c < cone_rows_.size(); ++c) {
    double m = 1e300;
    for (const auto& row : cone_rows_[c]) m = std::min(m, ddot(row, u));
    if (m > best_min) {
      best_min = m;
      best = (int)c;
    }
  }
  return best;
}

double PLShadow::value(const DVec& u) const { return ddot(pieces_[locate(u)], u); }

DVec PLShadow::gradient(const DVec& u) const { return pieces_[locate(u)]; }

double PLShadow::max_piece_norm() const {
  double m = 0;
  for (const auto& p : pieces_) m = std::max(m, norm(p));
  return m;
}

double PLShadow::max_ray_norm() const {
  double m = 0;
  for (const auto& r : ray_dirs_) m = std::max(m, norm(r));
  return m;
}

double gradient_constant(const SupportFunction& f) {
  // exact comparison of squared norms, converted at the end
  Int ray2 = 0;
  for (const auto& r : f.fan()->rays()) ray2 = std::max(ray2, dot(r, r));
  Int piece2 = 0;
  for (const auto& p : f.pieces()) piece2 = std::max(piece2, dot(p, p));
  return kTwoPi * std::sqrt(to_double(ray2)) * std::sqrt(to_double(piece2));
}

ConicalSmoother::ConicalSmoother(const SupportFunction& f, double eps, double r_v, unsigned seed)
    : shadow_(f), eps_(eps), r_v_(r_v), c_d_(gradient_constant(f)),
      moll_(Mollifier::make(f.fan()->rank(), seed)) {
  if (!f.fan()->is_complete()) throw IncompleteFan("conical smoothing needs a complete fan");
}

double ConicalSmoother::conical_value(const DVec& u) const {
  double r = norm(u);
  if (r < 1e-12) throw QuadratureUnderflow();
  double acc = 0;
  DVec y(u.size());
  for (size_t k = 0; k < moll_.nodes.size(); ++k) {
    for (size_t j = 0; j < u.size(); ++j) y[j] = u[j] - eps_ * r * moll_.nodes[k][j];
    acc += moll_.weights[k] * shadow_.value(y);
  }
  return kTwoPi * acc;
}

DVec ConicalSmoother::conical_gradient(const DVec& u) const {
  double r = norm(u);
  if (r < 1e-12) throw QuadratureUnderflow();
  DVec g(u.size(), 0.0);
  DVec y(u.size());
  for (size_t k = 0; k < moll_.nodes.size(); ++k) {
    for (size_t j = 0; j < u.size(); ++j) y[j] = u[j] - eps_ * r * moll_.nodes[k][j];
    DVec df = shadow_.gradient(y);
    double proj = eps_ * ddot(df, moll_.nodes[k]) / r;
    for (size_t j = 0; j < u.size(); ++j)
      g[j] += moll_.weights[k] * (df[j] - proj * u[j]);
  }
  for (double& x : g) x *= kTwoPi;
  return g;
}

double ConicalSmoother::value(const DVec& u) const {
  double r = norm(u);
  double s = r / r_v_;
  if (s >= 1.0) return conical_value(u);
  if (r < 1e-12) return 0.0;
  double w = s * s * s * (10.0 + s * (-15.0 + 6.0 * s));  // quintic smoothstep
  double cap = r * r / r_v_;  // quadratic cap, matches scale at the rim
  return (1.0 - w) * cap + w * conical_value(u);
}

void SampleReport::finalize() {
  all_pass = true;
  worst_margin = -1e300;
  for (const auto& s : samples) {
    if (!s.pass) all_pass = false;
    worst_margin = std::max(worst_margin, s.measured - s.bound);
  }
  if (samples.empty()) worst_margin = 0;
}

namespace {

// deterministic unit direction stream
DVec random_direction(std::mt19937& rng, int dim) {
  std::normal_distribution<double> g(0.0, 1.0);
  while (true) {
    DVec u(dim);
    for (int j = 0; j < dim; ++j) u[j] = g(rng);
    double r = norm(u);
    if (r > 1e-6) {
      for (double& x : u) x /= r;
      return u;
    }
  }
}

// sample points of U_alpha outside V, found by rejection
std::vector<DVec> sample_star_cover(const FanPtr& fan, double eps, int alpha, int count,
                                    std::mt19937& rng) {
  std::vector<DVec> out;
  std::uniform_real_distribution<double> radius(2.0, 10.0);
  int guard = 0;
  while ((int)out.size() < count && guard < 100000) {
    ++guard;
    DVec dir = random_direction(rng, fan->rank());
    if (!star_cover_membership(fan, eps, dir, alpha)) continue;
    double r = radius(rng);
    DVec u(dir.size());
    for (size_t j = 0; j < dir.size(); ++j) u[j] = r * dir[j];
    out.push_back(u);
  }
  if ((int)out.size() < count)
    throw Error("sample_star_cover: cover region too small for sampling at this eps");
  return out;
}

SupportFunction divisor_support(const FanPtr& fan, const IVec& n_coeffs) {
  if ((int)n_coeffs.size() != fan->num_rays())
    throw Error("divisor: one coefficient per ray required");
  return SupportFunction(fan, neg(n_coeffs));  // F(alpha) = -n_alpha
}

}  // namespace

SampleReport check_gradient_bound(const FanPtr& fan, const IVec& n_coeffs, double eps,
                                  int samples_per_ray, unsigned seed, bool parallel) {
  SupportFunction f = divisor_support(fan, n_coeffs);
  ConicalSmoother smoother(f, eps, 1.0, seed);
  SampleReport rep;
  rep.check = "gradient_bound";
  rep.seed = seed;
  std::mt19937 rng(seed);
  struct Job {
    DVec u;
    int ray;
  };
  std::vector<Job> jobs;
  for (int a = 0; a < fan->num_rays(); ++a)
    for (auto& u : sample_star_cover(fan, eps, a, samples_per_ray, rng))
      jobs.push_back({u, a});
  rep.samples.resize(jobs.size());
  double bound = eps * smoother.constant() + 1e-3 * smoother.constant();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (long i = 0; i < (long)jobs.size(); ++i) {
    const Job& job = jobs[i];
    DVec g = smoother.conical_gradient(job.u);
    DVec alpha = to_dvec(fan->ray(job.ray));
    double n_alpha = to_double(n_coeffs[job.ray]);
    double measured = std::fabs(ddot(g, alpha) + kTwoPi * n_alpha);
    rep.samples[i] = {job.u, 0.0, measured, bound, measured <= bound};
  }
  (void)parallel;
  rep.finalize();
  return rep;
}

SampleReport check_homogeneity(const FanPtr& fan, const IVec& n_coeffs, double eps, int samples,
                               unsigned seed) {
  SupportFunction f = divisor_support(fan, n_coeffs);
  ConicalSmoother smoother(f, eps, 1.0, seed);
  SampleReport rep;
  rep.check = "homogeneity";
  rep.seed = seed;
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> radius(2.0, 5.0);
  std::uniform_real_distribution<double> scale(1.01, 2.0);
  for (int i = 0; i < samples; ++i) {
    DVec dir = random_direction(rng, fan->rank());
    double r = radius(rng);
    double lam = scale(rng);
    DVec u(dir.size()), lu(dir.size());
    for (size_t j = 0; j < dir.size(); ++j) {
      u[j] = r * dir[j];
      lu[j] = lam * u[j];
    }
    double gu = smoother.conical_value(u);
    double glu = smoother.conical_value(lu);
    double measured = std::fabs(glu - lam * gu);
    double bound = 1e-6 * lam * std::fabs(gu) + 1e-9;
    rep.samples.push_back({u, lam, measured, bound, measured <= bound});
  }
  rep.finalize();
  return rep;
}

SampleReport check_gradient_fd(const FanPtr& fan, const IVec& n_coeffs, double eps, int samples,
                               unsigned seed, bool parallel) {
  SupportFunction f = divisor_support(fan, n_coeffs);
  ConicalSmoother smoother(f, eps, 1.0, seed);
  SampleReport rep;
  rep.check = "gradient_fd";
  rep.seed = seed;
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> radius(2.0, 5.0);
  std::vector<DVec> pts;
  for (int i = 0; i < samples; ++i) {
    DVec dir = random_direction(rng, fan->rank());
    double r = radius(rng);
    for (double& x : dir) x *= r;
    pts.push_back(dir);
  }
  rep.samples.resize(pts.size());
  const double h = 1e-5;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (long i = 0; i < (long)pts.size(); ++i) {
    const DVec& u = pts[i];
    DVec g = smoother.conical_gradient(u);
    DVec fd(u.size());
    for (size_t j = 0; j < u.size(); ++j) {
      DVec up = u, dn = u;
      up[j] += h;
      dn[j] -= h;
      fd[j] = (smoother.conical_value(up) - smoother.conical_value(dn)) / (2 * h);
    }
    double diff = 0, scale = std::max(norm(g), 1e-12);
    for (size_t j = 0; j < u.size(); ++j) diff += (g[j] - fd[j]) * (g[j] - fd[j]);
    double measured = std::sqrt(diff) / scale;
    rep.samples[i] = {u, 0.0, measured, 1e-4, measured <= 1e-4};
  }
  (void)parallel;
  rep.finalize();
  return rep;
}

SampleReport check_angle_bound(const FanPtr& fan, const IVec& n_coeffs, double delta,
                               int samples_per_ray, unsigned seed) {
  if (delta <= 0) throw DeltaTooSmall();
  SupportFunction f_d = divisor_support(fan, n_coeffs);
  SupportFunction f_k = canonical_function(fan);  // K = sum of -D_alpha
  double c_d = gradient_constant(f_d);
  double c_k = gradient_constant(f_k);
  double eps_d = c_d > 0 ? (delta / 4) / c_d : 0.01;
  double eps_k = (delta / 4) / c_k;
  ConicalSmoother sm_d(f_d, eps_d > 0 ? eps_d : 1e-3, 1.0, seed);
  ConicalSmoother sm_k(f_k, eps_k, 1.0, seed);
  double cover_eps = std::min(eps_d > 0 ? eps_d : eps_k, eps_k);

  SampleReport rep;
  rep.check = "angle_bound";
  rep.seed = seed;
  std::mt19937 rng(seed);
  for (int a = 0; a < fan->num_rays(); ++a) {
    auto pts = sample_star_cover(fan, cover_eps, a, samples_per_ray, rng);
    DVec alpha = to_dvec(fan->ray(a));
    double n_alpha = to_double(n_coeffs[a]);
    for (const auto& u : pts) {
      DVec gd = sm_d.conical_gradient(u);
      DVec gk = sm_k.conical_gradient(u);
      double g_dot_alpha = ddot(gd, alpha) - (delta / kTwoPi) * ddot(gk, alpha);
      double measured = std::fabs(g_dot_alpha + kTwoPi * n_alpha + delta);
      double bound = delta / 2 + 1e-3 * delta;
      rep.samples.push_back({u, 0.0, measured, bound, measured <= bound});
    }
  }
  rep.finalize();
  return rep;
}

SampleReport check_cofinal_positivity(const FanPtr& fan, const IVec& n_coeffs, double delta0,
                                      int samples, unsigned seed) {
  SupportFunction f_d = divisor_support(fan, n_coeffs);
  SupportFunction f_k = canonical_function(fan);
  double c_d = gradient_constant(f_d);
  double c_k = gradient_constant(f_k);
  double eps_k0 = delta0 / (4 * c_k);
  if (1.0 - eps_k0 < 1.0 / (4.0 * M_PI)) throw ConstraintViolated();

  PLShadow sh_d(f_d), sh_k(f_k);
  Mollifier moll = Mollifier::make(fan->rank(), seed);
  double max_ray = sh_k.max_ray_norm();
  const double big_r = 10.0;

  SampleReport rep;
  rep.check = "cofinal_positivity";
  rep.seed = seed;
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> tdist(0.0, 3.0);
  for (int i = 0; i < samples; ++i) {
    DVec dir = random_direction(rng, fan->rank());
    double t = tdist(rng);
    double delta = delta0 * std::exp(-t);
    double minus_dprime = delta;  // -delta'(t) for delta(t) = delta0 e^{-t}
    double eps_kt = delta / (4 * c_k);
    double eps_dt = c_d > 0 ? delta / (4 * c_d) : 0.0;
    DVec u(dir.size());
    for (size_t j = 0; j < dir.size(); ++j) u[j] = big_r * dir[j];

    // bracket: int F_K(u/R - x) eta_{eps_K} + (2pi/4C_D) int grad F_D . x eta
    //          - (delta/4C_K) int grad F_K . x eta
    double term1 = 0, term2 = 0, term3 = 0;
    DVec y(u.size());
    for (size_t k = 0; k < moll.nodes.size(); ++k) {
      for (size_t j = 0; j < u.size(); ++j) y[j] = dir[j] - eps_kt * moll.nodes[k][j];
      term1 += moll.weights[k] * sh_k.value(y);
      if (c_d > 0) {
        for (size_t j = 0; j < u.size(); ++j) y[j] = u[j] - big_r * eps_dt * moll.nodes[k][j];
        term2 += moll.weights[k] * ddot(sh_d.gradient(y), moll.nodes[k]);
      }
      for (size_t j = 0; j < u.size(); ++j) y[j] = u[j] - big_r * eps_kt * moll.nodes[k][j];
      term3 += moll.weights[k] * ddot(sh_k.gradient(y), moll.nodes[k]);
    }
    double bracket = term1;
    if (c_d > 0) bracket += (kTwoPi / (4 * c_d)) * term2;
    bracket -= (delta / (4 * c_k)) * term3;
    double lambda = minus_dprime * big_r * bracket;
    // analytic floor from the proof, with a quadrature safety factor of 1/2
    double floor = minus_dprime * big_r * ((1.0 - eps_k0) - 1.0 / (4.0 * M_PI)) / max_ray;
    bool pass = lambda > 0 && lambda >= 0.5 * floor;
    rep.samples.push_back({u, t, -lambda, -0.5 * floor, pass});
  }
  rep.finalize();
  return rep;
}

namespace {

// Convex C^2 radius profile: 1 for s < 1, slope eps beyond s1 = 2/eps, and a
// quartic slope ramp in between whose integral matches the endpoint values.
struct RadiusProfile {
  double eps;
  double s1;
  double c2, c3, c4;

  explicit RadiusProfile(double e) : eps(e), s1(2.0 / e) {
    // slope(x) = eps * g(x), x in [0,1]: g(0)=g'(0)=0, g(1)=1, g'(1)=0,
    // integral of g = 1/(2-eps) so that rho(s1) = eps*s1 continues linearly
    // with offset fixed below.
    double target = 1.0 / (2.0 - eps);
    c4 = 30.0 * (target - 0.5);
    c3 = -2.0 - 2.0 * c4;
    c2 = 3.0 + c4;
  }
  double g(double x) const { return x * x * (c2 + x * (c3 + x * c4)); }
  double g_integral(double x) const {
    return x * x * x * (c2 / 3 + x * (c3 / 4 + x * c4 / 5));
  }
  double value(double s) const {
    if (s <= 1.0) return 1.0;
    double len = s1 - 1.0;
    if (s >= s1) return 1.0 + eps * len * g_integral(1.0) + eps * (s - s1);
    double x = (s - 1.0) / len;
    return 1.0 + eps * len * g_integral(x);
  }
  double slope(double s) const {
    if (s <= 1.0) return 0.0;
    if (s >= s1) return eps;
    return eps * g((s - 1.0) / (s1 - 1.0));
  }
};

}  // namespace

DVec default_slice_base(const FanPtr& fan, int alpha_ray) {
  // lowest-index ray of str(alpha) lying on the boundary of the star
  for (int i = 0; i < fan->num_rays(); ++i) {
    if (i == alpha_ray) continue;
    bool in_star = false, outside = false;
    for (const auto& c : fan->max_cones()) {
      bool has_a = fan->cone_contains(c, to_rational(fan->ray(alpha_ray)));
      bool has_i = std::binary_search(c.begin(), c.end(), i);
      if (has_i && has_a) in_star = true;
      if (has_i && !has_a) outside = true;
    }
    if (in_star && outside) {
      DVec q = to_dvec(fan->ray(i));
      double r = norm(q);
      for (double& x : q) x *= 3.0 / r;
      return q;
    }
  }
  throw Error("default_slice_base: no boundary ray of the star found");
}

SliceReport check_slice_monotonicity(const FanPtr& fan, int alpha_ray, const DVec& q, double t0,
                                     double t1, int steps, double eps) {
  if (alpha_ray < 0 || alpha_ray >= fan->num_rays()) throw NotARay();
  SupportFunction f_alpha = basis_function(fan, alpha_ray);
  PLShadow shadow(f_alpha);
  Mollifier moll = Mollifier::make(fan->rank(), 7);
  RadiusProfile rho(eps);
  DVec alpha = to_dvec(fan->ray(alpha_ray));

  SliceReport rep;
  double h = (t1 - t0) / steps;
  for (int i = 0; i <= steps; ++i) {
    double t = t0 + i * h;
    DVec pt(q.size());
    for (size_t j = 0; j < q.size(); ++j) pt[j] = q[j] + t * alpha[j];
    double radius = rho.value(norm(pt));
    double acc = 0;
    DVec y(pt.size());
    for (size_t k = 0; k < moll.nodes.size(); ++k) {
      for (size_t j = 0; j < pt.size(); ++j) y[j] = pt[j] - radius * moll.nodes[k][j];
      acc += moll.weights[k] * shadow.value(y);
    }
    rep.t_grid.push_back(t);
    rep.values.push_back(kTwoPi * acc);
  }
  rep.min_derivative = 1e300;
  const double band = 1e-6;
  for (int i = 1; i < (int)rep.values.size() - 1; ++i) {
    double d = (rep.values[i + 1] - rep.values[i - 1]) / (2 * h);
    rep.derivatives.push_back(d);
    rep.min_derivative = std::min(rep.min_derivative, d);
    bool dzero = std::fabs(d) <= band;
    bool fzero = std::fabs(rep.values[i]) <= band;
    if (dzero != fzero) rep.zero_locus_agrees = false;
  }
  rep.monotone = rep.min_derivative >= -1e-6;
  return rep;
}

double distance_to_cone(const FanPtr& fan, const ConeKey& cone, const DVec& u) {
  // projection onto a simplicial cone: best valid face projection
  int n = (int)u.size();
  if (cone.empty()) return norm(u);
  std::vector<DVec> gens;
  for (int i : cone) {
    DVec g = to_dvec(fan->ray(i));
    gens.push_back(g);
  }
  int k = (int)gens.size();
  double best = norm(u);  // projection onto the zero face
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    std::vector<int> idx;
    for (int b = 0; b < k; ++b)
      if (mask & (1u << b)) idx.push_back(b);
    int m = (int)idx.size();
    // solve Gram * c = <gens, u>
    std::vector<DVec> gram(m, DVec(m + 1, 0.0));
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) gram[i][j] = ddot(gens[idx[i]], gens[idx[j]]);
      gram[i][m] = ddot(gens[idx[i]], u);
    }
    // gaussian elimination
    bool singular = false;
    for (int c = 0; c < m; ++c) {
      int piv = c;
      for (int r = c + 1; r < m; ++r)
        if (std::fabs(gram[r][c]) > std::fabs(gram[piv][c])) piv = r;
      if (std::fabs(gram[piv][c]) < 1e-12) {
        singular = true;
        break;
      }
      std::swap(gram[c], gram[piv]);
      for (int r = 0; r < m; ++r) {
        if (r == c) continue;
        double f = gram[r][c] / gram[c][c];
        for (int cc = c; cc <= m; ++cc) gram[r][cc] -= f * gram[c][cc];
      }
    }
    if (singular) continue;
    DVec coeff(m);
    bool nonneg = true;
    for (int i = 0; i < m; ++i) {
      coeff[i] = gram[i][m] / gram[i][i];
      if (coeff[i] < -1e-12) nonneg = false;
    }
    if (!nonneg) continue;
    DVec proj(n, 0.0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) proj[j] += coeff[i] * gens[idx[i]][j];
    DVec diff(n);
    for (int j = 0; j < n; ++j) diff[j] = u[j] - proj[j];
    best = std::min(best, norm(diff));
  }
  return best;
}

bool star_cover_membership(const FanPtr& fan, double eps, const DVec& u, int alpha_ray) {
  if (alpha_ray < 0 || alpha_ray >= fan->num_rays()) throw NotARay();
  double r = norm(u);
  if (r < 1e-12) return false;
  DVec dir(u.size());
  for (size_t j = 0; j < u.size(); ++j) dir[j] = u[j] / r;
  // in the star: within distance ~0 of some cone containing alpha
  bool in_star = false;
  for (const auto& c : fan->max_cones()) {
    if (!std::binary_search(c.begin(), c.end(), alpha_ray)) continue;
    if (distance_to_cone(fan, c, dir) < 1e-9) in_star = true;
  }
  if (!in_star) return false;
  for (const auto& c : fan->cones()) {
    if (std::binary_search(c.begin(), c.end(), alpha_ray)) continue;
    if (c.empty()) continue;
    if (distance_to_cone(fan, c, dir) <= eps) return false;
  }
  return true;
}

DivisionReport check_division(const FanPtr& fan, double eps, int samples, unsigned seed) {
  DivisionReport rep;
  rep.eps = eps;
  std::mt19937 rng(seed);
  std::vector<DVec> dirs;
  for (int i = 0; i < samples; ++i) dirs.push_back(random_direction(rng, fan->rank()));

  auto evaluate = [&](double e, bool* covers, bool* contained, int* uncovered) {
    *covers = true;
    *contained = true;
    *uncovered = 0;
    for (const auto& d : dirs) {
      bool member_somewhere = false;
      for (int a = 0; a < fan->num_rays(); ++a) {
        if (!star_cover_membership(fan, e, d, a)) continue;
        member_somewhere = true;
        // closure point of U_a must be interior to st(a): off every cone
        // not containing a
        for (const auto& c : fan->cones()) {
          if (c.empty() || std::binary_search(c.begin(), c.end(), a)) continue;
          if (distance_to_cone(fan, c, d) < 1e-12) *contained = false;
        }
      }
      if (!member_somewhere) {
        *covers = false;
        ++*uncovered;
      }
    }
  };
  evaluate(eps, &rep.covers, &rep.contained, &rep.uncovered_samples);

  rep.largest_working_eps = 0;
  for (double e = 0.02; e < 1.0; e += 0.02) {
    bool cov, cont;
    int unc;
    evaluate(e, &cov, &cont, &unc);
    if (cov && cont)
      rep.largest_working_eps = e;
    else
      break;
  }
  return rep;
}

}  // namespace fltz
