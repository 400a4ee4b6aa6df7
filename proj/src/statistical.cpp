#include "statgeom/statistical.hpp"

#include <algorithm>
#include <cmath>

#include "statgeom/rng.hpp"

namespace statgeom {

bool DomainBox::contains(std::span<const double> x, double margin) const {
  if (static_cast<int>(x.size()) != dim()) return false;
  for (int i = 0; i < dim(); ++i) {
    if (x[static_cast<std::size_t>(i)] < lo[static_cast<std::size_t>(i)] + margin ||
        x[static_cast<std::size_t>(i)] > hi[static_cast<std::size_t>(i)] - margin)
      return false;
  }
  return true;
}

DomainBox DomainBox::cube(int n, double lo, double hi) {
  DomainBox b;
  b.lo.assign(static_cast<std::size_t>(n), lo);
  b.hi.assign(static_cast<std::size_t>(n), hi);
  return b;
}

StatisticalStructure::StatisticalStructure(std::string name, int n, DomainBox domain, FieldProvider g,
                                           FieldProvider k, DerivativeConfig deriv, bool validate)
    : name_(std::move(name)), n_(n), domain_(std::move(domain)), g_(std::move(g)), k_(std::move(k)), deriv_(deriv) {
  if (domain_.dim() != n_) throw ConfigError("domain dimension mismatch");
  if (g_.rank != 2 || k_.rank != 3) throw ConfigError("provider rank mismatch (need rank-2 g, rank-3 K)");
  if (validate) validate_construction();
}

void StatisticalStructure::require_in_domain(std::span<const double> x) const {
  double margin = deriv_.mode == DerivMode::FiniteDifference ? 2.0 * deriv_.fd_step : 0.0;
  if (static_cast<int>(x.size()) != n_)
    throw DomainError("point has " + std::to_string(x.size()) + " coordinates, chart of " + name_ + " needs " +
                      std::to_string(n_));
  for (int i = 0; i < n_; ++i) {
    double v = x[static_cast<std::size_t>(i)];
    if (v < domain_.lo[static_cast<std::size_t>(i)] + margin || v > domain_.hi[static_cast<std::size_t>(i)] - margin)
      throw DomainError("coordinate " + std::to_string(i) + " = " + std::to_string(v) +
                        " outside the chart box of " + name_ + " [" +
                        std::to_string(domain_.lo[static_cast<std::size_t>(i)]) + ", " +
                        std::to_string(domain_.hi[static_cast<std::size_t>(i)]) + "]");
  }
}

void StatisticalStructure::validate_construction() const {
  // 8 corner-adjacent points (corners pulled 10% toward the center) plus 8
  // seeded interior points.
  std::vector<std::vector<double>> pts;
  const int ncorner = std::min(8, 1 << n_);
  for (int c = 0; c < ncorner; ++c) {
    std::vector<double> p(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
      double lo = domain_.lo[static_cast<std::size_t>(i)], hi = domain_.hi[static_cast<std::size_t>(i)];
      double corner = (c >> i) & 1 ? hi : lo;
      p[static_cast<std::size_t>(i)] = corner + 0.1 * ((lo + hi) / 2.0 - corner);
    }
    pts.push_back(std::move(p));
  }
  Rng rng(0xC0FFEEull);
  for (int k = 0; k < 8; ++k) pts.push_back(rng.point_in_box(domain_.lo, domain_.hi, 0.05));

  const double sym_tol = 1e-10;
  std::vector<double> g, kc, chol;
  for (const auto& p : pts) {
    metric_t(std::span<const double>(p), g);
    if (!cholesky(n_, g, chol))
      throw MetricDegenerateError("metric of " + name_ + " is not SPD at a sampled point");
    difference_t(std::span<const double>(p), kc);
    for (int a = 0; a < n_; ++a)
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < i; ++j) {
          double d = kc[(static_cast<std::size_t>(a) * n_ + i) * n_ + static_cast<std::size_t>(j)] -
                     kc[(static_cast<std::size_t>(a) * n_ + j) * n_ + static_cast<std::size_t>(i)];
          if (std::abs(d) > 1e-12) throw ConfigError("K of " + name_ + " not symmetric in its lower slots");
        }
    // Total symmetry of the cubic form g(K(X,Y),Z); equivalent to the
    // total symmetry of nabla g.
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        for (int l = 0; l < n_; ++l) {
          double cijl = 0.0, cilj = 0.0;
          for (int a = 0; a < n_; ++a) {
            cijl += g[static_cast<std::size_t>(a) * n_ + l] * kc[(static_cast<std::size_t>(a) * n_ + i) * n_ + static_cast<std::size_t>(j)];
            cilj += g[static_cast<std::size_t>(a) * n_ + j] * kc[(static_cast<std::size_t>(a) * n_ + i) * n_ + static_cast<std::size_t>(l)];
          }
          if (std::abs(cijl - cilj) > sym_tol)
            throw ConfigError("K of " + name_ + " is not self-adjoint relative to g");
        }
  }
}

namespace {

std::size_t i2(int n, int i, int j) { return static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j); }
std::size_t i3(int n, int a, int i, int j) {
  return (static_cast<std::size_t>(a) * n + static_cast<std::size_t>(i)) * n + static_cast<std::size_t>(j);
}
std::size_t i4(int n, int l, int k, int i, int j) {
  return ((static_cast<std::size_t>(l) * n + static_cast<std::size_t>(k)) * n + static_cast<std::size_t>(i)) * n +
         static_cast<std::size_t>(j);
}

}  // namespace

std::vector<double> CurvatureBundle::k_of(std::span<const double> X, std::span<const double> Y) const {
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  for (int a = 0; a < n; ++a) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s += K[i3(n, a, i, j)] * X[static_cast<std::size_t>(i)] * Y[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(a)] = s;
  }
  return out;
}

namespace {

std::vector<double> apply_r4(int n, const std::vector<double>& R4, std::span<const double> X,
                             std::span<const double> Y, std::span<const double> Z) {
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  for (int l = 0; l < n; ++l) {
    double s = 0.0;
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          s += R4[i4(n, l, k, i, j)] * Z[static_cast<std::size_t>(k)] * X[static_cast<std::size_t>(i)] *
               Y[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(l)] = s;
  }
  return out;
}

}  // namespace

std::vector<double> CurvatureBundle::r_of(std::span<const double> X, std::span<const double> Y,
                                          std::span<const double> Z) const {
  return apply_r4(n, R, X, Y, Z);
}
std::vector<double> CurvatureBundle::rg_of(std::span<const double> X, std::span<const double> Y,
                                           std::span<const double> Z) const {
  return apply_r4(n, Rg, X, Y, Z);
}
std::vector<double> CurvatureBundle::kk_of(std::span<const double> X, std::span<const double> Y,
                                           std::span<const double> Z) const {
  return apply_r4(n, KK, X, Y, Z);
}

std::vector<double> CurvatureBundle::r1_of(std::span<const double> X, std::span<const double> Y,
                                           std::span<const double> Z) const {
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  for (int p = 0; p < n; ++p) {
    double s = 0.0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          s += R1[i4(n, p, a, b, c)] * X[static_cast<std::size_t>(a)] * Y[static_cast<std::size_t>(b)] *
               Z[static_cast<std::size_t>(c)];
    out[static_cast<std::size_t>(p)] = s;
  }
  return out;
}

namespace {

std::vector<double> contract_nabla3(int n, const std::vector<double>& nk, std::span<const double> D,
                                    std::span<const double> X, std::span<const double> Y) {
  // nk layout [k][i][j][m], direction m last.
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  for (int k = 0; k < n; ++k) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int m = 0; m < n; ++m)
          s += nk[(i3(n, k, i, j)) * static_cast<std::size_t>(n) + static_cast<std::size_t>(m)] *
               X[static_cast<std::size_t>(i)] * Y[static_cast<std::size_t>(j)] * D[static_cast<std::size_t>(m)];
    out[static_cast<std::size_t>(k)] = s;
  }
  return out;
}

std::vector<double> contract_nabla4(int n, const std::vector<double>& nr, std::span<const double> D,
                                    std::span<const double> X, std::span<const double> Y,
                                    std::span<const double> Z, bool r1_layout) {
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  for (int l = 0; l < n; ++l) {
    double s = 0.0;
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int m = 0; m < n; ++m) {
            double c = nr[(i4(n, l, k, i, j)) * static_cast<std::size_t>(n) + static_cast<std::size_t>(m)];
            double w = r1_layout
                           // layout [p][a][b][c]: slots are (X,Y,Z) directly
                           ? X[static_cast<std::size_t>(k)] * Y[static_cast<std::size_t>(i)] * Z[static_cast<std::size_t>(j)]
                           // curvature layout [l][k][i][j]: R(X,Y)Z
                           : Z[static_cast<std::size_t>(k)] * X[static_cast<std::size_t>(i)] * Y[static_cast<std::size_t>(j)];
            s += c * w * D[static_cast<std::size_t>(m)];
          }
    out[static_cast<std::size_t>(l)] = s;
  }
  return out;
}

}  // namespace

std::vector<double> CurvatureBundle::nabla_k_of(std::span<const double> D, std::span<const double> X,
                                                std::span<const double> Y) const {
  return contract_nabla3(n, nablaK, D, X, Y);
}
std::vector<double> CurvatureBundle::nabla_k_g_of(std::span<const double> D, std::span<const double> X,
                                                  std::span<const double> Y) const {
  return contract_nabla3(n, nablaK_g, D, X, Y);
}
std::vector<double> CurvatureBundle::nabla_r_of(std::span<const double> D, std::span<const double> X,
                                                std::span<const double> Y, std::span<const double> Z) const {
  return contract_nabla4(n, nablaR, D, X, Y, Z, false);
}
std::vector<double> CurvatureBundle::nabla_r1_of(std::span<const double> D, std::span<const double> X,
                                                 std::span<const double> Y, std::span<const double> Z) const {
  return contract_nabla4(n, nablaR1, D, X, Y, Z, true);
}

double CurvatureBundle::inner(std::span<const double> X, std::span<const double> Y) const {
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s += g[i2(n, i, j)] * X[static_cast<std::size_t>(i)] * Y[static_cast<std::size_t>(j)];
  return s;
}

double CurvatureBundle::tau_of(std::span<const double> X) const {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += tau[static_cast<std::size_t>(i)] * X[static_cast<std::size_t>(i)];
  return s;
}

std::vector<double> CurvatureBundle::frame_vector(int i) const {
  return {frame.begin() + static_cast<std::ptrdiff_t>(i) * n, frame.begin() + static_cast<std::ptrdiff_t>(i + 1) * n};
}

CurvatureBundle curvature_bundle(const StatisticalStructure& s, std::span<const double> x) {
  s.require_in_domain(x);
  CurvatureBundle b;
  const int n = s.dim();
  b.n = n;
  b.x.assign(x.begin(), x.end());

  s.metric_t(x, b.g);
  mat_inverse(n, b.g, b.ginv);
  s.difference_t(x, b.K);
  {
    std::vector<double> gval;
    auto gfn = [&s](auto xs, auto out) {
      using T = std::remove_cvref_t<decltype(xs[0])>;
      std::vector<T> g;
      s.metric_t(std::span<const T>(xs), g);
      std::copy(g.begin(), g.end(), out.begin());
    };
    jacobian(s.deriv(), gfn, x, static_cast<std::size_t>(n) * n, gval, b.dg);
  }
  s.christoffel_t(x, ConnectionKind::LeviCivita, b.gamma_g);
  b.gamma = b.gamma_g;
  b.gamma_star = b.gamma_g;
  for (std::size_t i = 0; i < b.gamma.size(); ++i) {
    b.gamma[i] += b.K[i];
    b.gamma_star[i] -= b.K[i];
  }

  s.curvature_t(x, ConnectionKind::LeviCivita, b.Rg);
  s.curvature_t(x, ConnectionKind::Statistical, b.R);
  s.curvature_t(x, ConnectionKind::Conjugate, b.Rstar);

  const std::size_t n4 = static_cast<std::size_t>(n) * n * n * n;
  b.KK.assign(n4, 0.0);
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double sum = 0.0;
          for (int p = 0; p < n; ++p)
            sum += b.K[i3(n, l, i, p)] * b.K[i3(n, p, j, k)] - b.K[i3(n, l, j, p)] * b.K[i3(n, p, i, k)];
          b.KK[i4(n, l, k, i, j)] = sum;
        }
  b.frakR.assign(n4, 0.0);
  for (std::size_t i = 0; i < n4; ++i) b.frakR[i] = 0.5 * (b.R[i] + b.Rstar[i]);

  s.r1_components_t(x, b.R1);

  // Covariant derivatives; plain partials of the component fields come from
  // the derivative engine, so the dual path stays analytic end to end.
  const auto& cfg = s.deriv();
  std::vector<double> val, dK;
  auto kfn = [&s](auto xs, auto out) {
    using T = std::remove_cvref_t<decltype(xs[0])>;
    std::vector<T> k;
    s.difference_t(std::span<const T>(xs), k);
    std::copy(k.begin(), k.end(), out.begin());
  };
  jacobian(cfg, kfn, x, static_cast<std::size_t>(n) * n * n, val, dK);
  const Variance ULL[] = {Variance::Upper, Variance::Lower, Variance::Lower};
  covariant_derivative_components(n, std::span<const Variance>(ULL, 3), b.K, dK, b.gamma_g, b.nablaK_g);
  covariant_derivative_components(n, std::span<const Variance>(ULL, 3), b.K, dK, b.gamma, b.nablaK);

  std::vector<double> dR;
  auto rfn = [&s](auto xs, auto out) {
    using T = std::remove_cvref_t<decltype(xs[0])>;
    std::vector<T> r;
    s.curvature_t(std::span<const T>(xs), ConnectionKind::Statistical, r);
    std::copy(r.begin(), r.end(), out.begin());
  };
  jacobian(nested_fd(nested_fd(cfg)), rfn, x, n4, val, dR);
  const Variance ULLL[] = {Variance::Upper, Variance::Lower, Variance::Lower, Variance::Lower};
  covariant_derivative_components(n, std::span<const Variance>(ULLL, 4), b.R, dR, b.gamma, b.nablaR);

  std::vector<double> dR1;
  auto r1fn = [&s](auto xs, auto out) {
    using T = std::remove_cvref_t<decltype(xs[0])>;
    std::vector<T> r1;
    s.r1_components_t(std::span<const T>(xs), r1);
    std::copy(r1.begin(), r1.end(), out.begin());
  };
  jacobian(nested_fd(nested_fd(cfg)), r1fn, x, n4, val, dR1);
  covariant_derivative_components(n, std::span<const Variance>(ULLL, 4), b.R1, dR1, b.gamma, b.nablaR1);

  b.tau.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double t = 0.0;
    for (int m = 0; m < n; ++m) t += b.K[i3(n, m, i, m)];
    b.tau[static_cast<std::size_t>(i)] = t;
  }
  std::vector<double> dtau(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int m = 0; m < n; ++m) {
      double t = 0.0;
      for (int p = 0; p < n; ++p) t += dK[(i3(n, p, i, p)) * static_cast<std::size_t>(n) + static_cast<std::size_t>(m)];
      dtau[i2(n, i, m)] = t;
    }
  std::vector<double> ntau;
  const Variance LOW[] = {Variance::Lower};
  covariant_derivative_components(n, std::span<const Variance>(LOW, 1), b.tau, dtau, b.gamma, ntau);
  b.nabla_tau.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b.nabla_tau[i2(n, i, j)] = ntau[i2(n, j, i)];  // [direction][argument]

  b.E.assign(static_cast<std::size_t>(n), 0.0);
  for (int k = 0; k < n; ++k) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) sum += b.ginv[i2(n, i, j)] * b.K[i3(n, k, i, j)];
    b.E[static_cast<std::size_t>(k)] = sum;
  }

  ricci_from_curvature(n, b.R, b.ric);
  ricci_from_curvature(n, b.Rstar, b.ric_star);
  ricci_from_curvature(n, b.Rg, b.ric_g);

  b.ric_K.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int y = 0; y < n; ++y)
    for (int z = 0; z < n; ++z) {
      double t = 0.0;
      for (int p = 0; p < n; ++p) t += b.tau[static_cast<std::size_t>(p)] * b.K[i3(n, p, y, z)];
      double gkk = 0.0;
      for (int a = 0; a < n; ++a)
        for (int bb = 0; bb < n; ++bb)
          for (int c = 0; c < n; ++c)
            for (int d = 0; d < n; ++d)
              gkk += b.K[i3(n, a, y, bb)] * b.K[i3(n, c, z, d)] * b.g[i2(n, a, c)] * b.ginv[i2(n, bb, d)];
      b.ric_K[i2(n, y, z)] = t - gkk;
    }

  b.frak_ric.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (std::size_t i = 0; i < b.frak_ric.size(); ++i) b.frak_ric[i] = 0.5 * (b.ric[i] + b.ric_star[i]);

  b.rho = trace_with_inverse_metric(n, b.ginv, b.frak_ric);
  b.rho_g = trace_with_inverse_metric(n, b.ginv, b.ric_g);

  // Deterministic g-orthonormal frame: Gram-Schmidt on the coordinate frame
  // in index order.
  b.frame.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    std::vector<double> v(static_cast<std::size_t>(n), 0.0);
    v[static_cast<std::size_t>(i)] = 1.0;
    for (int j = 0; j < i; ++j) {
      std::vector<double> fj(b.frame.begin() + static_cast<std::ptrdiff_t>(j) * n,
                             b.frame.begin() + static_cast<std::ptrdiff_t>(j + 1) * n);
      double c = b.inner(v, fj);
      for (int a = 0; a < n; ++a) v[static_cast<std::size_t>(a)] -= c * fj[static_cast<std::size_t>(a)];
    }
    double nn = std::sqrt(b.inner(v, v));
    for (int a = 0; a < n; ++a) b.frame[i2(n, i, a)] = v[static_cast<std::size_t>(a)] / nn;
  }
  return b;
}

DenseTensor partials(const FieldProvider& f, const DerivativeConfig& cfg, std::span<const double> x,
                     Frame frame, std::vector<Variance> variance) {
  std::vector<double> val, jac;
  auto fn = [&f](auto xs, auto out) {
    using T = std::remove_cvref_t<decltype(xs[0])>;
    f.eval(std::span<const T>(xs), out);
  };
  jacobian(cfg, fn, x, f.out_size, val, jac);
  variance.push_back(Variance::Lower);
  DenseTensor t(frame, variance);
  std::copy(jac.begin(), jac.end(), t.data().begin());
  return t;
}

DenseTensor second_partials(const FieldProvider& f, const DerivativeConfig& cfg, std::span<const double> x,
                            Frame frame, std::vector<Variance> variance) {
  std::vector<double> hess;
  auto fn = [&f](auto xs, auto out) {
    using T = std::remove_cvref_t<decltype(xs[0])>;
    f.eval(std::span<const T>(xs), out);
  };
  hessian(cfg, fn, x, f.out_size, hess);
  variance.push_back(Variance::Lower);
  variance.push_back(Variance::Lower);
  DenseTensor t(frame, variance);
  std::copy(hess.begin(), hess.end(), t.data().begin());
  return t;
}

namespace {

DenseTensor wrap(int n, const std::vector<double>& comps, std::vector<Variance> var) {
  DenseTensor t(Frame{FrameKind::BaseCoord, n}, std::move(var));
  std::copy(comps.begin(), comps.end(), t.data().begin());
  return t;
}

}  // namespace

DenseTensor christoffel(const StatisticalStructure& s, std::span<const double> x, ConnectionKind kind) {
  s.require_in_domain(x);
  std::vector<double> gamma;
  s.christoffel_t(x, kind, gamma);
  return wrap(s.dim(), gamma, {Variance::Upper, Variance::Lower, Variance::Lower});
}

DenseTensor curvature(const StatisticalStructure& s, std::span<const double> x, ConnectionKind kind) {
  s.require_in_domain(x);
  std::vector<double> r;
  s.curvature_t(x, kind, r);
  return wrap(s.dim(), r, {Variance::Upper, Variance::Lower, Variance::Lower, Variance::Lower});
}

DenseTensor bracket_KK(const StatisticalStructure& s, std::span<const double> x) {
  auto b = curvature_bundle(s, x);
  return wrap(s.dim(), b.KK, {Variance::Upper, Variance::Lower, Variance::Lower, Variance::Lower});
}

KoszulForms koszul_forms(const StatisticalStructure& s, std::span<const double> x) {
  auto b = curvature_bundle(s, x);
  KoszulForms f{wrap(b.n, b.tau, {Variance::Lower}), wrap(b.n, b.nabla_tau, {Variance::Lower, Variance::Lower}),
                wrap(b.n, b.E, {Variance::Upper})};
  return f;
}

RicciFamily ricci_family(const StatisticalStructure& s, std::span<const double> x) {
  auto b = curvature_bundle(s, x);
  std::vector<Variance> ll{Variance::Lower, Variance::Lower};
  return RicciFamily{wrap(b.n, b.ric, ll), wrap(b.n, b.ric_star, ll), wrap(b.n, b.ric_g, ll),
                     wrap(b.n, b.ric_K, ll), wrap(b.n, b.frak_ric, ll)};
}

double sectional(const CurvatureBundle& b, std::span<const double> X, std::span<const double> Y,
                 SectionalKind kind) {
  const int n = b.n;
  // Gram-Schmidt with X first; reject numerically collinear planes.
  double gxx = b.inner(X, X), gxy = b.inner(X, Y), gyy = b.inner(Y, Y);
  double sin2 = 1.0 - gxy * gxy / (gxx * gyy);
  if (!(sin2 > 1e-16)) throw CollinearError("sectional: plane vectors are collinear");
  std::vector<double> e1(X.begin(), X.end()), e2(Y.begin(), Y.end());
  double nx = std::sqrt(gxx);
  for (auto& v : e1) v /= nx;
  double c = b.inner(e2, e1);
  for (int i = 0; i < n; ++i) e2[static_cast<std::size_t>(i)] -= c * e1[static_cast<std::size_t>(i)];
  double ny = std::sqrt(b.inner(e2, e2));
  if (ny < 1e-8 * std::sqrt(gyy)) throw CollinearError("sectional: plane vectors are collinear");
  for (auto& v : e2) v /= ny;

  const std::vector<double>* R = nullptr;
  switch (kind) {
    case SectionalKind::Riemannian:
      R = &b.Rg;
      break;
    case SectionalKind::Kcurv:
      R = &b.KK;
      break;
    case SectionalKind::Frak:
      R = &b.frakR;
      break;
  }
  std::vector<double> v = apply_r4(n, *R, e1, e2, e2);
  return b.inner(v, e1);
}

double sectional(const StatisticalStructure& s, std::span<const double> x, std::span<const double> X,
                 std::span<const double> Y, SectionalKind kind) {
  auto b = curvature_bundle(s, x);
  return sectional(b, X, Y, kind);
}

ScalarCurvatures scalars(const StatisticalStructure& s, std::span<const double> x) {
  auto b = curvature_bundle(s, x);
  return {b.rho, b.rho_g};
}

StructureFlags classify(const StatisticalStructure& s, const std::vector<std::vector<double>>& sample, double tol) {
  if (sample.empty()) throw ConfigError("classify: empty sample");
  double max_k = 0.0, max_rdiff = 0.0, max_r = 0.0;
  std::vector<double> k, r, rs;
  for (const auto& p : sample) {
    s.require_in_domain(p);
    s.difference_t(std::span<const double>(p), k);
    for (double v : k) max_k = std::max(max_k, std::abs(v));
    s.curvature_t(std::span<const double>(p), ConnectionKind::Statistical, r);
    s.curvature_t(std::span<const double>(p), ConnectionKind::Conjugate, rs);
    for (std::size_t i = 0; i < r.size(); ++i) {
      max_r = std::max(max_r, std::abs(r[i]));
      max_rdiff = std::max(max_rdiff, std::abs(r[i] - rs[i]));
    }
  }
  return StructureFlags{max_k <= tol, max_rdiff <= tol, max_r <= tol};
}

}  // namespace statgeom
