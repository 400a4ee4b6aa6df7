#include "statgeom/sphere.hpp"

#include <algorithm>
#include <cmath>

#include "statgeom/rng.hpp"

namespace statgeom {

namespace {

using Vec = std::vector<double>;

Vec vscale(double c, const Vec& a) {
  Vec r = a;
  for (auto& v : r) v *= c;
  return r;
}

double xi_norm(const CurvatureBundle& b, std::span<const double> xi) { return std::sqrt(b.inner(xi, xi)); }

void require_on_sphere(const CurvatureBundle& b, const SpherePoint& sp) {
  if (sp.r <= 0.0) throw ConfigError("sphere radius must be positive");
  if (std::abs(xi_norm(b, sp.tp.xi) - sp.r) > 1e-8 * std::max(1.0, sp.r))
    throw ConfigError("fiber vector does not lie on the radius-r sphere");
}

// Threshold for the K(xi,xi) = 0 frame branch; well above dual-number
// noise, far below any O(1) cubic form.
constexpr double kKxxZeroTol = 1e-9;

}  // namespace

SpherePoint make_sphere_point(const CurvatureBundle& b, std::vector<double> xi, double r) {
  if (r <= 0.0) throw ConfigError("sphere radius must be positive");
  double nrm = xi_norm(b, xi);
  if (nrm == 0.0) throw ConfigError("cannot project the zero vector onto a sphere");
  for (auto& v : xi) v *= r / nrm;
  return SpherePoint{TangentPoint{b.x, std::move(xi)}, r};
}

SpherePoint make_sphere_point(const StatisticalStructure& s, std::vector<double> x, std::vector<double> xi,
                              double r) {
  auto b = curvature_bundle(s, x);
  return make_sphere_point(b, std::move(xi), r);
}

TangentLifts tangent_lifts(const CurvatureBundle& b, const SpherePoint& sp, std::span<const double> X) {
  require_on_sphere(b, sp);
  const auto& xi = sp.tp.xi;
  const double r2 = sp.r * sp.r;
  Vec kxx = b.k_of(xi, xi);
  TangentLifts out{SplitVector::lift(LiftKind::Vertical, X), SplitVector::lift(LiftKind::Horizontal, X)};
  double cv = b.inner(xi, X) / r2;
  double ch = b.inner(kxx, X) / r2;
  for (int i = 0; i < b.n; ++i) {
    out.tv.v[static_cast<std::size_t>(i)] -= cv * xi[static_cast<std::size_t>(i)];
    out.th.v[static_cast<std::size_t>(i)] += ch * xi[static_cast<std::size_t>(i)];
  }
  return out;
}

TangentLifts tangent_lifts(const StatisticalStructure& s, const SpherePoint& sp, std::span<const double> X) {
  auto b = curvature_bundle(s, sp.tp.x);
  return tangent_lifts(b, sp, X);
}

SplitVector sphere_normal(const CurvatureBundle& b, const SpherePoint& sp) {
  require_on_sphere(b, sp);
  const auto& xi = sp.tp.xi;
  Vec kxx = b.k_of(xi, xi);
  double f = 1.0 / std::sqrt(sp.r * sp.r + b.inner(kxx, kxx));
  SplitVector n = SplitVector::zero(b.n);
  n.v = vscale(f, xi);
  n.h = vscale(-f, kxx);
  return n;
}

SplitVector sphere_normal(const StatisticalStructure& s, const SpherePoint& sp) {
  auto b = curvature_bundle(s, sp.tp.x);
  return sphere_normal(b, sp);
}

namespace {

// Orthonormal vectors orthogonal to `avoid` (unit), by Gram-Schmidt over
// the coordinate directions in index order.
std::vector<Vec> complement_frame(const CurvatureBundle& b, const Vec& avoid) {
  const int n = b.n;
  std::vector<Vec> frame;
  frame.push_back(avoid);
  for (int i = 0; i < n && static_cast<int>(frame.size()) < n; ++i) {
    Vec v(static_cast<std::size_t>(n), 0.0);
    v[static_cast<std::size_t>(i)] = 1.0;
    for (const auto& f : frame) {
      double c = b.inner(v, f);
      for (int a = 0; a < n; ++a) v[static_cast<std::size_t>(a)] -= c * f[static_cast<std::size_t>(a)];
    }
    double nn = std::sqrt(b.inner(v, v));
    if (nn < 1e-10) continue;
    for (auto& c : v) c /= nn;
    frame.push_back(std::move(v));
  }
  frame.erase(frame.begin());
  if (static_cast<int>(frame.size()) != n - 1)
    throw GeomError("could not complete an orthonormal complement frame");
  return frame;
}

}  // namespace

SphereFrame sphere_frame(const CurvatureBundle& b, const SpherePoint& sp) {
  require_on_sphere(b, sp);
  const auto& xi = sp.tp.xi;
  SphereFrame fr;
  fr.kxx = b.k_of(xi, xi);
  fr.kxx_norm = std::sqrt(b.inner(fr.kxx, fr.kxx));
  fr.f = 1.0 / std::sqrt(sp.r * sp.r + fr.kxx_norm * fr.kxx_norm);
  fr.normal = sphere_normal(b, sp);

  fr.vert = complement_frame(b, vscale(1.0 / sp.r, xi));
  if (fr.kxx_norm < kKxxZeroTol) {
    fr.has_estar = false;
    fr.horiz.clear();
    for (int i = 0; i < b.n; ++i) fr.horiz.push_back(b.frame_vector(i));
  } else {
    fr.has_estar = true;
    fr.horiz = complement_frame(b, vscale(1.0 / fr.kxx_norm, fr.kxx));
    // K(xi,xi)^th has norm |K(xi,xi)| / (f r).
    auto lifts = tangent_lifts(b, sp, fr.kxx);
    double nn = fr.kxx_norm / (fr.f * sp.r);
    fr.estar = (1.0 / nn) * lifts.th;
  }
  return fr;
}

std::vector<SplitVector> SphereFrame::tangent_vectors() const {
  std::vector<SplitVector> out;
  for (const auto& v : vert) out.push_back(SplitVector::lift(LiftKind::Vertical, v));
  for (const auto& h : horiz) out.push_back(SplitVector::lift(LiftKind::Horizontal, h));
  if (has_estar) out.push_back(estar);
  return out;
}

double second_fundamental_form(const CurvatureBundle& b, const SpherePoint& sp, SphereSlot a,
                               std::span<const double> X, SphereSlot bk, std::span<const double> Y) {
  require_on_sphere(b, sp);
  const auto& xi = sp.tp.xi;
  const double r2 = sp.r * sp.r;
  Vec kxx = b.k_of(xi, xi);
  double f = 1.0 / std::sqrt(r2 + b.inner(kxx, kxx));

  auto require_perp = [&](std::span<const double> V) {
    double c = b.inner(xi, V);
    if (std::abs(c) > 1e-9 * sp.r * std::sqrt(std::max(1e-300, b.inner(V, V))))
      throw SlotConditionError("vertical slot argument must be orthogonal to the fiber vector");
  };

  if (a == SphereSlot::TangentVertical && bk == SphereSlot::TangentVertical) {
    require_perp(X);
    require_perp(Y);
    return f * (-b.inner(X, Y) - b.inner(b.k_of(X, Y), kxx));
  }
  if (a == SphereSlot::TangentVertical || bk == SphereSlot::TangentVertical) {
    std::span<const double> V = a == SphereSlot::TangentVertical ? X : Y;  // vertical, orthogonal to xi
    std::span<const double> W = a == SphereSlot::TangentVertical ? Y : X;  // horizontal, arbitrary
    require_perp(V);
    double val = b.inner(b.k_of(V, W), xi);
    val -= 0.5 * b.inner(b.r_of(W, kxx, xi), V);
    val -= b.inner(kxx, W) * b.inner(b.k_of(xi, V), kxx) / r2;
    return f * val;
  }
  // both tangential-horizontal
  double val = 0.5 * (b.inner(b.nabla_k_g_of(X, xi, xi), Y) + b.inner(b.nabla_k_g_of(Y, xi, xi), X));
  val -= (b.inner(kxx, Y) * b.inner(b.r_of(X, kxx, xi), xi) + b.inner(kxx, X) * b.inner(b.r_of(Y, kxx, xi), xi)) /
         (2.0 * r2);
  val -= 2.0 * b.inner(b.k_of(xi, X), b.k_of(xi, Y));
  val += b.inner(kxx, X) * b.inner(kxx, Y) * (1.0 - b.inner(kxx, kxx) / r2) / r2;
  return f * val;
}

double second_fundamental_form(const StatisticalStructure& s, const SpherePoint& sp, SphereSlot a,
                               std::span<const double> X, SphereSlot bk, std::span<const double> Y) {
  auto b = curvature_bundle(s, sp.tp.x);
  return second_fundamental_form(b, sp, a, X, bk, Y);
}

SplitVector shape_operator_oracle(const StatisticalStructure& s, const SpherePoint& sp,
                                  const SplitVector& tangent) {
  auto b = curvature_bundle(s, sp.tp.x);
  require_on_sphere(b, sp);
  const int n = s.dim();
  std::vector<double> z = sp.tp.x;
  z.insert(z.end(), sp.tp.xi.begin(), sp.tp.xi.end());
  SplitVector N = sphere_normal(b, sp);
  if (std::abs(lift_inner(b, tangent, N)) > 1e-8 * lift_norm(b, tangent))
    throw SlotConditionError("shape operator argument must be tangent to the sphere bundle");

  const double r = sp.r;
  // The normal as an explicit field in chart coordinates: adapted parts
  // (-f K(xi,xi), f xi) pushed through the frame change pointwise.
  auto nfield = [&s, r, n](auto zs, auto out) {
    using T = std::remove_cvref_t<decltype(zs[0])>;
    std::span<const T> xs(zs.data(), static_cast<std::size_t>(n));
    std::vector<T> g, kc, gamma;
    s.metric_t(xs, g);
    s.difference_t(xs, kc);
    s.christoffel_t(xs, ConnectionKind::Statistical, gamma);
    std::vector<T> kxx(static_cast<std::size_t>(n), T(0.0));
    for (int k = 0; k < n; ++k) {
      T sum(0.0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          sum = sum + kc[(static_cast<std::size_t>(k) * n + i) * n + static_cast<std::size_t>(j)] *
                          zs[static_cast<std::size_t>(n + i)] * zs[static_cast<std::size_t>(n + j)];
      kxx[static_cast<std::size_t>(k)] = sum;
    }
    T k2(0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        k2 = k2 + g[static_cast<std::size_t>(i) * n + j] * kxx[static_cast<std::size_t>(i)] *
                      kxx[static_cast<std::size_t>(j)];
    T f = 1.0 / sqrt(r * r + k2);
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = -f * kxx[static_cast<std::size_t>(i)];
    for (int k = 0; k < n; ++k) {
      T acc = f * zs[static_cast<std::size_t>(n + k)];
      for (int i = 0; i < n; ++i) {
        T a_ki(0.0);
        for (int aa = 0; aa < n; ++aa)
          a_ki = a_ki + gamma[(static_cast<std::size_t>(k) * n + i) * n + static_cast<std::size_t>(aa)] *
                            zs[static_cast<std::size_t>(n + aa)];
        acc = acc + a_ki * f * kxx[static_cast<std::size_t>(i)];
      }
      out[static_cast<std::size_t>(n + k)] = acc;
    }
  };

  auto fc = frame_change(s, z);
  auto a_coord = adapted_to_coord_vector(fc, tangent.h, tangent.v);
  auto dcoord = tm_covariant_derivative_of_field(s, z, a_coord, nfield);
  auto [dh, dv] = coord_to_adapted_vector(fc, dcoord);
  SplitVector D{std::move(dh), std::move(dv)};
  double along_normal = lift_inner(b, D, N);
  SplitVector proj = D - along_normal * N;
  return -1.0 * proj;
}

double mean_curvature(const CurvatureBundle& b, const SpherePoint& sp) {
  require_on_sphere(b, sp);
  const int n = b.n;
  const auto& xi = sp.tp.xi;
  const double r2 = sp.r * sp.r;
  Vec kxx = b.k_of(xi, xi);
  double kxx2 = b.inner(kxx, kxx);
  double f2 = 1.0 / (r2 + kxx2);
  double f = std::sqrt(f2);

  double tr_nk = 0.0;  // sum_a g((nabla^g_{f_a} K)(xi,xi), f_a)
  double tr_k2 = 0.0;  // trace of K_xi squared
  for (int p = 0; p < n; ++p) {
    Vec fp = b.frame_vector(p);
    tr_nk += b.inner(b.nabla_k_g_of(fp, xi, xi), fp);
    Vec kf = b.k_of(xi, fp);
    tr_k2 += b.inner(kf, kf);
  }
  Vec kxkxx = b.k_of(xi, kxx);

  // Sign of the quadratic K terms (-2 tr K_xi^2, +2 f^2 |K(xi,K(xi,xi))|^2)
  // is locked against the shape-operator oracle.
  double val = -(n - 1.0) - b.tau_of(kxx) + kxx2 / r2;
  val += tr_nk - f2 * b.inner(b.nabla_k_g_of(kxx, xi, xi), kxx);
  val += -2.0 * tr_k2 + 2.0 * f2 * b.inner(kxkxx, kxkxx);
  val += f2 * kxx2 * (1.0 - kxx2 / r2);
  return f * val;
}

double mean_curvature(const StatisticalStructure& s, const SpherePoint& sp) {
  auto b = curvature_bundle(s, sp.tp.x);
  return mean_curvature(b, sp);
}

double norm_h_squared(const CurvatureBundle& b, const SpherePoint& sp) {
  require_on_sphere(b, sp);
  SphereFrame fr = sphere_frame(b, sp);
  const auto& xi = sp.tp.xi;
  const double r2 = sp.r * sp.r;
  const double f = fr.f, f2 = f * f;
  const auto& kxx = fr.kxx;
  double total = 0.0;

  for (const auto& vi : fr.vert)
    for (const auto& vj : fr.vert) {
      double h = f * (-b.inner(vi, vj) - b.inner(b.k_of(vi, vj), kxx));
      total += h * h;
    }
  for (const auto& vi : fr.vert)
    for (const auto& hj : fr.horiz) {
      double h = f * (b.inner(b.k_of(vi, hj), xi) - 0.5 * b.inner(b.r_of(hj, kxx, xi), vi));
      total += 2.0 * h * h;
    }
  for (const auto& hi : fr.horiz)
    for (const auto& hj : fr.horiz) {
      double h = f * (0.5 * (b.inner(b.nabla_k_g_of(hi, xi, xi), hj) + b.inner(b.nabla_k_g_of(hj, xi, xi), hi)) -
                      2.0 * b.inner(b.k_of(xi, hi), b.k_of(xi, hj)));
      total += h * h;
    }
  if (fr.has_estar) {
    const double knorm = fr.kxx_norm;
    Vec kxkxx = b.k_of(xi, kxx);
    for (const auto& vi : fr.vert) {
      double h = (f2 * sp.r / knorm) * b.inner(b.k_of(vi, xi), kxx) * (1.0 - knorm * knorm / r2);
      total += 2.0 * h * h;
    }
    for (const auto& hi : fr.horiz) {
      double h = (f2 * sp.r / knorm) *
                 (0.5 * (b.inner(b.nabla_k_g_of(hi, xi, xi), kxx) + b.inner(b.nabla_k_g_of(kxx, xi, xi), hi)) -
                  knorm * knorm * b.inner(b.r_of(hi, kxx, xi), xi) / (2.0 * r2) -
                  2.0 * b.inner(b.k_of(xi, hi), kxkxx));
      total += 2.0 * h * h;
    }
    double h = (f * f2 * r2 / (knorm * knorm)) *
               (b.inner(b.nabla_k_g_of(kxx, xi, xi), kxx) - 2.0 * b.inner(kxkxx, kxkxx) +
                std::pow(knorm, 4) * (1.0 - knorm * knorm / r2) / r2);
    total += h * h;
  }
  return total;
}

double norm_h_squared(const StatisticalStructure& s, const SpherePoint& sp) {
  auto b = curvature_bundle(s, sp.tp.x);
  return norm_h_squared(b, sp);
}

double norm_h_squared_loop(const CurvatureBundle& b, const SpherePoint& sp) {
  SphereFrame fr = sphere_frame(b, sp);
  // Every frame pair through the public closed forms; the e* column enters
  // via bilinearity of the tangential-horizontal lift.
  struct Arg {
    SphereSlot slot;
    Vec base;
    double scale;
  };
  std::vector<Arg> args;
  for (const auto& v : fr.vert) args.push_back({SphereSlot::TangentVertical, v, 1.0});
  for (const auto& h : fr.horiz) args.push_back({SphereSlot::TangentHorizontal, h, 1.0});
  if (fr.has_estar) {
    double nn = fr.kxx_norm / (fr.f * sp.r);
    args.push_back({SphereSlot::TangentHorizontal, fr.kxx, 1.0 / nn});
  }
  double total = 0.0;
  for (const auto& A : args)
    for (const auto& B : args) {
      double h = A.scale * B.scale * second_fundamental_form(b, sp, A.slot, A.base, B.slot, B.base);
      total += h * h;
    }
  return total;
}

double ricci_normal_normal(const CurvatureBundle& b, const SpherePoint& sp) {
  require_on_sphere(b, sp);
  const auto& xi = sp.tp.xi;
  Vec kxx = b.k_of(xi, xi);
  double f2 = 1.0 / (sp.r * sp.r + b.inner(kxx, kxx));
  double vv = ricci_tg(b, xi, LiftKind::Vertical, xi, LiftKind::Vertical, xi);
  double vh = ricci_tg(b, xi, LiftKind::Vertical, xi, LiftKind::Horizontal, kxx);
  double hh = ricci_tg(b, xi, LiftKind::Horizontal, kxx, LiftKind::Horizontal, kxx);
  return f2 * (vv - 2.0 * vh + hh);
}

double scalar_sphere(const CurvatureBundle& b, const SpherePoint& sp) {
  double H = mean_curvature(b, sp);
  double h2 = norm_h_squared(b, sp);
  return scalar_tg(b, sp.tp.xi) - 2.0 * ricci_normal_normal(b, sp) + H * H - h2;
}

double scalar_sphere(const StatisticalStructure& s, const SpherePoint& sp) {
  auto b = curvature_bundle(s, sp.tp.x);
  return scalar_sphere(b, sp);
}

std::vector<double> lambda_grid(int halvings, double lambda_min) {
  if (halvings < 0) throw ConfigError("halvings must be nonnegative");
  std::vector<double> out;
  double l = 1.0;
  for (int k = 0; k <= halvings; ++k) {
    if (lambda_min > 0.0 && l < lambda_min) break;
    out.push_back(l);
    l *= 0.5;
  }
  if (out.empty()) throw ConfigError("empty lambda grid");
  return out;
}

std::vector<SpherePoint> sample_sphere_points(const StatisticalStructure& s, double r, int base_count,
                                              int fiber_count, std::uint64_t seed) {
  if (r <= 0.0) throw ConfigError("sphere radius must be positive");
  const int n = s.dim();
  const auto& box = s.domain();
  // Fixed base points: the center, then center +/- a quarter width along
  // each axis in order.
  std::vector<std::vector<double>> bases;
  std::vector<double> center(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    center[static_cast<std::size_t>(i)] = 0.5 * (box.lo[static_cast<std::size_t>(i)] + box.hi[static_cast<std::size_t>(i)]);
  bases.push_back(center);
  for (int k = 1; static_cast<int>(bases.size()) < base_count; ++k) {
    int axis = (k - 1) / 2 % n;
    double sign = (k % 2 == 0) ? -1.0 : 1.0;
    auto p = center;
    double width = box.hi[static_cast<std::size_t>(axis)] - box.lo[static_cast<std::size_t>(axis)];
    p[static_cast<std::size_t>(axis)] += sign * 0.25 * width * (1.0 + 0.3 * ((k - 1) / (2 * n)));
    for (int i = 0; i < n; ++i) {
      double w = box.hi[static_cast<std::size_t>(i)] - box.lo[static_cast<std::size_t>(i)];
      p[static_cast<std::size_t>(i)] = std::clamp(p[static_cast<std::size_t>(i)],
                                                  box.lo[static_cast<std::size_t>(i)] + 0.05 * w,
                                                  box.hi[static_cast<std::size_t>(i)] - 0.05 * w);
    }
    bases.push_back(std::move(p));
  }

  // Seeded direction set on the fiber sphere; a golden-angle spiral in
  // dimension 3, seeded uniform directions otherwise.
  Rng rng(seed);
  std::vector<std::vector<double>> dirs;
  if (n == 3) {
    double phase = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
    for (int i = 0; i < fiber_count; ++i) {
      double t = (i + 0.5) / fiber_count;
      double cz = 1.0 - 2.0 * t;
      double sz = std::sqrt(std::max(0.0, 1.0 - cz * cz));
      double ang = phase + 2.39996322972865332 * i;
      dirs.push_back({sz * std::cos(ang), sz * std::sin(ang), cz});
    }
  } else {
    for (int i = 0; i < fiber_count; ++i) {
      std::vector<double> d;
      double nn = 0.0;
      do {
        d = rng.vector_in_cube(n);
        nn = 0.0;
        for (double c : d) nn += c * c;
      } while (nn < 1e-4);
      for (auto& c : d) c /= std::sqrt(nn);
      dirs.push_back(std::move(d));
    }
  }

  std::vector<SpherePoint> pts;
  for (const auto& base : bases) {
    auto b = curvature_bundle(s, base);
    for (const auto& d : dirs) pts.push_back(make_sphere_point(b, d, r));
  }
  return pts;
}

std::vector<SweepRow> radius_sweep(const StatisticalStructure& s, const std::vector<SpherePoint>& points,
                                   const std::vector<double>& lambdas, std::uint64_t seed) {
  for (double l : lambdas)
    if (!(l > 0.0)) throw ConfigError("sweep lambda values must be positive");
  std::vector<SweepRow> rows;
  int idx = 0;
  for (const auto& sp : points) {
    auto b = curvature_bundle(s, sp.tp.x);
    for (double lam : lambdas) {
      SpherePoint scaled{TangentPoint{sp.tp.x, vscale(lam, sp.tp.xi)}, lam * sp.r};
      SweepRow row;
      row.structure = s.name();
      row.seed = seed;
      row.point_index = idx;
      row.lambda = lam;
      row.r_eff = scaled.r;
      row.H = mean_curvature(b, scaled);
      row.norm_h_sq = norm_h_squared(b, scaled);
      row.H2_minus_h2 = row.H * row.H - row.norm_h_sq;
      row.rho_tg = scalar_tg(b, scaled.tp.xi);
      row.ric_NN = ricci_normal_normal(b, scaled);
      row.rho_tilde = row.rho_tg - 2.0 * row.ric_NN + row.H2_minus_h2;
      rows.push_back(std::move(row));
    }
    ++idx;
  }
  return rows;
}

}  // namespace statgeom
