#include "statgeom/tangent.hpp"

#include <cmath>

#include "statgeom/rng.hpp"

namespace statgeom {

namespace {

using Vec = std::vector<double>;

Vec vadd(const Vec& a, const Vec& b) {
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}
Vec vsub(const Vec& a, const Vec& b) {
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}
Vec vscale(double c, const Vec& a) {
  Vec r = a;
  for (auto& v : r) v *= c;
  return r;
}
Vec& vaxpy(Vec& acc, double c, const Vec& a) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += c * a[i];
  return acc;
}

}  // namespace

SplitVector SplitVector::lift(LiftKind kind, std::span<const double> base) {
  SplitVector s = SplitVector::zero(static_cast<int>(base.size()));
  auto& part = kind == LiftKind::Horizontal ? s.h : s.v;
  std::copy(base.begin(), base.end(), part.begin());
  return s;
}

SplitVector operator+(const SplitVector& a, const SplitVector& b) { return {vadd(a.h, b.h), vadd(a.v, b.v)}; }
SplitVector operator-(const SplitVector& a, const SplitVector& b) { return {vsub(a.h, b.h), vsub(a.v, b.v)}; }
SplitVector operator*(double c, const SplitVector& a) { return {vscale(c, a.h), vscale(c, a.v)}; }

double lift_inner(const CurvatureBundle& b, const SplitVector& A, const SplitVector& B) {
  return b.inner(A.h, B.h) + b.inner(A.v, B.v);
}
double lift_norm(const CurvatureBundle& b, const SplitVector& A) { return std::sqrt(lift_inner(b, A, A)); }

DenseTensor lift_metric(const CurvatureBundle& b) {
  const int n = b.n;
  DenseTensor t(Frame{FrameKind::AdaptedTM, n}, {Variance::Lower, Variance::Lower});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double gij = b.g[static_cast<std::size_t>(i) * n + j];
      t.at({i, j}) = gij;
      t.at({n + i, n + j}) = gij;
    }
  return t;
}

DenseTensor lift_metric(const StatisticalStructure& s, const TangentPoint& tp) {
  auto b = curvature_bundle(s, tp.x);
  return lift_metric(b);
}

SplitVector tnabla(const CurvatureBundle& b, std::span<const double> xi, LiftKind a, std::span<const double> X,
                   LiftKind bk, std::span<const double> Y) {
  const int n = b.n;
  SplitVector out = SplitVector::zero(n);
  Vec xiv(xi.begin(), xi.end());
  if (a == LiftKind::Horizontal && bk == LiftKind::Horizontal) {
    // h part: Levi-Civita transport of Y along X; v part: -(1/2) R(X,Y)xi.
    for (int l = 0; l < n; ++l) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          s += b.gamma_g[(static_cast<std::size_t>(l) * n + i) * n + static_cast<std::size_t>(j)] *
               X[static_cast<std::size_t>(i)] * Y[static_cast<std::size_t>(j)];
      out.h[static_cast<std::size_t>(l)] = s;
    }
    out.v = vscale(-0.5, b.r_of(X, Y, xiv));
  } else if (a == LiftKind::Horizontal && bk == LiftKind::Vertical) {
    for (int l = 0; l < n; ++l) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          s += b.gamma_g[(static_cast<std::size_t>(l) * n + i) * n + static_cast<std::size_t>(j)] *
               X[static_cast<std::size_t>(i)] * Y[static_cast<std::size_t>(j)];
      out.v[static_cast<std::size_t>(l)] = s;
    }
    out.h = vscale(-1.0, b.r1_of(X, xiv, Y));
  } else if (a == LiftKind::Vertical && bk == LiftKind::Horizontal) {
    out.v = vscale(-1.0, b.k_of(Y, X));
    out.h = vscale(-1.0, b.r1_of(Y, xiv, X));
  } else {
    out.h = b.k_of(X, Y);
  }
  return out;
}

SplitVector tnabla(const StatisticalStructure& s, const TangentPoint& tp, LiftKind a, std::span<const double> X,
                   LiftKind bk, std::span<const double> Y) {
  auto b = curvature_bundle(s, tp.x);
  return tnabla(b, tp.xi, a, X, bk, Y);
}

SplitVector tnabla_lifted_K(const CurvatureBundle& b, std::span<const double> xi, LiftKind dir_kind,
                            std::span<const double> X, LiftKind field_kind) {
  const int n = b.n;
  Vec xiv(xi.begin(), xi.end());
  Vec kxx = b.k_of(xiv, xiv);
  SplitVector out = SplitVector::zero(n);
  if (dir_kind == LiftKind::Vertical && field_kind == LiftKind::Vertical) {
    out.h = b.k_of(X, kxx);
    out.v = vscale(2.0, b.k_of(X, xiv));
  } else if (dir_kind == LiftKind::Vertical && field_kind == LiftKind::Horizontal) {
    out.v = vscale(-1.0, b.k_of(X, kxx));
    out.h = vadd(vscale(-1.0, b.r1_of(kxx, xiv, X)), vscale(2.0, b.k_of(X, xiv)));
  } else if (dir_kind == LiftKind::Horizontal && field_kind == LiftKind::Horizontal) {
    out.v = vscale(-0.5, b.r_of(X, kxx, xiv));
    out.h = vsub(b.nabla_k_g_of(X, xiv, xiv), vscale(2.0, b.k_of(xiv, b.k_of(xiv, X))));
  } else {
    out.h = vscale(-1.0, b.r1_of(X, xiv, kxx));
    out.v = vsub(b.nabla_k_g_of(X, xiv, xiv), vscale(2.0, b.k_of(xiv, b.k_of(xiv, X))));
  }
  return out;
}

double r4_norm_sq(const CurvatureBundle& b, std::span<const double> V) {
  double s = 0.0;
  for (int a = 0; a < b.n; ++a)
    for (int c = 0; c < b.n; ++c) {
      Vec fa = b.frame_vector(a), fc = b.frame_vector(c);
      Vec rv = b.r_of(fa, fc, V);
      s += b.inner(rv, rv);
    }
  return s;
}

std::vector<double> AuxTensors::r1(std::span<const double> X, std::span<const double> Y,
                                   std::span<const double> Z) const {
  return bundle.r1_of(X, Y, Z);
}

std::vector<double> AuxTensors::r2_matrix(std::span<const double> U, std::span<const double> W) const {
  const int n = bundle.n;
  std::vector<double> m(static_cast<std::size_t>(n) * n, 0.0);
  for (int l = 0; l < n; ++l)
    for (int v = 0; v < n; ++v) {
      double s = 0.0;
      for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
          s += bundle.R[((static_cast<std::size_t>(l) * n + k) * n + static_cast<std::size_t>(v)) * n +
                        static_cast<std::size_t>(j)] *
               U[static_cast<std::size_t>(j)] * W[static_cast<std::size_t>(k)];
      m[static_cast<std::size_t>(l) * n + v] = s;
    }
  return m;
}

std::vector<double> AuxTensors::r3_form(std::span<const double> V, std::span<const double> W) const {
  const int n = bundle.n;
  std::vector<double> f(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec ei(static_cast<std::size_t>(n), 0.0), ej(static_cast<std::size_t>(n), 0.0);
      ei[static_cast<std::size_t>(i)] = 1.0;
      ej[static_cast<std::size_t>(j)] = 1.0;
      f[static_cast<std::size_t>(i) * n + j] = bundle.inner(bundle.r_of(ei, ej, V), W);
    }
  return f;
}

double AuxTensors::r4_norm_sq(std::span<const double> V) const { return statgeom::r4_norm_sq(bundle, V); }

AuxTensors aux(const StatisticalStructure& s, const TangentPoint& tp) {
  return AuxTensors{curvature_bundle(s, tp.x), tp.xi};
}

SplitVector curvature_tg(const CurvatureBundle& b, std::span<const double> xi, LiftKind a,
                         std::span<const double> X, LiftKind bk, std::span<const double> Y, LiftKind c,
                         std::span<const double> Z) {
  const int n = b.n;
  const Vec xiv(xi.begin(), xi.end());
  SplitVector out = SplitVector::zero(n);
  const bool av = a == LiftKind::Vertical, bv = bk == LiftKind::Vertical, cv = c == LiftKind::Vertical;

  if (av && bv && cv) {
    out.v = b.kk_of(Y, X, Z);
    out.h = vsub(b.r1_of(b.k_of(X, Z), xiv, Y), b.r1_of(b.k_of(Y, Z), xiv, X));
  } else if (av && bv && !cv) {
    out.v = vsub(b.k_of(b.r1_of(Z, xiv, Y), X), b.k_of(b.r1_of(Z, xiv, X), Y));
    out.h = b.rg_of(X, Y, Z);
    vaxpy(out.h, 1.0, b.r1_of(b.r1_of(Z, xiv, Y), xiv, X));
    vaxpy(out.h, -1.0, b.r1_of(b.r1_of(Z, xiv, X), xiv, Y));
  } else if (av && !bv && !cv) {
    out.v = vscale(-0.5, b.r_of(Y, Z, X));
    vaxpy(out.v, 1.0, b.kk_of(X, Y, Z));
    vaxpy(out.v, 1.0, b.nabla_k_of(Y, X, Z));
    vaxpy(out.v, -0.5, b.r_of(Y, b.r1_of(Z, xiv, X), xiv));
    out.h = vscale(-0.5, b.k_of(X, b.r_of(Y, Z, xiv)));
    vaxpy(out.h, 1.0, b.r1_of(b.k_of(Y, Z), xiv, X));
    vaxpy(out.h, 1.0, b.nabla_r1_of(Y, Z, xiv, X));
    vaxpy(out.h, -1.0, b.k_of(Y, b.r1_of(Z, xiv, X)));
    vaxpy(out.h, -1.0, b.r1_of(Y, xiv, b.k_of(X, Z)));
  } else if (av && !bv && cv) {
    out.v = b.k_of(b.r1_of(Y, xiv, Z), X);
    vaxpy(out.v, 0.5, b.r_of(Y, b.k_of(X, Z), xiv));
    out.h = b.kk_of(Y, X, Z);
    vaxpy(out.h, 1.0, b.r1_of(b.r1_of(Y, xiv, Z), xiv, X));
    vaxpy(out.h, -1.0, b.r1_of(Y, X, Z));
    vaxpy(out.h, -1.0, b.nabla_k_of(Y, X, Z));
  } else if (!av && !bv && !cv) {
    out.h = b.rg_of(X, Y, Z);
    vaxpy(out.h, 0.5, b.r1_of(X, xiv, b.r_of(Y, Z, xiv)));
    vaxpy(out.h, -0.5, b.r1_of(Y, xiv, b.r_of(X, Z, xiv)));
    vaxpy(out.h, -1.0, b.r1_of(Z, xiv, b.r_of(X, Y, xiv)));
    out.v = vscale(0.5, b.nabla_r_of(Z, X, Y, xiv));
    vaxpy(out.v, -0.5, b.r_of(Y, b.k_of(X, Z), xiv));
    vaxpy(out.v, 0.5, b.r_of(X, b.k_of(Y, Z), xiv));
    vaxpy(out.v, 0.5, b.k_of(X, b.r_of(Y, Z, xiv)));
    vaxpy(out.v, -0.5, b.k_of(Y, b.r_of(X, Z, xiv)));
    vaxpy(out.v, -1.0, b.k_of(Z, b.r_of(X, Y, xiv)));
  } else if (!av && !bv && cv) {
    out.v = b.rg_of(X, Y, Z);
    vaxpy(out.v, 0.5, b.r_of(X, b.r1_of(Y, xiv, Z), xiv));
    vaxpy(out.v, -0.5, b.r_of(Y, b.r1_of(X, xiv, Z), xiv));
    out.h = b.nabla_r1_of(Y, X, xiv, Z);
    vaxpy(out.h, -1.0, b.nabla_r1_of(X, Y, xiv, Z));
    vaxpy(out.h, 1.0, b.k_of(X, b.r1_of(Y, xiv, Z)));
    vaxpy(out.h, -1.0, b.k_of(Y, b.r1_of(X, xiv, Z)));
    vaxpy(out.h, 1.0, b.k_of(b.r_of(X, Y, xiv), Z));
    vaxpy(out.h, 1.0, b.r1_of(X, xiv, b.k_of(Y, Z)));
    vaxpy(out.h, -1.0, b.r1_of(Y, xiv, b.k_of(X, Z)));
  } else {
    // First slot horizontal, second vertical: antisymmetry in the pair.
    SplitVector m = curvature_tg(b, xi, bk, Y, a, X, c, Z);
    out = SplitVector{vscale(-1.0, m.h), vscale(-1.0, m.v)};
  }
  return out;
}

SplitVector curvature_tg(const StatisticalStructure& s, const TangentPoint& tp, LiftKind a,
                         std::span<const double> X, LiftKind bk, std::span<const double> Y, LiftKind c,
                         std::span<const double> Z) {
  auto b = curvature_bundle(s, tp.x);
  return curvature_tg(b, tp.xi, a, X, bk, Y, c, Z);
}

SplitVector curvature_tg_special(const CurvatureBundle& b, std::span<const double> xi, LiftKind a,
                                 std::span<const double> X, LiftKind bk, std::span<const double> Y, LiftKind c,
                                 std::span<const double> Z, SpecialCase sc) {
  const int n = b.n;
  const Vec xiv(xi.begin(), xi.end());
  const bool av = a == LiftKind::Vertical, bv = bk == LiftKind::Vertical, cv = c == LiftKind::Vertical;
  SplitVector out = SplitVector::zero(n);

  if (sc == SpecialCase::Hessian) {
    // Flat statistical connection: R = 0, R^g = -[K,K], every curvature
    // block reduces to [K_Y,K_X]Z and the statistical nabla K.
    if (av && bv && cv) {
      out.v = b.kk_of(Y, X, Z);
    } else if (av && bv && !cv) {
      out.h = b.kk_of(Y, X, Z);
    } else if (av && !bv && !cv) {
      out.v = vsub(b.nabla_k_of(Y, X, Z), b.kk_of(Y, X, Z));
    } else if (av && !bv && cv) {
      out.h = vsub(b.kk_of(Y, X, Z), b.nabla_k_of(Y, X, Z));
    } else if (!av && !bv && !cv) {
      out.h = b.kk_of(Y, X, Z);
    } else if (!av && !bv && cv) {
      out.v = b.kk_of(Y, X, Z);
    } else {
      SplitVector m = curvature_tg_special(b, xi, bk, Y, a, X, c, Z, sc);
      out = SplitVector{vscale(-1.0, m.h), vscale(-1.0, m.v)};
    }
    return out;
  }

  // Conjugate symmetric: R1(A,B,C) = (1/2) R(C,B)A and the same identity
  // for the covariant derivatives, substituted into the general formulas.
  if (av && bv && cv) {
    out.v = b.kk_of(Y, X, Z);
    out.h = vscale(0.5, b.r_of(Y, xiv, b.k_of(X, Z)));
    vaxpy(out.h, -0.5, b.r_of(X, xiv, b.k_of(Y, Z)));
  } else if (av && bv && !cv) {
    out.v = vscale(0.5, b.k_of(b.r_of(Y, xiv, Z), X));
    vaxpy(out.v, -0.5, b.k_of(b.r_of(X, xiv, Z), Y));
    out.h = b.rg_of(X, Y, Z);
    vaxpy(out.h, 0.25, b.r_of(X, xiv, b.r_of(Y, xiv, Z)));
    vaxpy(out.h, -0.25, b.r_of(Y, xiv, b.r_of(X, xiv, Z)));
  } else if (av && !bv && !cv) {
    out.v = vscale(-0.5, b.r_of(Y, Z, X));
    vaxpy(out.v, 1.0, b.kk_of(X, Y, Z));
    vaxpy(out.v, 1.0, b.nabla_k_of(Y, X, Z));
    vaxpy(out.v, -0.25, b.r_of(Y, b.r_of(X, xiv, Z), xiv));
    out.h = vscale(-0.5, b.k_of(X, b.r_of(Y, Z, xiv)));
    vaxpy(out.h, 0.5, b.r_of(X, xiv, b.k_of(Y, Z)));
    vaxpy(out.h, 0.5, b.nabla_r_of(Y, X, xiv, Z));
    vaxpy(out.h, -0.5, b.k_of(Y, b.r_of(X, xiv, Z)));
    vaxpy(out.h, -0.5, b.r_of(b.k_of(X, Z), xiv, Y));
  } else if (av && !bv && cv) {
    out.v = vscale(0.5, b.k_of(b.r_of(Z, xiv, Y), X));
    vaxpy(out.v, 0.5, b.r_of(Y, b.k_of(X, Z), xiv));
    out.h = b.kk_of(Y, X, Z);
    vaxpy(out.h, 0.25, b.r_of(X, xiv, b.r_of(Z, xiv, Y)));
    vaxpy(out.h, -0.5, b.r_of(Z, X, Y));
    vaxpy(out.h, -1.0, b.nabla_k_of(Y, X, Z));
  } else if (!av && !bv && !cv) {
    out.h = b.rg_of(X, Y, Z);
    vaxpy(out.h, 0.25, b.r_of(b.r_of(Y, Z, xiv), xiv, X));
    vaxpy(out.h, -0.25, b.r_of(b.r_of(X, Z, xiv), xiv, Y));
    vaxpy(out.h, -0.5, b.r_of(b.r_of(X, Y, xiv), xiv, Z));
    out.v = vscale(0.5, b.nabla_r_of(Z, X, Y, xiv));
    vaxpy(out.v, -0.5, b.r_of(Y, b.k_of(X, Z), xiv));
    vaxpy(out.v, 0.5, b.r_of(X, b.k_of(Y, Z), xiv));
    vaxpy(out.v, 0.5, b.k_of(X, b.r_of(Y, Z, xiv)));
    vaxpy(out.v, -0.5, b.k_of(Y, b.r_of(X, Z, xiv)));
    vaxpy(out.v, -1.0, b.k_of(Z, b.r_of(X, Y, xiv)));
  } else if (!av && !bv && cv) {
    out.v = b.rg_of(X, Y, Z);
    vaxpy(out.v, 0.25, b.r_of(X, b.r_of(Z, xiv, Y), xiv));
    vaxpy(out.v, -0.25, b.r_of(Y, b.r_of(Z, xiv, X), xiv));
    out.h = vscale(0.5, b.nabla_r_of(Y, Z, xiv, X));
    vaxpy(out.h, -0.5, b.nabla_r_of(X, Z, xiv, Y));
    vaxpy(out.h, 0.5, b.k_of(X, b.r_of(Z, xiv, Y)));
    vaxpy(out.h, -0.5, b.k_of(Y, b.r_of(Z, xiv, X)));
    vaxpy(out.h, 1.0, b.k_of(b.r_of(X, Y, xiv), Z));
    vaxpy(out.h, 0.5, b.r_of(b.k_of(Y, Z), xiv, X));
    vaxpy(out.h, -0.5, b.r_of(b.k_of(X, Z), xiv, Y));
  } else {
    SplitVector m = curvature_tg_special(b, xi, bk, Y, a, X, c, Z, sc);
    out = SplitVector{vscale(-1.0, m.h), vscale(-1.0, m.v)};
  }
  return out;
}

StructureFlags sampled_flags(const StatisticalStructure& s, double tol, int points, std::uint64_t seed) {
  if (tol <= 0.0) tol = s.deriv().mode == DerivMode::DualNumber ? 1e-7 : 1e-4;
  Rng rng(seed);
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < points; ++i) pts.push_back(rng.point_in_box(s.domain().lo, s.domain().hi, 0.05));
  return classify(s, pts, tol);
}

SplitVector curvature_tg_special(const StatisticalStructure& s, const TangentPoint& tp, LiftKind a,
                                 std::span<const double> X, LiftKind bk, std::span<const double> Y, LiftKind c,
                                 std::span<const double> Z, SpecialCase sc) {
  StructureFlags f = sampled_flags(s);
  if (sc == SpecialCase::Hessian && !f.hessian)
    throw ClassificationError("structure " + s.name() + " is not Hessian");
  if (sc == SpecialCase::ConjugateSymmetric && !f.conjugate_symmetric)
    throw ClassificationError("structure " + s.name() + " is not conjugate symmetric");
  auto b = curvature_bundle(s, tp.x);
  return curvature_tg_special(b, tp.xi, a, X, bk, Y, c, Z, sc);
}

namespace {

double nabla_tau_of(const CurvatureBundle& b, std::span<const double> X, std::span<const double> Y) {
  double s = 0.0;
  for (int i = 0; i < b.n; ++i)
    for (int j = 0; j < b.n; ++j)
      s += b.nabla_tau[static_cast<std::size_t>(i) * b.n + j] * X[static_cast<std::size_t>(i)] *
           Y[static_cast<std::size_t>(j)];
  return s;
}

double ric_pair(const CurvatureBundle& b, const std::vector<double>& ric, std::span<const double> Y,
                std::span<const double> Z) {
  double s = 0.0;
  for (int i = 0; i < b.n; ++i)
    for (int j = 0; j < b.n; ++j)
      s += ric[static_cast<std::size_t>(i) * b.n + j] * Y[static_cast<std::size_t>(i)] * Z[static_cast<std::size_t>(j)];
  return s;
}

}  // namespace

double ricci_tg(const CurvatureBundle& b, std::span<const double> xi, LiftKind a, std::span<const double> Y,
                LiftKind bk, std::span<const double> Z) {
  const int n = b.n;
  const Vec xiv(xi.begin(), xi.end());
  const bool av = a == LiftKind::Vertical, bv = bk == LiftKind::Vertical;
  if (av && bv) {
    // (1/2)(Ric - Ric*) + nabla tau + (1/4) <R(.,.)xi paired with Y and Z>.
    // The quadratic term carries a plus sign: it is the frame sum of the
    // nonnegative mixed sectional contributions.
    double val = 0.5 * (ric_pair(b, b.ric, Y, Z) - ric_pair(b, b.ric_star, Y, Z)) + nabla_tau_of(b, Y, Z);
    double quad = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        Vec fp = b.frame_vector(p), fq = b.frame_vector(q);
        Vec rv = b.r_of(fp, fq, xiv);
        quad += b.inner(rv, Y) * b.inner(rv, Z);
      }
    return val + 0.25 * quad;
  }
  if (!av && !bv) {
    double val = ric_pair(b, b.frak_ric, Y, Z) + 0.5 * nabla_tau_of(b, Y, Z) + 0.5 * nabla_tau_of(b, Z, Y);
    double quad = 0.0;
    for (int p = 0; p < n; ++p) {
      Vec fp = b.frame_vector(p);
      quad += b.inner(b.r_of(fp, Y, xiv), b.r_of(fp, Z, xiv));
    }
    return val - 0.5 * quad;
  }
  if (!av && bv) return ricci_tg(b, xi, bk, Z, a, Y);
  // vertical Y, horizontal Z:
  //   -(1/2) tr_g g((nabla_. R)(., Z) xi, Y) + <R2(Z, xi), K_Y>.
  double div_term = 0.0, k_term = 0.0;
  for (int p = 0; p < n; ++p) {
    Vec fp = b.frame_vector(p);
    div_term += b.inner(b.nabla_r_of(fp, fp, Z, xiv), Y);
    k_term += b.inner(b.r_of(fp, Z, xiv), b.k_of(Y, fp));
  }
  return -0.5 * div_term + k_term;
}

double ricci_tg(const StatisticalStructure& s, const TangentPoint& tp, LiftKind a, std::span<const double> Y,
                LiftKind bk, std::span<const double> Z) {
  auto b = curvature_bundle(s, tp.x);
  return ricci_tg(b, tp.xi, a, Y, bk, Z);
}

double scalar_tg(const CurvatureBundle& b, std::span<const double> xi) {
  double tr_ntau = trace_with_inverse_metric(b.n, b.ginv, b.nabla_tau);
  return b.rho + 2.0 * tr_ntau - 0.25 * r4_norm_sq(b, xi);
}

double scalar_tg(const StatisticalStructure& s, const TangentPoint& tp) {
  auto b = curvature_bundle(s, tp.x);
  return scalar_tg(b, tp.xi);
}

double sectional_tg(const CurvatureBundle& b, std::span<const double> xi, SectionalPair pair,
                    std::span<const double> X, std::span<const double> Y) {
  const Vec xiv(xi.begin(), xi.end());
  const double tol = 1e-9;
  double nx = b.inner(X, X), ny = b.inner(Y, Y), cross = b.inner(X, Y);
  if (std::abs(nx - 1.0) > tol || std::abs(ny - 1.0) > tol)
    throw NormalizationError("sectional_tg: vectors must be unit");
  if (pair != SectionalPair::VH && std::abs(cross) > tol)
    throw NormalizationError("sectional_tg: plane vectors must be orthogonal");
  switch (pair) {
    case SectionalPair::VV:
      return -b.inner(b.kk_of(X, Y, Y), X);
    case SectionalPair::HH: {
      Vec rxy = b.r_of(X, Y, xiv);
      return b.inner(b.rg_of(X, Y, Y), X) - 0.75 * b.inner(rxy, rxy);
    }
    case SectionalPair::VH: {
      Vec r1v = b.r1_of(Y, xiv, X);
      return b.inner(b.kk_of(X, Y, Y), X) + b.inner(b.nabla_k_of(Y, X, Y), X) + b.inner(r1v, r1v);
    }
  }
  return 0.0;
}

double sectional_tg(const StatisticalStructure& s, const TangentPoint& tp, SectionalPair pair,
                    std::span<const double> X, std::span<const double> Y) {
  auto b = curvature_bundle(s, tp.x);
  return sectional_tg(b, tp.xi, pair, X, Y);
}

SplitVector apply_J(const SplitVector& A) {
  // J X^v = X^h, J X^h = -X^v.
  return {A.v, vscale(-1.0, A.h)};
}

double omega(const CurvatureBundle& b, const SplitVector& A, const SplitVector& B) {
  return lift_inner(b, apply_J(A), B);
}

namespace {

struct LiftedBasis {
  LiftKind kind;
  int index;
};

LiftedBasis basis_of(int a, int n) {
  return a < n ? LiftedBasis{LiftKind::Horizontal, a} : LiftedBasis{LiftKind::Vertical, a - n};
}

Vec unit(int n, int i) {
  Vec v(static_cast<std::size_t>(n), 0.0);
  v[static_cast<std::size_t>(i)] = 1.0;
  return v;
}

// Bracket of two lifted coordinate fields, evaluated at (x, xi):
//   [v, v] = 0, [h_i, v_j] = (Gamma(e_i, e_j))^v,
//   [h_i, h_j] = -(R(e_i, e_j) xi)^v.
SplitVector bracket_lifted(const CurvatureBundle& b, const Vec& xiv, LiftedBasis A, LiftedBasis B) {
  const int n = b.n;
  SplitVector out = SplitVector::zero(n);
  if (A.kind == LiftKind::Vertical && B.kind == LiftKind::Vertical) return out;
  if (A.kind == LiftKind::Horizontal && B.kind == LiftKind::Horizontal) {
    out.v = vscale(-1.0, b.r_of(unit(n, A.index), unit(n, B.index), xiv));
    return out;
  }
  int hi = A.kind == LiftKind::Horizontal ? A.index : B.index;
  int vi = A.kind == LiftKind::Vertical ? A.index : B.index;
  double sign = A.kind == LiftKind::Horizontal ? 1.0 : -1.0;
  for (int l = 0; l < n; ++l)
    out.v[static_cast<std::size_t>(l)] =
        sign * b.gamma[(static_cast<std::size_t>(l) * n + hi) * n + static_cast<std::size_t>(vi)];
  return out;
}

SplitVector lifted_unit(const CurvatureBundle& b, LiftedBasis A) {
  return SplitVector::lift(A.kind, unit(b.n, A.index));
}

// omega between lifted coordinate fields is g_ij (a function of the base
// point only); its derivative along a lift is the base derivative for
// horizontal directions and zero for vertical ones.
double domega_term_derivative(const CurvatureBundle& b, LiftedBasis A, LiftedBasis B, LiftedBasis C) {
  if (A.kind != LiftKind::Horizontal) return 0.0;
  double sign;
  if (B.kind == LiftKind::Vertical && C.kind == LiftKind::Horizontal)
    sign = 1.0;
  else if (B.kind == LiftKind::Horizontal && C.kind == LiftKind::Vertical)
    sign = -1.0;
  else
    return 0.0;
  // d_m g_ij with m = A.index.
  auto& dg = b.dg;
  const int n = b.n;
  return sign * dg[(static_cast<std::size_t>(B.index) * n + static_cast<std::size_t>(C.index)) * n +
                   static_cast<std::size_t>(A.index)];
}

}  // namespace

double domega_residual(const CurvatureBundle& b, std::span<const double> xi) {
  const int n = b.n;
  const Vec xiv(xi.begin(), xi.end());
  double worst = 0.0;
  for (int a = 0; a < 2 * n; ++a)
    for (int bb = a + 1; bb < 2 * n; ++bb)
      for (int c = bb + 1; c < 2 * n; ++c) {
        LiftedBasis A = basis_of(a, n), B = basis_of(bb, n), C = basis_of(c, n);
        double d = domega_term_derivative(b, A, B, C) - domega_term_derivative(b, B, A, C) +
                   domega_term_derivative(b, C, A, B);
        d -= omega(b, bracket_lifted(b, xiv, A, B), lifted_unit(b, C));
        d += omega(b, bracket_lifted(b, xiv, A, C), lifted_unit(b, B));
        d -= omega(b, bracket_lifted(b, xiv, B, C), lifted_unit(b, A));
        worst = std::max(worst, std::abs(d));
      }
  return worst;
}

double nijenhuis_residual(const CurvatureBundle& b, std::span<const double> xi) {
  const int n = b.n;
  const Vec xiv(xi.begin(), xi.end());

  // J of a lifted coordinate field is again a lifted coordinate field (up
  // to sign), so all brackets reduce to the lifted-bracket table.
  auto jb = [&](LiftedBasis A) {
    // J h_i = -v_i, J v_i = h_i; track sign separately.
    if (A.kind == LiftKind::Horizontal) return std::pair<LiftedBasis, double>{{LiftKind::Vertical, A.index}, -1.0};
    return std::pair<LiftedBasis, double>{{LiftKind::Horizontal, A.index}, 1.0};
  };

  double worst = 0.0;
  for (int a = 0; a < 2 * n; ++a)
    for (int c = a + 1; c < 2 * n; ++c) {
      LiftedBasis A = basis_of(a, n), B = basis_of(c, n);
      auto [JA, sa] = jb(A);
      auto [JB, sb] = jb(B);
      SplitVector t1 = sa * sb * bracket_lifted(b, xiv, JA, JB);
      SplitVector t2 = apply_J(sa * bracket_lifted(b, xiv, JA, B));
      SplitVector t3 = apply_J(sb * bracket_lifted(b, xiv, A, JB));
      SplitVector t4 = bracket_lifted(b, xiv, A, B);
      SplitVector nij = t1 - t2 - t3 - t4;
      worst = std::max(worst, lift_norm(b, nij));
    }
  return worst;
}

DenseTensor curvature_tg_adapted(const CurvatureBundle& b, std::span<const double> xi) {
  const int n = b.n;
  DenseTensor t(Frame{FrameKind::AdaptedTM, n},
                {Variance::Upper, Variance::Lower, Variance::Lower, Variance::Lower});
  for (int i = 0; i < 2 * n; ++i)
    for (int j = 0; j < 2 * n; ++j)
      for (int k = 0; k < 2 * n; ++k) {
        LiftedBasis X = basis_of(i, n), Y = basis_of(j, n), Z = basis_of(k, n);
        SplitVector r = curvature_tg(b, xi, X.kind, unit(n, X.index), Y.kind, unit(n, Y.index), Z.kind,
                                     unit(n, Z.index));
        for (int l = 0; l < n; ++l) {
          t.at({l, k, i, j}) = r.h[static_cast<std::size_t>(l)];
          t.at({n + l, k, i, j}) = r.v[static_cast<std::size_t>(l)];
        }
      }
  return t;
}

DenseTensor ricci_tg_adapted(const CurvatureBundle& b, std::span<const double> xi) {
  const int n = b.n;
  DenseTensor t(Frame{FrameKind::AdaptedTM, n}, {Variance::Lower, Variance::Lower});
  for (int i = 0; i < 2 * n; ++i)
    for (int j = 0; j < 2 * n; ++j) {
      LiftedBasis Y = basis_of(i, n), Z = basis_of(j, n);
      t.at({i, j}) = ricci_tg(b, xi, Y.kind, unit(n, Y.index), Z.kind, unit(n, Z.index));
    }
  return t;
}

double ricci_tg_trace(const CurvatureBundle& b, std::span<const double> xi, LiftKind a,
                      std::span<const double> Y, LiftKind bk, std::span<const double> Z) {
  double s = 0.0;
  for (int p = 0; p < b.n; ++p) {
    Vec fp = b.frame_vector(p);
    for (LiftKind k : {LiftKind::Horizontal, LiftKind::Vertical}) {
      SplitVector r = curvature_tg(b, xi, k, fp, a, Y, bk, Z);
      s += lift_inner(b, r, SplitVector::lift(k, fp));
    }
  }
  return s;
}

}  // namespace statgeom
