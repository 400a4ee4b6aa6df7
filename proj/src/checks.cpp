#include "statgeom/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "statgeom/rng.hpp"
#include "statgeom/sphere.hpp"
#include "statgeom/tangent.hpp"
#include "statgeom/tm_chart.hpp"

namespace statgeom {

double default_identity_tol(DerivMode mode) { return mode == DerivMode::DualNumber ? 1e-8 : 1e-4; }
double default_oracle_tol(DerivMode mode) { return mode == DerivMode::DualNumber ? 1e-6 : 1e-3; }

namespace {

using Vec = std::vector<double>;

struct Ctx {
  const GalleryEntry* entry;
  const StatisticalStructure* s;
  VerifyOptions opt;
  double id_tol;   // identity-class base tolerance
  double or_tol;   // oracle-class base tolerance
  StructureFlags flags;
  std::vector<Vec> base_pts;
  std::vector<TangentPoint> tps;
  std::vector<CheckResult> out;

  void add(const std::string& id, const std::string& ref, double residual, double tol, int points) {
    out.push_back(CheckResult{id, ref, residual, tol, residual <= tol, points});
  }
};

Vec tm_coords(const TangentPoint& tp) {
  Vec z = tp.x;
  z.insert(z.end(), tp.xi.begin(), tp.xi.end());
  return z;
}

double vmax(const Vec& v) {
  double m = 0.0;
  for (double c : v) m = std::max(m, std::abs(c));
  return m;
}

// ---------------------------------------------------------------- base ----

void base_checks(Ctx& c) {
  const auto& s = *c.s;
  const int n = s.dim();
  Rng rng(c.opt.seed ^ 0xBA5Eull);
  double duality = 0, pairing = 0, rsum = 0, assembly = 0, dtau = 0, divk = 0, ricdec = 0, scal = 0, cubic = 0;
  for (const auto& x : c.base_pts) {
    auto b = curvature_bundle(s, x);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double lhs = 0.0;
          for (int l = 0; l < n; ++l) {
            lhs += b.g[static_cast<std::size_t>(l) * n + k] *
                   b.gamma[(static_cast<std::size_t>(l) * n + i) * n + static_cast<std::size_t>(j)];
            lhs += b.g[static_cast<std::size_t>(j) * n + l] *
                   b.gamma_star[(static_cast<std::size_t>(l) * n + i) * n + static_cast<std::size_t>(k)];
          }
          duality = std::max(duality, std::abs(lhs - b.dg[(static_cast<std::size_t>(j) * n + k) * n + static_cast<std::size_t>(i)]));
        }

    Vec X = rng.vector_in_cube(n), Y = rng.vector_in_cube(n), Z = rng.vector_in_cube(n), W = rng.vector_in_cube(n);
    Vec rs(static_cast<std::size_t>(n), 0.0);
    for (int l = 0; l < n; ++l) {
      double sum = 0.0;
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            sum += b.Rstar[((static_cast<std::size_t>(l) * n + k) * n + static_cast<std::size_t>(i)) * n +
                           static_cast<std::size_t>(j)] *
                   W[static_cast<std::size_t>(k)] * X[static_cast<std::size_t>(i)] * Y[static_cast<std::size_t>(j)];
      rs[static_cast<std::size_t>(l)] = sum;
    }
    pairing = std::max(pairing, std::abs(b.inner(b.r_of(X, Y, Z), W) + b.inner(rs, Z)));

    for (std::size_t q = 0; q < b.R.size(); ++q)
      rsum = std::max(rsum, std::abs(b.R[q] + b.Rstar[q] - 2.0 * b.Rg[q] - 2.0 * b.KK[q]));

    Vec path_g = b.rg_of(X, Y, Z), path_s = b.rg_of(X, Y, Z), direct = b.r_of(X, Y, Z);
    auto a1 = b.nabla_k_g_of(X, Y, Z), a2 = b.nabla_k_g_of(Y, X, Z), kk = b.kk_of(X, Y, Z);
    auto s1 = b.nabla_k_of(X, Y, Z), s2 = b.nabla_k_of(Y, X, Z);
    for (int l = 0; l < n; ++l) {
      path_g[static_cast<std::size_t>(l)] += a1[static_cast<std::size_t>(l)] - a2[static_cast<std::size_t>(l)] + kk[static_cast<std::size_t>(l)];
      path_s[static_cast<std::size_t>(l)] += s1[static_cast<std::size_t>(l)] - s2[static_cast<std::size_t>(l)] - kk[static_cast<std::size_t>(l)];
      assembly = std::max(assembly, std::abs(path_g[static_cast<std::size_t>(l)] - direct[static_cast<std::size_t>(l)]));
      assembly = std::max(assembly, std::abs(path_s[static_cast<std::size_t>(l)] - direct[static_cast<std::size_t>(l)]));
    }

    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double tr = 0.0;
        for (int l = 0; l < n; ++l)
          tr += b.R[((static_cast<std::size_t>(l) * n + l) * n + static_cast<std::size_t>(i)) * n + static_cast<std::size_t>(j)];
        dtau = std::max(dtau, std::abs(tr - (b.nabla_tau[static_cast<std::size_t>(i) * n + j] -
                                             b.nabla_tau[static_cast<std::size_t>(j) * n + i])));
        double dv = 0.0;
        for (int a = 0; a < n; ++a)
          dv += b.nablaK[((static_cast<std::size_t>(a) * n + i) * n + static_cast<std::size_t>(j)) * n + static_cast<std::size_t>(a)];
        divk = std::max(divk, std::abs(dv - (b.ric[static_cast<std::size_t>(i) * n + j] -
                                             b.ric_g[static_cast<std::size_t>(i) * n + j] +
                                             b.ric_K[static_cast<std::size_t>(i) * n + j] +
                                             b.nabla_tau[static_cast<std::size_t>(i) * n + j])));
      }

    for (std::size_t q = 0; q < b.ric.size(); ++q)
      ricdec = std::max(ricdec, std::abs(b.ric[q] + b.ric_star[q] - 2.0 * b.ric_g[q] - 2.0 * b.ric_K[q]));

    double k2 = 0.0, tau2 = 0.0;
    for (int a = 0; a < n; ++a)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int a2 = 0; a2 < n; ++a2)
            for (int i2 = 0; i2 < n; ++i2)
              for (int j2 = 0; j2 < n; ++j2)
                k2 += b.K[(static_cast<std::size_t>(a) * n + i) * n + static_cast<std::size_t>(j)] *
                      b.K[(static_cast<std::size_t>(a2) * n + i2) * n + static_cast<std::size_t>(j2)] *
                      b.g[static_cast<std::size_t>(a) * n + a2] * b.ginv[static_cast<std::size_t>(i) * n + i2] *
                      b.ginv[static_cast<std::size_t>(j) * n + j2];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        tau2 += b.tau[static_cast<std::size_t>(i)] * b.tau[static_cast<std::size_t>(j)] * b.ginv[static_cast<std::size_t>(i) * n + j];
    scal = std::max(scal, std::abs(b.rho_g - (b.rho + k2 - tau2)));

    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
          double cijl = 0.0, cilj = 0.0;
          for (int a = 0; a < n; ++a) {
            cijl += b.g[static_cast<std::size_t>(a) * n + l] * b.K[(static_cast<std::size_t>(a) * n + i) * n + static_cast<std::size_t>(j)];
            cilj += b.g[static_cast<std::size_t>(a) * n + j] * b.K[(static_cast<std::size_t>(a) * n + i) * n + static_cast<std::size_t>(l)];
          }
          cubic = std::max(cubic, std::abs(cijl - cilj));
        }
  }
  const int np = static_cast<int>(c.base_pts.size());
  c.add("base.duality", "conjugate-connection pairing reproduces the metric derivative", duality, 0.1 * c.id_tol, np);
  c.add("base.curvature_pairing", "curvature of the conjugate pair is skew in the pairing", pairing, 0.1 * c.id_tol, np);
  c.add("base.curvature_sum", "R + R* equals twice the metric curvature plus twice [K,K]", rsum, 0.1 * c.id_tol, np);
  c.add("base.curvature_assembly", "direct coordinate curvature equals both covariant assemblies", assembly, c.id_tol, np);
  c.add("base.koszul_exact", "trace of R(X,Y) is the antisymmetrized second Koszul form", dtau, 0.1 * c.id_tol, np);
  c.add("base.k_divergence", "divergence of K splits into the Ricci family", divk, 0.1 * c.id_tol, np);
  c.add("base.ricci_decomposition", "Ric + Ric* = 2 Ric^g + 2 Ric^K", ricdec, 0.1 * c.id_tol, np);
  c.add("base.scalar_relation", "rho^g = rho + |K|^2 - |tau|^2", scal, 0.1 * c.id_tol, np);
  c.add("base.cubic_symmetry", "lowered difference tensor is totally symmetric", cubic, 0.01 * c.id_tol, np);

  double flag_residual = c.flags == c.entry->known_flags ? 0.0 : 1.0;
  c.add("base.classification", "classified flags match the registered expectation", flag_residual, 0.5, np);

  if (c.flags.conjugate_symmetric) {
    double worst = 0.0;
    for (const auto& x : c.base_pts) {
      auto b = curvature_bundle(s, x);
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            for (int m = 0; m < n; ++m)
              worst = std::max(worst, std::abs(b.nablaK_g[((static_cast<std::size_t>(k) * n + i) * n +
                                                           static_cast<std::size_t>(j)) * n + static_cast<std::size_t>(m)] -
                                               b.nablaK_g[((static_cast<std::size_t>(k) * n + m) * n +
                                                           static_cast<std::size_t>(j)) * n + static_cast<std::size_t>(i)]));
    }
    c.add("base.conjugate_symmetry", "metric covariant derivative of K is totally symmetric", worst, 0.1 * c.id_tol, np);
  }
}

// -------------------------------------------------------------- tangent ---

void tangent_checks(Ctx& c) {
  const auto& s = *c.s;
  const int n = s.dim();
  Rng rng(c.opt.seed ^ 0x7A9Cull);
  const int np = static_cast<int>(c.tps.size());

  double r1_anti = 0, r4_direct = 0, bianchi = 0, pair_sym = 0, special = 0, ric_trace = 0, scal_trace = 0,
         scal_zero = 0, sec_cross = 0, domega = 0, hermit = 0, lift_oracle = 0, conn_oracle = 0, curv_oracle = 0,
         ric_oracle = 0, scal_oracle = 0, nij_flat = 0;
  double nij_nonflat_max = 0.0;

  for (const auto& tp : c.tps) {
    auto b = curvature_bundle(s, tp.x);
    const auto& xi = tp.xi;

    Vec X = rng.vector_in_cube(n), Y = rng.vector_in_cube(n), Z = rng.vector_in_cube(n);
    // antisymmetrized R1 reproduces the mean curvature tensor
    auto lhs = b.r1_of(Z, Y, X);
    auto rhs = b.r1_of(Z, X, Y);
    for (int l = 0; l < n; ++l) {
      double frak = 0.0;
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            frak += b.frakR[((static_cast<std::size_t>(l) * n + k) * n + static_cast<std::size_t>(i)) * n +
                            static_cast<std::size_t>(j)] *
                    Z[static_cast<std::size_t>(k)] * X[static_cast<std::size_t>(i)] * Y[static_cast<std::size_t>(j)];
      r1_anti = std::max(r1_anti, std::abs(lhs[static_cast<std::size_t>(l)] - rhs[static_cast<std::size_t>(l)] - frak));
    }

    // norm of the curvature-contraction map against a raw index loop
    double direct = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        Vec fp = b.frame_vector(p), fq = b.frame_vector(q);
        Vec rv = b.r_of(fp, fq, xi);
        direct += b.inner(rv, rv);
      }
    r4_direct = std::max(r4_direct, std::abs(direct - r4_norm_sq(b, xi)));

    // first Bianchi and pair symmetries of the closed-form curvature
    auto gt = lift_metric(b);
    auto Rt = curvature_tg_adapted(b, xi);
    const int m = 2 * n;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) {
          for (int l = 0; l < m; ++l)
            bianchi = std::max(bianchi, std::abs(Rt.at({l, k, i, j}) + Rt.at({l, i, j, k}) + Rt.at({l, j, k, i})));
        }
    auto lowered = raise_lower(Rt, 0, gt);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
          for (int l = 0; l < m; ++l) {
            double v = lowered.at({l, k, i, j});
            pair_sym = std::max(pair_sym, std::abs(v + lowered.at({l, k, j, i})));
            pair_sym = std::max(pair_sym, std::abs(v + lowered.at({k, l, i, j})));
            // pair interchange: g(R(X,Y)Z,W) = g(R(Z,W)X,Y); slots (l,k,i,j) = (W,Z,X,Y)
            pair_sym = std::max(pair_sym, std::abs(v - lowered.at({j, i, k, l})));
          }

    // special-case formulas agree with the general dispatch
    if (c.flags.hessian || c.flags.conjugate_symmetric) {
      SpecialCase sc = c.flags.hessian ? SpecialCase::Hessian : SpecialCase::ConjugateSymmetric;
      for (LiftKind a : {LiftKind::Horizontal, LiftKind::Vertical})
        for (LiftKind bk : {LiftKind::Horizontal, LiftKind::Vertical})
          for (LiftKind ck : {LiftKind::Horizontal, LiftKind::Vertical}) {
            auto gen = curvature_tg(b, xi, a, X, bk, Y, ck, Z);
            auto spz = curvature_tg_special(b, xi, a, X, bk, Y, ck, Z, sc);
            special = std::max(special, vmax((gen - spz).h));
            special = std::max(special, vmax((gen - spz).v));
          }
    }

    // Ricci closed forms vs the frame trace of the curvature
    for (LiftKind a : {LiftKind::Horizontal, LiftKind::Vertical})
      for (LiftKind bk : {LiftKind::Horizontal, LiftKind::Vertical}) {
        double closed = ricci_tg(b, xi, a, X, bk, Y);
        double traced = ricci_tg_trace(b, xi, a, X, bk, Y);
        ric_trace = std::max(ric_trace, std::abs(closed - traced) / std::max(1.0, std::abs(traced)));
      }

    // scalar closed form vs the trace of the Ricci closed forms
    double tr = 0.0;
    for (int p = 0; p < n; ++p) {
      auto fp = b.frame_vector(p);
      tr += ricci_tg(b, xi, LiftKind::Horizontal, fp, LiftKind::Horizontal, fp);
      tr += ricci_tg(b, xi, LiftKind::Vertical, fp, LiftKind::Vertical, fp);
    }
    double closed_scalar = scalar_tg(b, xi);
    scal_trace = std::max(scal_trace, std::abs(closed_scalar - tr) / std::max(1.0, std::abs(tr)));

    // at the zero section the scalar reduces to the base expression
    Vec zero(static_cast<std::size_t>(n), 0.0);
    double at_zero = scalar_tg(b, zero);
    double expect = b.rho + 2.0 * trace_with_inverse_metric(n, b.ginv, b.nabla_tau);
    scal_zero = std::max(scal_zero, std::abs(at_zero - expect));

    // sectional cross-path: the hh closed form equals the curvature pairing
    {
      Vec e1 = b.frame_vector(0), e2 = b.frame_vector(1);
      double khh = sectional_tg(b, xi, SectionalPair::HH, e1, e2);
      auto rv = curvature_tg(b, xi, LiftKind::Horizontal, e1, LiftKind::Horizontal, e2, LiftKind::Horizontal, e2);
      double paired = lift_inner(b, rv, SplitVector::lift(LiftKind::Horizontal, e1));
      sec_cross = std::max(sec_cross, std::abs(khh - paired));
      double kvv = sectional_tg(b, xi, SectionalPair::VV, e1, e2);
      auto rvv = curvature_tg(b, xi, LiftKind::Vertical, e1, LiftKind::Vertical, e2, LiftKind::Vertical, e2);
      sec_cross = std::max(sec_cross, std::abs(kvv - lift_inner(b, rvv, SplitVector::lift(LiftKind::Vertical, e1))));
      double kvh = sectional_tg(b, xi, SectionalPair::VH, e1, e2);
      auto rvh = curvature_tg(b, xi, LiftKind::Vertical, e1, LiftKind::Horizontal, e2, LiftKind::Horizontal, e2);
      sec_cross = std::max(sec_cross, std::abs(kvh - lift_inner(b, rvh, SplitVector::lift(LiftKind::Vertical, e1))));
    }

    domega = std::max(domega, domega_residual(b, xi));

    // J is an isometry squaring to minus the identity
    {
      SplitVector A{rng.vector_in_cube(n), rng.vector_in_cube(n)};
      SplitVector B{rng.vector_in_cube(n), rng.vector_in_cube(n)};
      auto JJA = apply_J(apply_J(A));
      hermit = std::max(hermit, vmax((JJA + A).h) + vmax((JJA + A).v));
      hermit = std::max(hermit, std::abs(lift_inner(b, apply_J(A), apply_J(B)) - lift_inner(b, A, B)));
      hermit = std::max(hermit, std::abs(omega(b, A, B) + omega(b, B, A)));
    }

    double nij = nijenhuis_residual(b, xi);
    if (c.flags.hessian)
      nij_flat = std::max(nij_flat, nij);
    else
      nij_nonflat_max = std::max(nij_nonflat_max, nij);

    if (c.opt.with_oracle) {
      auto z = tm_coords(tp);
      auto gm = to_adapted(s, z, tm_metric(s, z));
      lift_oracle = std::max(lift_oracle, max_abs_diff(gt, gm));

      auto fc = frame_change(s, z);
      for (LiftKind ak : {LiftKind::Horizontal, LiftKind::Vertical})
        for (LiftKind bk : {LiftKind::Horizontal, LiftKind::Vertical}) {
          SplitVector closed = tnabla(b, xi, ak, X, bk, Y);
          auto field = [&s, bk, &Y, n](auto zs, auto out) {
            using T = std::remove_cvref_t<decltype(zs[0])>;
            std::span<const T> xs(zs.data(), static_cast<std::size_t>(n));
            for (auto& v : out) v = T(0.0);
            if (bk == LiftKind::Vertical) {
              for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(n + k)] = T(Y[static_cast<std::size_t>(k)]);
            } else {
              std::vector<T> gamma;
              s.christoffel_t(xs, ConnectionKind::Statistical, gamma);
              for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = T(Y[static_cast<std::size_t>(i)]);
              for (int k = 0; k < n; ++k) {
                T sum(0.0);
                for (int i = 0; i < n; ++i)
                  for (int a = 0; a < n; ++a)
                    sum = sum + gamma[(static_cast<std::size_t>(k) * n + i) * n + static_cast<std::size_t>(a)] *
                                    Y[static_cast<std::size_t>(i)] * zs[static_cast<std::size_t>(n + a)];
                out[static_cast<std::size_t>(n + k)] = -sum;
              }
            }
          };
          auto a_coord = lift_to_coord(fc, ak == LiftKind::Horizontal, X);
          auto dcoord = tm_covariant_derivative_of_field(s, z, a_coord, field);
          auto [h, v] = coord_to_adapted_vector(fc, dcoord);
          for (int l = 0; l < n; ++l) {
            conn_oracle = std::max(conn_oracle, std::abs(h[static_cast<std::size_t>(l)] - closed.h[static_cast<std::size_t>(l)]));
            conn_oracle = std::max(conn_oracle, std::abs(v[static_cast<std::size_t>(l)] - closed.v[static_cast<std::size_t>(l)]));
          }
        }

      auto oracleR = to_adapted(s, z, tm_curvature(s, z));
      curv_oracle = std::max(curv_oracle, rel_diff(Rt, oracleR));
      auto closed_ric = ricci_tg_adapted(b, xi);
      auto oracle_ric = to_adapted(s, z, tm_ricci(s, z));
      ric_oracle = std::max(ric_oracle, rel_diff(closed_ric, oracle_ric));
      double so = tm_scalar(s, z);
      scal_oracle = std::max(scal_oracle, std::abs(closed_scalar - so) / std::max(1.0, std::abs(so)));
    }
  }

  c.add("tangent.aux_r1", "antisymmetrized R1 equals the mean curvature tensor", r1_anti, 0.1 * c.id_tol, np);
  c.add("tangent.aux_r4", "frame sum for |R4(xi)|^2 equals the direct double loop", r4_direct, 0.01 * c.id_tol, np);
  c.add("tangent.bianchi", "first Bianchi identity for the lifted curvature", bianchi, c.id_tol, np);
  c.add("tangent.pair_symmetry", "lowered lifted curvature has all Riemann symmetries", pair_sym, c.id_tol, np);
  if (c.flags.hessian || c.flags.conjugate_symmetric)
    c.add("tangent.special_case", "specialized curvature formulas match the general dispatch", special, c.id_tol, np);
  c.add("tangent.ricci_trace", "Ricci closed forms equal the frame trace of the curvature", ric_trace, c.id_tol, np);
  c.add("tangent.scalar_trace", "scalar closed form equals the trace of the Ricci forms", scal_trace, c.id_tol, np);
  c.add("tangent.scalar_zero_section", "scalar at the zero section reduces to the base expression", scal_zero,
        1e-4 * c.id_tol, np);
  c.add("tangent.sectional_cross", "sectional closed forms equal the curvature pairing", sec_cross, 0.1 * c.id_tol, np);
  c.add("tangent.omega_closed", "the almost-symplectic form is closed", domega, 0.1 * c.id_tol, np);
  c.add("tangent.hermitian", "J squares to minus the identity and preserves the lifted metric", hermit,
        1e-4 * c.id_tol, np);
  if (c.flags.hessian)
    c.add("tangent.nijenhuis_flat", "Nijenhuis tensor of J vanishes for a flat statistical connection", nij_flat,
          10.0 * c.id_tol, np);
  else
    c.add("tangent.nijenhuis_nonflat", "Nijenhuis tensor detects a non-flat statistical connection",
          std::max(0.0, 1e-2 - nij_nonflat_max), 5e-3, np);
  if (c.opt.with_oracle) {
    c.add("tangent.metric_oracle", "lifted metric matches the frame-changed chart metric", lift_oracle,
          1e-4 * c.or_tol, np);
    c.add("tangent.connection_oracle", "lifted connection matches chart derivatives of the lifts", conn_oracle,
          0.1 * c.or_tol, np);
    c.add("tangent.curvature_oracle", "closed-form lifted curvature matches the chart oracle", curv_oracle,
          c.or_tol, np);
    c.add("tangent.ricci_oracle", "closed-form lifted Ricci matches the chart oracle", ric_oracle, c.or_tol, np);
    c.add("tangent.scalar_oracle", "closed-form lifted scalar matches the chart oracle", scal_oracle, c.or_tol, np);
  }
}

// --------------------------------------------------------------- sphere ---

void sphere_checks(Ctx& c) {
  const auto& s = *c.s;
  const int n = s.dim();
  Rng rng(c.opt.seed ^ 0x59EEull);
  const int np = c.opt.sphere_points;

  double normal_orth = 0, h_sym = 0, h_oracle = 0, self_adj = 0, mean_trace = 0, mean_oracle = 0, loop = 0,
         frob_oracle = 0, gauss = 0, symcurv = 0;

  for (int sp_i = 0; sp_i < np; ++sp_i) {
    auto x = rng.point_in_box(s.domain().lo, s.domain().hi, 0.1);
    auto b = curvature_bundle(s, x);
    auto sp = make_sphere_point(b, rng.vector_in_cube(n), 0.6 + 0.2 * (sp_i % 4));
    auto N = sphere_normal(b, sp);
    normal_orth = std::max(normal_orth, std::abs(lift_norm(b, N) - 1.0));
    for (int k = 0; k < 8; ++k) {
      auto X = rng.vector_in_cube(n);
      auto lifts = tangent_lifts(b, sp, X);
      normal_orth = std::max(normal_orth, std::abs(lift_inner(b, lifts.tv, N)));
      normal_orth = std::max(normal_orth, std::abs(lift_inner(b, lifts.th, N)));
    }

    {
      // symmetry of the closed forms across the two mixed variants
      auto X = rng.vector_in_cube(n);
      auto Y = rng.vector_in_cube(n);
      double cx = b.inner(sp.tp.xi, X) / (sp.r * sp.r);
      for (int i = 0; i < n; ++i) X[static_cast<std::size_t>(i)] -= cx * sp.tp.xi[static_cast<std::size_t>(i)];
      double m1 = second_fundamental_form(b, sp, SphereSlot::TangentVertical, X, SphereSlot::TangentHorizontal, Y);
      double m2 = second_fundamental_form(b, sp, SphereSlot::TangentHorizontal, Y, SphereSlot::TangentVertical, X);
      h_sym = std::max(h_sym, std::abs(m1 - m2));
    }

    // for_sec_h style symmetrization used inside the closed forms
    {
      auto X = rng.vector_in_cube(n);
      auto Y = rng.vector_in_cube(n);
      double lhs = 0.5 * b.inner(b.r_of(Y, X, sp.tp.xi), sp.tp.xi) + b.inner(b.nabla_k_g_of(X, sp.tp.xi, sp.tp.xi), Y);
      double rhs = 0.5 * (b.inner(b.nabla_k_g_of(X, sp.tp.xi, sp.tp.xi), Y) +
                          b.inner(b.nabla_k_g_of(Y, sp.tp.xi, sp.tp.xi), X));
      symcurv = std::max(symcurv, std::abs(lhs - rhs));
    }

    SphereFrame fr = sphere_frame(b, sp);
    auto tangents = fr.tangent_vectors();
    double h2_closed = norm_h_squared(b, sp);
    loop = std::max(loop, std::abs(h2_closed - norm_h_squared_loop(b, sp)));

    if (c.opt.with_oracle) {
      std::vector<SplitVector> S;
      for (const auto& A : tangents) S.push_back(shape_operator_oracle(s, sp, A));
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
      double trS = 0.0, frob = 0.0;
      for (std::size_t a = 0; a < tangents.size(); ++a) {
        trS += lift_inner(b, S[a], tangents[a]);
        for (std::size_t cc = 0; cc < tangents.size(); ++cc) {
          double sv = lift_inner(b, S[a], tangents[cc]);
          frob += sv * sv;
          self_adj = std::max(self_adj, std::abs(sv - lift_inner(b, S[cc], tangents[a])));
          double closed = args[a].scale * args[cc].scale *
                          second_fundamental_form(b, sp, args[a].slot, args[a].base, args[cc].slot, args[cc].base);
          h_oracle = std::max(h_oracle, std::abs(closed - sv));
        }
      }
      double H = mean_curvature(b, sp);
      mean_oracle = std::max(mean_oracle, std::abs(H - trS));
      frob_oracle = std::max(frob_oracle, std::abs(h2_closed - frob));

      // frame trace of the closed forms themselves
      double trh = 0.0;
      for (const auto& A : args)
        trh += A.scale * A.scale * second_fundamental_form(b, sp, A.slot, A.base, A.slot, A.base);
      mean_trace = std::max(mean_trace, std::abs(H - trh));

      // hypersurface scalar with every ingredient replaced by its oracle
      std::vector<double> z = tm_coords(sp.tp);
      double rho_o = tm_scalar(s, z);
      auto fc = frame_change(s, z);
      auto ncoord = adapted_to_coord_vector(fc, N.h, N.v);
      auto ric_o = tm_ricci(s, z);
      double ricnn = 0.0;
      const int m = 2 * n;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          ricnn += ric_o.at({i, j}) * ncoord[static_cast<std::size_t>(i)] * ncoord[static_cast<std::size_t>(j)];
      double assembled = rho_o - 2.0 * ricnn + trS * trS - frob;
      double closed = scalar_sphere(b, sp);
      gauss = std::max(gauss, std::abs(assembled - closed) / std::max(1.0, std::abs(closed)));
    } else {
      double H = mean_curvature(b, sp);
      double trh = 0.0;
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
      for (const auto& A : args)
        trh += A.scale * A.scale * second_fundamental_form(b, sp, A.slot, A.base, A.slot, A.base);
      mean_trace = std::max(mean_trace, std::abs(H - trh));
    }
  }

  c.add("sphere.normal", "unit normal is orthogonal to every tangential lift", normal_orth, 0.01 * c.id_tol, np);
  c.add("sphere.h_symmetric", "mixed second-fundamental-form variants agree", h_sym, 0.1 * c.id_tol, np);
  c.add("sphere.symmetrized_curvature", "curvature/derivative symmetrization identity", symcurv, 0.1 * c.id_tol, np);
  c.add("sphere.normh_loop", "block closed forms equal the naive frame double loop", loop, 0.1 * c.id_tol, np);
  c.add("sphere.mean_trace", "mean curvature equals the frame trace of the closed forms", mean_trace, c.id_tol, np);
  if (c.opt.with_oracle) {
    c.add("sphere.h_oracle", "second fundamental form matches the numeric shape operator", h_oracle, c.or_tol, np);
    c.add("sphere.shape_selfadjoint", "numeric shape operator is self-adjoint", self_adj, 0.1 * c.or_tol, np);
    c.add("sphere.mean_oracle", "mean curvature equals the numeric shape-operator trace", mean_oracle, c.or_tol, np);
    c.add("sphere.normh_oracle", "norm of the form matches the shape-operator Frobenius norm", frob_oracle,
          c.or_tol, np);
    c.add("sphere.gauss_assembly", "hypersurface scalar matches the all-oracle assembly", gauss, 10.0 * c.or_tol, np);
  }
}

void sweep_checks(Ctx& c) {
  const auto& s = *c.s;
  const double n = s.dim();
  auto pts = sample_sphere_points(s, 1.0, 2, 3, c.opt.seed ^ 0x5EEDull);
  auto lams = lambda_grid(8);
  auto rows = radius_sweep(s, pts, lams, c.opt.seed);
  double p1 = 0, pb = 0, pc = 0;
  for (const auto& row : rows) {
    auto b = curvature_bundle(s, pts[static_cast<std::size_t>(row.point_index)].tp.x);
    const auto& xi0 = pts[static_cast<std::size_t>(row.point_index)].tp.xi;
    auto kxx = b.k_of(xi0, xi0);
    double kxx2 = b.inner(kxx, kxx);
    double lam = row.lambda;
    double denom = lam * lam + std::pow(lam, 4) * kxx2;
    p1 = std::max(p1, std::abs(row.H * lam * std::sqrt(1.0 + lam * lam * kxx2) + (n - 1.0)));
    pb = std::max(pb, std::abs(row.norm_h_sq - (n - 1.0) / denom));
    pc = std::max(pc, std::abs(row.H2_minus_h2 - (n - 1.0) * (n - 2.0) / denom));
  }
  // Grid-wide regression constants; the singular parts are removed, the
  // remainders stay structure-scale.
  c.add("sweep.mean_bounded", "scaled mean curvature stays bounded along the halving grid", p1, 50.0,
        static_cast<int>(rows.size()));
  c.add("sweep.normh_bounded", "norm of the form minus its singular part stays bounded", pb, 100.0,
        static_cast<int>(rows.size()));
  c.add("sweep.h2_bounded", "H^2 - |h|^2 minus its singular part stays bounded", pc, 200.0,
        static_cast<int>(rows.size()));
}

}  // namespace

std::vector<CheckResult> run_verification(const GalleryEntry& entry, const VerifyOptions& opt) {
  Ctx c;
  c.entry = &entry;
  c.s = &entry.structure;
  c.opt = opt;
  DerivMode mode = entry.structure.deriv().mode;
  c.id_tol = opt.identity_tol > 0 ? opt.identity_tol : default_identity_tol(mode);
  c.or_tol = opt.oracle_tol > 0 ? opt.oracle_tol : default_oracle_tol(mode);

  Rng rng(opt.seed);
  for (int i = 0; i < opt.base_points; ++i)
    c.base_pts.push_back(rng.point_in_box(entry.structure.domain().lo, entry.structure.domain().hi, 0.08));
  const double norms[] = {0.0, 0.5, 1.0, 2.0};
  for (int i = 0; i < opt.tm_points; ++i) {
    TangentPoint tp;
    tp.x = rng.point_in_box(entry.structure.domain().lo, entry.structure.domain().hi, 0.08);
    tp.xi = rng.vector_in_cube(entry.structure.dim());
    double want = norms[i % 4];
    std::vector<double> g;
    entry.structure.metric_t(std::span<const double>(tp.x), g);
    double n2 = 0.0;
    const int n = entry.structure.dim();
    for (int a = 0; a < n; ++a)
      for (int bidx = 0; bidx < n; ++bidx)
        n2 += g[static_cast<std::size_t>(a) * n + bidx] * tp.xi[static_cast<std::size_t>(a)] * tp.xi[static_cast<std::size_t>(bidx)];
    double scale = want == 0.0 ? 0.0 : want / std::sqrt(n2);
    for (auto& v : tp.xi) v *= scale;
    c.tps.push_back(std::move(tp));
  }

  c.flags = sampled_flags(entry.structure, 0.0, 5, opt.seed ^ 0xF1A6ull);

  base_checks(c);
  tangent_checks(c);
  sphere_checks(c);
  if (opt.with_sweep) sweep_checks(c);
  return c.out;
}

bool all_pass(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace statgeom
