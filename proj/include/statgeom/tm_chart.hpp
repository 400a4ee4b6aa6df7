#pragma once

#include <span>
#include <vector>

#include "statgeom/statistical.hpp"

namespace statgeom {

// Brute-force oracle: the lifted metric written out in the induced chart
// (x^1..x^n, xi^1..xi^n) on TM and treated as a plain 2n-dimensional
// Riemannian metric. Everything here is generic coordinate geometry; no
// closed-form results from the lifted-metric layer enter.

/// Which base connection builds the horizontal distribution. The default is
/// the statistical connection; LeviCivita reproduces the classical
/// construction (identical when K = 0).
struct TMChartOptions {
  ConnectionKind horizontal = ConnectionKind::Statistical;
};

/// Metric components G(z), z = (x, xi):
///   G = g_ij dx^i dx^j + g_kl theta^k theta^l,
///   theta^k = dxi^k + A^k_i dx^i,  A^k_i = Gamma^k_{ia}(x) xi^a.
template <class S>
void tm_metric_t(const StatisticalStructure& s, std::span<const S> z, std::vector<S>& G,
                 TMChartOptions opt = {}) {
  const int n = s.dim();
  const int m = 2 * n;
  std::span<const S> x = z.subspan(0, static_cast<std::size_t>(n));
  std::vector<S> g, gamma;
  s.metric_t(x, g);
  s.christoffel_t(x, opt.horizontal, gamma);
  std::vector<S> A(static_cast<std::size_t>(n) * n, S(0.0));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      S sum(0.0);
      for (int a = 0; a < n; ++a)
        sum = sum + gamma[(static_cast<std::size_t>(k) * n + i) * n + static_cast<std::size_t>(a)] *
                        z[static_cast<std::size_t>(n + a)];
      A[static_cast<std::size_t>(k) * n + i] = sum;
    }
  G.assign(static_cast<std::size_t>(m) * m, S(0.0));
  auto at = [&](int r, int c) -> S& { return G[static_cast<std::size_t>(r) * m + c]; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      S xx = g[static_cast<std::size_t>(i) * n + j];
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          xx = xx + g[static_cast<std::size_t>(k) * n + l] * A[static_cast<std::size_t>(k) * n + i] *
                        A[static_cast<std::size_t>(l) * n + j];
      at(i, j) = xx;
      at(n + i, n + j) = g[static_cast<std::size_t>(i) * n + j];
      S xv(0.0);
      for (int k = 0; k < n; ++k)
        xv = xv + g[static_cast<std::size_t>(k) * n + j] * A[static_cast<std::size_t>(k) * n + i];
      at(i, n + j) = xv;
      at(n + j, i) = xv;
    }
}

template <class S>
void tm_christoffel_t(const StatisticalStructure& s, std::span<const S> z, std::vector<S>& gamma,
                      TMChartOptions opt = {}) {
  auto gfn = [&s, opt](auto zs, auto out) {
    using T = std::remove_cvref_t<decltype(zs[0])>;
    std::vector<T> G;
    tm_metric_t(s, std::span<const T>(zs), G, opt);
    std::copy(G.begin(), G.end(), out.begin());
  };
  christoffel_of_metric(nested_fd(s.deriv()), gfn, z, gamma);
}

template <class S>
void tm_curvature_t(const StatisticalStructure& s, std::span<const S> z, std::vector<S>& R,
                    TMChartOptions opt = {}) {
  auto cfn = [&s, opt](auto zs, auto out) {
    using T = std::remove_cvref_t<decltype(zs[0])>;
    std::vector<T> gamma;
    tm_christoffel_t(s, std::span<const T>(zs), gamma, opt);
    std::copy(gamma.begin(), gamma.end(), out.begin());
  };
  curvature_of_connection(nested_fd(s.deriv()), cfn, z, R);
}

DenseTensor tm_metric(const StatisticalStructure& s, std::span<const double> z, TMChartOptions opt = {});
DenseTensor tm_christoffel(const StatisticalStructure& s, std::span<const double> z, TMChartOptions opt = {});
DenseTensor tm_curvature(const StatisticalStructure& s, std::span<const double> z, TMChartOptions opt = {});
DenseTensor tm_ricci(const StatisticalStructure& s, std::span<const double> z, TMChartOptions opt = {});
double tm_scalar(const StatisticalStructure& s, std::span<const double> z, TMChartOptions opt = {});

/// Covariant derivative of the oracle curvature, layout [l][k][i][j][m]
/// (used for the second-Bianchi sanity check on the oracle itself).
std::vector<double> tm_nabla_curvature(const StatisticalStructure& s, std::span<const double> z,
                                       TMChartOptions opt = {});

/// Pointwise change between the induced coordinate frame and the adapted
/// horizontal/vertical frame at z:
///   d/dx^i = (e_i)^h + A^k_i (e_k)^v,   d/dxi^k = (e_k)^v.
struct FrameChange {
  int n = 0;
  std::vector<double> A;  // A^k_i

  /// Matrix taking coordinate vector components to adapted components.
  std::vector<double> matrix() const;
  std::vector<double> matrix_inverse() const;
};

FrameChange frame_change(const StatisticalStructure& s, std::span<const double> z, TMChartOptions opt = {});

DenseTensor to_adapted(const StatisticalStructure& s, std::span<const double> z, const DenseTensor& coord_tensor,
                       TMChartOptions opt = {});
DenseTensor to_coord(const StatisticalStructure& s, std::span<const double> z, const DenseTensor& adapted_tensor,
                     TMChartOptions opt = {});

/// Oracle covariant derivative of an explicit vector field on TM (given in
/// coordinate components): (nabla_A W)(z) with A in coordinate components.
/// field must be evaluable at dual scalars; differentiation follows the
/// structure's derivative config.
template <class FieldFn>
std::vector<double> tm_covariant_derivative_of_field(const StatisticalStructure& s, std::span<const double> z,
                                                     std::span<const double> a_coord, const FieldFn& field,
                                                     TMChartOptions opt = {}) {
  const int m = 2 * s.dim();
  std::vector<double> w, dw;
  jacobian(nested_fd(s.deriv()), field, z, static_cast<std::size_t>(m), w, dw);
  std::vector<double> gamma;
  tm_christoffel_t(s, z, gamma, opt);
  std::vector<double> out(static_cast<std::size_t>(m), 0.0);
  for (int bta = 0; bta < m; ++bta) {
    double sum = 0.0;
    for (int alf = 0; alf < m; ++alf) {
      sum += a_coord[static_cast<std::size_t>(alf)] * dw[static_cast<std::size_t>(bta) * m + alf];
      for (int gam = 0; gam < m; ++gam)
        sum += gamma[(static_cast<std::size_t>(bta) * m + alf) * m + static_cast<std::size_t>(gam)] *
               a_coord[static_cast<std::size_t>(alf)] * w[static_cast<std::size_t>(gam)];
    }
    out[static_cast<std::size_t>(bta)] = sum;
  }
  return out;
}

/// Coordinate components of lifts at z: vertical lift (0, X); horizontal
/// lift (X, -A X).
std::vector<double> lift_to_coord(const FrameChange& fc, bool horizontal, std::span<const double> X);

/// Adapted components (h-part, v-part) of a coordinate vector.
std::pair<std::vector<double>, std::vector<double>> coord_to_adapted_vector(const FrameChange& fc,
                                                                            std::span<const double> u);
std::vector<double> adapted_to_coord_vector(const FrameChange& fc, std::span<const double> h,
                                            std::span<const double> v);

}  // namespace statgeom
