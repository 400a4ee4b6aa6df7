#pragma once

#include <span>
#include <vector>

#include "statgeom/provider.hpp"
#include "statgeom/tensor.hpp"

namespace statgeom {

// Generic chart-level geometry: everything here works on plain component
// arrays for an arbitrary metric/connection in an m-dimensional chart and
// is shared by the base-manifold code and the tangent-bundle oracle.
//
// Index conventions (row-major flat storage):
//   metric        g[i*m + j]
//   connection    gamma[(l*m + i)*m + j]          Gamma^l_{ij}
//   curvature     R[((l*m + k)*m + i)*m + j]      R(e_i, e_j) e_k = R^l_{kij} e_l
//   derivative slots appended last: dT[comp*m + d] = d T_comp / d x^d.

/// Levi-Civita connection coefficients of a metric given by a generic
/// callable g_fn(span<const T> z, span<T> g_out).
template <class S, class MetricFn>
void christoffel_of_metric(const DerivativeConfig& cfg, const MetricFn& g_fn, std::span<const S> z,
                           std::vector<S>& gamma) {
  const int m = static_cast<int>(z.size());
  const std::size_t m2 = static_cast<std::size_t>(m) * m;
  std::vector<S> g, dg;
  jacobian(cfg, g_fn, z, m2, g, dg);
  std::vector<S> ginv;
  mat_inverse(m, g, ginv);
  gamma.assign(m2 * static_cast<std::size_t>(m), S(0.0));
  auto dgat = [&](int i, int j, int d) -> const S& {
    return dg[(static_cast<std::size_t>(i) * m + static_cast<std::size_t>(j)) * m + static_cast<std::size_t>(d)];
  };
  for (int l = 0; l < m; ++l)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        S sum(0.0);
        for (int p = 0; p < m; ++p) {
          S half = dgat(j, p, i) + dgat(i, p, j) - dgat(i, j, p);
          sum = sum + ginv[static_cast<std::size_t>(l) * m + p] * half;
        }
        gamma[(static_cast<std::size_t>(l) * m + i) * m + static_cast<std::size_t>(j)] = 0.5 * sum;
      }
}

/// Curvature tensor of an arbitrary (torsion-free) connection given by a
/// generic callable conn_fn producing Gamma^l_{ij} at a point:
///   R^l_{kij} = d_i Gamma^l_{jk} - d_j Gamma^l_{ik}
///               + Gamma^l_{ip} Gamma^p_{jk} - Gamma^l_{jp} Gamma^p_{ik}.
template <class S, class ConnFn>
void curvature_of_connection(const DerivativeConfig& cfg, const ConnFn& conn_fn, std::span<const S> z,
                             std::vector<S>& R) {
  const int m = static_cast<int>(z.size());
  const std::size_t m3 = static_cast<std::size_t>(m) * m * m;
  std::vector<S> gamma, dgamma;
  // The connection components already involve one derivative level.
  jacobian(nested_fd(cfg), conn_fn, z, m3, gamma, dgamma);
  auto gm = [&](int l, int i, int j) -> const S& {
    return gamma[(static_cast<std::size_t>(l) * m + i) * m + static_cast<std::size_t>(j)];
  };
  auto dgm = [&](int l, int i, int j, int d) -> const S& {
    return dgamma[((static_cast<std::size_t>(l) * m + i) * m + static_cast<std::size_t>(j)) * m +
                  static_cast<std::size_t>(d)];
  };
  R.assign(m3 * static_cast<std::size_t>(m), S(0.0));
  for (int l = 0; l < m; ++l)
    for (int k = 0; k < m; ++k)
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          S sum = dgm(l, j, k, i) - dgm(l, i, k, j);
          for (int p = 0; p < m; ++p) sum = sum + gm(l, i, p) * gm(p, j, k) - gm(l, j, p) * gm(p, i, k);
          R[((static_cast<std::size_t>(l) * m + k) * m + static_cast<std::size_t>(i)) * m +
            static_cast<std::size_t>(j)] = sum;
        }
}

/// Coordinate covariant derivative of a tensor with the given slot
/// variances. Inputs: components T (flat, extent m per slot), their plain
/// partials dT[comp*m + d], connection gamma. Output (+1 slot, direction
/// last): out[comp*m + d] = (nabla_d T)_comp.
template <class S>
void covariant_derivative_components(int m, std::span<const Variance> var, const std::vector<S>& T,
                                     const std::vector<S>& dT, const std::vector<S>& gamma,
                                     std::vector<S>& out) {
  const int rank = static_cast<int>(var.size());
  std::size_t ncomp = 1;
  for (int r = 0; r < rank; ++r) ncomp *= static_cast<std::size_t>(m);
  out.assign(ncomp * static_cast<std::size_t>(m), S(0.0));
  auto gm = [&](int l, int i, int j) -> const S& {
    return gamma[(static_cast<std::size_t>(l) * m + i) * m + static_cast<std::size_t>(j)];
  };
  std::vector<int> idx(static_cast<std::size_t>(rank), 0);
  std::vector<std::size_t> stride(static_cast<std::size_t>(rank), 1);
  for (int r = rank - 2; r >= 0; --r) stride[static_cast<std::size_t>(r)] = stride[static_cast<std::size_t>(r + 1)] * static_cast<std::size_t>(m);
  for (std::size_t c = 0; c < ncomp; ++c) {
    std::size_t rem = c;
    for (int r = 0; r < rank; ++r) {
      idx[static_cast<std::size_t>(r)] = static_cast<int>(rem / stride[static_cast<std::size_t>(r)]);
      rem %= stride[static_cast<std::size_t>(r)];
    }
    for (int d = 0; d < m; ++d) {
      S sum = dT[c * static_cast<std::size_t>(m) + static_cast<std::size_t>(d)];
      for (int r = 0; r < rank; ++r) {
        int iv = idx[static_cast<std::size_t>(r)];
        for (int p = 0; p < m; ++p) {
          std::size_t cp = c + (static_cast<std::size_t>(p) - static_cast<std::size_t>(iv)) * stride[static_cast<std::size_t>(r)];
          if (var[static_cast<std::size_t>(r)] == Variance::Upper)
            sum = sum + gm(iv, d, p) * T[cp];
          else
            sum = sum - gm(p, d, iv) * T[cp];
        }
      }
      out[c * static_cast<std::size_t>(m) + static_cast<std::size_t>(d)] = sum;
    }
  }
}

/// Ricci tensor as the trace of curvature over the first argument:
/// Ric(Y, Z) = sum_l [coefficient of e_l in R(e_l, Y) Z]; ric[y*m + z].
template <class S>
void ricci_from_curvature(int m, const std::vector<S>& R, std::vector<S>& ric) {
  ric.assign(static_cast<std::size_t>(m) * m, S(0.0));
  for (int y = 0; y < m; ++y)
    for (int z = 0; z < m; ++z) {
      S sum(0.0);
      for (int l = 0; l < m; ++l)
        sum = sum + R[((static_cast<std::size_t>(l) * m + z) * m + static_cast<std::size_t>(l)) * m +
                      static_cast<std::size_t>(y)];
      ric[static_cast<std::size_t>(y) * m + z] = sum;
    }
}

template <class S>
S trace_with_inverse_metric(int m, const std::vector<S>& ginv, const std::vector<S>& t) {
  S sum(0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) sum = sum + ginv[static_cast<std::size_t>(i) * m + j] * t[static_cast<std::size_t>(i) * m + j];
  return sum;
}

}  // namespace statgeom
