#pragma once

#include <functional>
#include <span>
#include <vector>

#include "statgeom/dual.hpp"
#include "statgeom/errors.hpp"

namespace statgeom {

enum class DerivMode { DualNumber, FiniteDifference };

struct DerivativeConfig {
  DerivMode mode = DerivMode::DualNumber;
  double fd_step = 1e-5;
  int fd_order = 4;  // 2 or 4
};

/// Evaluation contract for a chart field: given a chart point, fill the
/// flat component array (n^rank entries, row-major). Must be pure and
/// smooth on the declared domain; the same x always yields the same bits.
/// Evaluators exist at every dual nesting level so the engine can take
/// exact derivatives through arbitrary compositions.
struct FieldProvider {
  int n = 0;
  int rank = 0;
  std::size_t out_size = 0;

  std::function<void(std::span<const double>, std::span<double>)> f0;
  std::function<void(std::span<const Dual1>, std::span<Dual1>)> f1;
  std::function<void(std::span<const Dual2>, std::span<Dual2>)> f2;
  std::function<void(std::span<const Dual3>, std::span<Dual3>)> f3;
  std::function<void(std::span<const Dual4>, std::span<Dual4>)> f4;

  template <class S>
  void eval(std::span<const S> x, std::span<S> out) const {
    if constexpr (std::is_same_v<S, double>)
      f0(x, out);
    else if constexpr (std::is_same_v<S, Dual1>)
      f1(x, out);
    else if constexpr (std::is_same_v<S, Dual2>)
      f2(x, out);
    else if constexpr (std::is_same_v<S, Dual3>)
      f3(x, out);
    else if constexpr (std::is_same_v<S, Dual4>)
      f4(x, out);
    else
      static_assert(std::is_same_v<S, double>, "unsupported scalar depth");
  }
};

/// Builds a FieldProvider from one scalar-generic callable
/// f(span<const S> x, span<S> out).
template <class F>
FieldProvider make_provider(int n, int rank, F f) {
  FieldProvider p;
  p.n = n;
  p.rank = rank;
  p.out_size = 1;
  for (int r = 0; r < rank; ++r) p.out_size *= static_cast<std::size_t>(n);
  p.f0 = [f](std::span<const double> x, std::span<double> out) { f(x, out); };
  p.f1 = [f](std::span<const Dual1> x, std::span<Dual1> out) { f(x, out); };
  p.f2 = [f](std::span<const Dual2> x, std::span<Dual2> out) { f(x, out); };
  p.f3 = [f](std::span<const Dual3> x, std::span<Dual3> out) { f(x, out); };
  p.f4 = [f](std::span<const Dual4> x, std::span<Dual4> out) { f(x, out); };
  return p;
}

/// Step widening for finite differences of quantities that are themselves
/// computed with finite differences: differencing a noisy function needs a
/// wider stencil to keep the noise amplification (noise / h) in check.
inline DerivativeConfig nested_fd(DerivativeConfig cfg) {
  if (cfg.mode == DerivMode::FiniteDifference)
    cfg.fd_step = std::min(0.05, std::max(3e-3, 5.0 * cfg.fd_step));
  return cfg;
}

namespace detail {

template <class S, class F>
void fd_jacobian(const DerivativeConfig& cfg, const F& f, std::span<const S> x, std::size_t out_size,
                 std::vector<S>& val, std::vector<S>& jac) {
  static_assert(std::is_same_v<S, double>, "finite differences run at double precision only");
  const int m = static_cast<int>(x.size());
  val.assign(out_size, 0.0);
  jac.assign(out_size * static_cast<std::size_t>(m), 0.0);
  f(x, std::span<S>(val));
  std::vector<double> pt(x.begin(), x.end());
  std::vector<double> fp(out_size), fm(out_size), fp2(out_size), fm2(out_size);
  const double h = cfg.fd_step;
  for (int d = 0; d < m; ++d) {
    double saved = pt[static_cast<std::size_t>(d)];
    auto eval_at = [&](double t, std::vector<double>& out) {
      pt[static_cast<std::size_t>(d)] = saved + t;
      f(std::span<const double>(pt), std::span<double>(out));
    };
    eval_at(h, fp);
    eval_at(-h, fm);
    if (cfg.fd_order == 4) {
      eval_at(2 * h, fp2);
      eval_at(-2 * h, fm2);
      for (std::size_t q = 0; q < out_size; ++q)
        jac[q * static_cast<std::size_t>(m) + static_cast<std::size_t>(d)] =
            (-fp2[q] + 8.0 * fp[q] - 8.0 * fm[q] + fm2[q]) / (12.0 * h);
    } else {
      for (std::size_t q = 0; q < out_size; ++q)
        jac[q * static_cast<std::size_t>(m) + static_cast<std::size_t>(d)] = (fp[q] - fm[q]) / (2.0 * h);
    }
    pt[static_cast<std::size_t>(d)] = saved;
  }
}

}  // namespace detail

/// First partials of a scalar-generic callable f at x. Output layout:
/// jac[q*m + d] = d out_q / d x_d (derivative slot last). In dual mode the
/// call nests one level deeper than S; in finite-difference mode S must be
/// double and a central stencil is used.
template <class S, class F>
void jacobian(const DerivativeConfig& cfg, const F& f, std::span<const S> x, std::size_t out_size,
              std::vector<S>& val, std::vector<S>& jac) {
  const int m = static_cast<int>(x.size());
  if (cfg.mode == DerivMode::FiniteDifference) {
    if constexpr (std::is_same_v<S, double>) {
      detail::fd_jacobian(cfg, f, x, out_size, val, jac);
      return;
    } else {
      throw ConfigError("finite-difference mode cannot nest inside dual evaluation");
    }
  }
  val.assign(out_size, S(0.0));
  jac.assign(out_size * static_cast<std::size_t>(m), S(0.0));
  std::vector<Dual<S>> pt(x.size());
  std::vector<Dual<S>> out(out_size);
  for (int d = 0; d < m; ++d) {
    for (int i = 0; i < m; ++i) {
      pt[static_cast<std::size_t>(i)] = Dual<S>(x[static_cast<std::size_t>(i)]);
      if (i == d) seed(pt[static_cast<std::size_t>(i)]);
    }
    f(std::span<const Dual<S>>(pt), std::span<Dual<S>>(out));
    for (std::size_t q = 0; q < out_size; ++q) {
      if (d == 0) val[q] = out[q].a;
      jac[q * static_cast<std::size_t>(m) + static_cast<std::size_t>(d)] = out[q].b;
    }
  }
}

/// Second partials: hess[q*m*m + p*m + d] = d^2 out_q / dx_p dx_d,
/// symmetric in (p, d). Dual mode uses one nested (hyper-dual) pass per
/// direction pair; FD mode applies the first-derivative stencil twice.
template <class S, class F>
void hessian(const DerivativeConfig& cfg, const F& f, std::span<const S> x, std::size_t out_size,
             std::vector<S>& hess) {
  const int m = static_cast<int>(x.size());
  hess.assign(out_size * static_cast<std::size_t>(m) * static_cast<std::size_t>(m), S(0.0));
  if (cfg.mode == DerivMode::FiniteDifference) {
    if constexpr (std::is_same_v<S, double>) {
      // Nested stencils: truncation ~ h^4 against roundoff ~ eps/h^2, so a
      // wider step than the first-derivative one is needed.
      DerivativeConfig inner = cfg;
      inner.fd_step = std::sqrt(cfg.fd_step);
      auto dfun = [&](std::span<const double> pt, std::span<double> out) {
        std::vector<double> v, j;
        detail::fd_jacobian(inner, f, pt, out_size, v, j);
        std::copy(j.begin(), j.end(), out.begin());
      };
      std::vector<double> v, h2;
      detail::fd_jacobian(inner, dfun, x, out_size * static_cast<std::size_t>(m), v, h2);
      // h2[(q*m + p)*m + d] already matches the output layout.
      hess = std::move(h2);
      return;
    } else {
      throw ConfigError("finite-difference mode cannot nest inside dual evaluation");
    }
  }
  std::vector<Dual<Dual<S>>> pt(x.size());
  std::vector<Dual<Dual<S>>> out(out_size);
  for (int p = 0; p < m; ++p) {
    for (int d = p; d < m; ++d) {
      for (int i = 0; i < m; ++i) {
        Dual<S> inner(x[static_cast<std::size_t>(i)], S(i == d ? 1.0 : 0.0));
        pt[static_cast<std::size_t>(i)] = Dual<Dual<S>>(inner, Dual<S>(S(i == p ? 1.0 : 0.0)));
      }
      f(std::span<const Dual<Dual<S>>>(pt), std::span<Dual<Dual<S>>>(out));
      for (std::size_t q = 0; q < out_size; ++q) {
        S second = out[q].b.b;
        hess[(q * static_cast<std::size_t>(m) + static_cast<std::size_t>(p)) * static_cast<std::size_t>(m) +
             static_cast<std::size_t>(d)] = second;
        hess[(q * static_cast<std::size_t>(m) + static_cast<std::size_t>(d)) * static_cast<std::size_t>(m) +
             static_cast<std::size_t>(p)] = second;
      }
    }
  }
}

}  // namespace statgeom
