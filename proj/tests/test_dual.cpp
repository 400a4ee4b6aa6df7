#include "doctest.h"

#include <cmath>

#include "statgeom/gallery.hpp"
#include "statgeom/provider.hpp"
#include "statgeom/rng.hpp"
#include "statgeom/statistical.hpp"

using namespace statgeom;

TEST_CASE("dual arithmetic differentiates elementary compositions exactly") {
  // f(t) = sin(t) * exp(2t) + log(t) / sqrt(t)
  auto f = [](auto t) { return sin(t) * exp(2.0 * t) + log(t) / sqrt(t); };
  double t0 = 0.7;
  Dual1 x{t0, 1.0};
  Dual1 y = f(x);
  double fp = std::cos(t0) * std::exp(2 * t0) + 2 * std::sin(t0) * std::exp(2 * t0) +
              (1.0 / t0) / std::sqrt(t0) - 0.5 * std::log(t0) * std::pow(t0, -1.5);
  CHECK(y.a == doctest::Approx(f(t0)).epsilon(1e-15));
  CHECK(y.b == doctest::Approx(fp).epsilon(1e-14));
}

TEST_CASE("nested duals give exact second derivatives") {
  auto f = [](auto t) { return powi(t, 3) * sin(t); };
  double t0 = 1.3;
  Dual2 x{Dual1{t0, 1.0}, Dual1{1.0, 0.0}};
  Dual2 y = f(x);
  double exact = 6 * t0 * std::sin(t0) + 6 * t0 * t0 * std::cos(t0) - t0 * t0 * t0 * std::sin(t0);
  CHECK(y.b.b == doctest::Approx(exact).epsilon(1e-14));
}

TEST_CASE("partials of a constant provider vanish") {
  auto p = make_provider(3, 1, [](auto, auto out) {
    using T = std::remove_cvref_t<decltype(out[0])>;
    for (auto& v : out) v = T(4.5);
  });
  DerivativeConfig cfg;
  std::vector<double> x{0.1, -0.2, 0.3};
  auto d = partials(p, cfg, x, Frame{FrameKind::BaseCoord, 3}, {Variance::Upper});
  CHECK(d.max_abs() == 0.0);
}

TEST_CASE("difference-tensor partials of the orthant entry at the unit point") {
  // lambda_i = -1/x_i so d(lambda_1)/dx_1 = 1 at x = (1,...,1).
  auto e = make_gallery("paper_hessian", {});
  std::vector<double> x{1.0, 1.0, 1.0};
  std::vector<double> val, jac;
  auto fn = [&e](auto xs, auto out) {
    using T = std::remove_cvref_t<decltype(xs[0])>;
    std::vector<T> k;
    e.structure.difference_t(std::span<const T>(xs), k);
    std::copy(k.begin(), k.end(), out.begin());
  };
  jacobian(DerivativeConfig{}, fn, std::span<const double>(x), 27, val, jac);
  // component K^1_{11}, derivative slot 0
  CHECK(jac[0 * 3 + 0] == doctest::Approx(1.0).epsilon(1e-14));
  // metric partials of the flat metric are zero
  auto dg = partials(make_provider(3, 2,
                                   [](auto, auto out) {
                                     using T = std::remove_cvref_t<decltype(out[0])>;
                                     for (std::size_t i = 0; i < 9; ++i) out[i] = T(i % 4 == 0 ? 1.0 : 0.0);
                                   }),
                     DerivativeConfig{}, x, Frame{FrameKind::BaseCoord, 3},
                     {Variance::Lower, Variance::Lower});
  CHECK(dg.max_abs() == 0.0);
}

TEST_CASE("second partials: quadratic scalar provider") {
  auto p = make_provider(2, 0, [](auto x, auto out) { out[0] = x[0] * x[0]; });
  DerivativeConfig cfg;
  std::vector<double> x{0.4, -0.9};
  auto h = second_partials(p, cfg, x, Frame{FrameKind::BaseCoord, 2}, {});
  CHECK(h.at({0, 0}) == 2.0);
  CHECK(h.at({0, 1}) == 0.0);
  CHECK(h.at({1, 1}) == 0.0);
}

TEST_CASE("linear provider has vanishing second partials") {
  auto p = make_provider(3, 0, [](auto x, auto out) { out[0] = 2.0 * x[0] - x[2]; });
  std::vector<double> x{0.3, 0.1, -0.5};
  auto h = second_partials(p, DerivativeConfig{}, x, Frame{FrameKind::BaseCoord, 3}, {});
  CHECK(h.max_abs() == 0.0);
}

TEST_CASE("dual and finite-difference partials agree on gallery providers") {
  DerivativeConfig dual_cfg;
  DerivativeConfig fd_cfg;
  fd_cfg.mode = DerivMode::FiniteDifference;
  for (const char* id : {"euclid_trivial", "paper_hessian", "round_sphere2", "gaussian_fisher", "torus_bump"}) {
    auto e = make_gallery(id, {});
    const auto& s = e.structure;
    Rng rng(101);
    for (int rep = 0; rep < 20; ++rep) {
      auto x = rng.point_in_box(s.domain().lo, s.domain().hi, 0.1);
      auto gfn = [&s](auto xs, auto out) {
        using T = std::remove_cvref_t<decltype(xs[0])>;
        std::vector<T> g;
        s.metric_t(std::span<const T>(xs), g);
        std::copy(g.begin(), g.end(), out.begin());
      };
      std::size_t sz = static_cast<std::size_t>(s.dim()) * s.dim();
      std::vector<double> v1, j1, v2, j2;
      jacobian(dual_cfg, gfn, std::span<const double>(x), sz, v1, j1);
      jacobian(fd_cfg, gfn, std::span<const double>(x), sz, v2, j2);
      for (std::size_t i = 0; i < j1.size(); ++i) {
        double scale = std::max(1.0, std::abs(j1[i]));
        CHECK(std::abs(j1[i] - j2[i]) / scale < 1e-8);
      }
      auto kfn = [&s](auto xs, auto out) {
        using T = std::remove_cvref_t<decltype(xs[0])>;
        std::vector<T> k;
        s.difference_t(std::span<const T>(xs), k);
        std::copy(k.begin(), k.end(), out.begin());
      };
      std::size_t ksz = sz * static_cast<std::size_t>(s.dim());
      jacobian(dual_cfg, kfn, std::span<const double>(x), ksz, v1, j1);
      jacobian(fd_cfg, kfn, std::span<const double>(x), ksz, v2, j2);
      for (std::size_t i = 0; i < j1.size(); ++i) {
        double scale = std::max(1.0, std::abs(j1[i]));
        CHECK(std::abs(j1[i] - j2[i]) / scale < 1e-6);
      }
    }
  }
}

TEST_CASE("FD second partials are symmetric in the derivative slots") {
  auto e = make_gallery("torus_bump", {});
  const auto& s = e.structure;
  DerivativeConfig fd_cfg;
  fd_cfg.mode = DerivMode::FiniteDifference;
  std::vector<double> x{2.0, 3.0, 4.0};
  auto gfn = [&s](auto xs, auto out) {
    using T = std::remove_cvref_t<decltype(xs[0])>;
    std::vector<T> g;
    s.metric_t(std::span<const T>(xs), g);
    std::copy(g.begin(), g.end(), out.begin());
  };
  std::vector<double> h;
  hessian(fd_cfg, gfn, std::span<const double>(x), 9, h);
  for (std::size_t q = 0; q < 9; ++q)
    for (int p = 0; p < 3; ++p)
      for (int d = 0; d < 3; ++d)
        CHECK(std::abs(h[(q * 3 + static_cast<std::size_t>(p)) * 3 + static_cast<std::size_t>(d)] -
                       h[(q * 3 + static_cast<std::size_t>(d)) * 3 + static_cast<std::size_t>(p)]) < 1e-9);
  std::vector<double> hd;
  hessian(DerivativeConfig{}, gfn, std::span<const double>(x), 9, hd);
  for (std::size_t i = 0; i < hd.size(); ++i) CHECK(std::abs(h[i] - hd[i]) < 1e-6);
}

TEST_CASE("second-order FD stencil agrees with the fourth-order one") {
  auto e = make_gallery("gaussian_fisher", {});
  const auto& s = e.structure;
  DerivativeConfig fd2;
  fd2.mode = DerivMode::FiniteDifference;
  fd2.fd_order = 2;
  fd2.fd_step = 1e-6;
  DerivativeConfig fd4;
  fd4.mode = DerivMode::FiniteDifference;
  std::vector<double> x{0.3, 1.1};
  auto gfn = [&s](auto xs, auto out) {
    using T = std::remove_cvref_t<decltype(xs[0])>;
    std::vector<T> g;
    s.metric_t(std::span<const T>(xs), g);
    std::copy(g.begin(), g.end(), out.begin());
  };
  std::vector<double> v2, j2, v4, j4;
  jacobian(fd2, gfn, std::span<const double>(x), 4, v2, j2);
  jacobian(fd4, gfn, std::span<const double>(x), 4, v4, j4);
  for (std::size_t i = 0; i < j2.size(); ++i) CHECK(std::abs(j2[i] - j4[i]) < 1e-6);
}
