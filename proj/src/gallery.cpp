#include "statgeom/gallery.hpp"

#include <cmath>

namespace statgeom {

namespace {

FieldProvider identity_metric(int n) {
  return make_provider(n, 2, [n](auto x, auto out) {
    using T = std::remove_cvref_t<decltype(out[0])>;
    (void)x;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(i) * n + j] = T(i == j ? 1.0 : 0.0);
  });
}

FieldProvider zero_difference(int n) {
  return make_provider(n, 3, [n](auto, auto out) {
    using T = std::remove_cvref_t<decltype(out[0])>;
    for (auto& v : out) v = T(0.0);
  });
}

GalleryEntry make_euclid(const GalleryParams& p) {
  StatisticalStructure s("euclid_trivial", p.dim, DomainBox::cube(p.dim, -1.0, 1.0), identity_metric(p.dim),
                         zero_difference(p.dim), p.deriv);
  return {"euclid_trivial", std::move(s), StructureFlags{true, true, true},
          "flat metric, trivial structure"};
}

GalleryEntry make_hessian_orthant(const GalleryParams& p) {
  const int n = p.dim;
  auto k = make_provider(n, 3, [n](auto x, auto out) {
    using T = std::remove_cvref_t<decltype(out[0])>;
    for (auto& v : out) v = T(0.0);
    for (int i = 0; i < n; ++i) {
      T lam = -1.0 / x[static_cast<std::size_t>(i)];
      out[(static_cast<std::size_t>(i) * n + i) * n + static_cast<std::size_t>(i)] = lam;
    }
  });
  StatisticalStructure s("paper_hessian", n, DomainBox::cube(n, 0.5, 3.0), identity_metric(n), std::move(k),
                         p.deriv);
  return {"paper_hessian", std::move(s), StructureFlags{false, true, true},
          "flat metric on the positive orthant, K(e_i,e_i) = -(1/x_i) e_i; Hessian with parallel K"};
}

GalleryEntry make_round_sphere(const GalleryParams& p) {
  const int n = 2;
  // Unit sphere in the stereographic chart: g = 4 delta / (1 + |u|^2)^2.
  auto g = make_provider(n, 2, [n](auto x, auto out) {
    using T = std::remove_cvref_t<decltype(out[0])>;
    T r2 = x[0] * x[0] + x[1] * x[1];
    T c = 4.0 / ((1.0 + r2) * (1.0 + r2));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(i) * n + j] = i == j ? c : T(0.0);
  });
  StatisticalStructure s("round_sphere2", n, DomainBox::cube(n, -0.8, 0.8), std::move(g), zero_difference(n),
                         p.deriv);
  return {"round_sphere2", std::move(s), StructureFlags{true, true, false},
          "unit 2-sphere (sectional curvature 1), trivial K"};
}

GalleryEntry make_gaussian_fisher(const GalleryParams& p) {
  const int n = 2;
  const double alpha = p.alpha;
  if (alpha < -1.0 || alpha > 1.0) throw ConfigError("gaussian_fisher: alpha outside [-1, 1]");
  // Coordinates (mu, sigma). Fisher metric diag(1/sigma^2, 2/sigma^2);
  // cubic form T_{mu mu sigma} = 2/sigma^3, T_{sigma^3} = 8/sigma^3,
  // K = -(alpha/2) T with the first index raised.
  auto g = make_provider(n, 2, [](auto x, auto out) {
    using T = std::remove_cvref_t<decltype(out[0])>;
    T s2 = x[1] * x[1];
    out[0] = 1.0 / s2;
    out[1] = T(0.0);
    out[2] = T(0.0);
    out[3] = 2.0 / s2;
  });
  auto k = make_provider(n, 3, [alpha](auto x, auto out) {
    using T = std::remove_cvref_t<decltype(out[0])>;
    for (auto& v : out) v = T(0.0);
    T inv_sigma = 1.0 / x[1];
    T kmms = (-alpha) * inv_sigma;  // K^mu_{mu sigma} = K^mu_{sigma mu}
    T ksmm = (-alpha / 2.0) * inv_sigma;
    T ksss = (-2.0 * alpha) * inv_sigma;
    out[0 * 4 + 0 * 2 + 1] = kmms;
    out[0 * 4 + 1 * 2 + 0] = kmms;
    out[1 * 4 + 0 * 2 + 0] = ksmm;
    out[1 * 4 + 1 * 2 + 1] = ksss;
  });
  DomainBox box;
  box.lo = {-1.0, 0.5};
  box.hi = {1.0, 2.0};
  StatisticalStructure s("gaussian_fisher", n, std::move(box), std::move(g), std::move(k), p.deriv);
  // Conjugate symmetric for every alpha; the statistical connection is flat
  // exactly at |alpha| = 1 and K vanishes at alpha = 0 (g itself is curved,
  // so the Levi-Civita curvature never vanishes). Flags locked against
  // classify() output.
  bool trivial = alpha == 0.0;
  bool hessian = std::abs(alpha) == 1.0;
  return {"gaussian_fisher", std::move(s), StructureFlags{trivial, true, hessian},
          "normal-family Fisher metric with alpha-skewness difference tensor"};
}

GalleryEntry make_torus_bump(const GalleryParams& p) {
  const int n = p.dim;
  // Periodic metric: diagonal bump plus small symmetric off-diagonal
  // coupling; stays SPD by diagonal dominance. The cubic form mixes a
  // sin-product with a translation-coupled cosine so [K,K] != 0.
  auto g_fn = [n](auto x, auto out) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j)
          out[static_cast<std::size_t>(i) * n + j] = 1.0 + 0.3 * sin(x[static_cast<std::size_t>(i)]);
        else
          out[static_cast<std::size_t>(i) * n + j] =
              0.1 * sin(x[static_cast<std::size_t>(i)]) * sin(x[static_cast<std::size_t>(j)]);
      }
  };
  auto k = make_provider(n, 3, [n, g_fn](auto x, auto out) {
    using T = std::remove_cvref_t<decltype(out[0])>;
    std::vector<T> g(static_cast<std::size_t>(n) * static_cast<std::size_t>(n)), ginv;
    g_fn(x, std::span<T>(g));
    mat_inverse(n, g, ginv);
    const double c = 0.1;
    for (int kk = 0; kk < n; ++kk)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          T sum(0.0);
          for (int l = 0; l < n; ++l) {
            T cubic = c * (sin(x[static_cast<std::size_t>(l)]) * sin(x[static_cast<std::size_t>(i)]) *
                               sin(x[static_cast<std::size_t>(j)]) +
                           cos(x[static_cast<std::size_t>(l)] + x[static_cast<std::size_t>(i)] +
                               x[static_cast<std::size_t>(j)]));
            sum = sum + ginv[static_cast<std::size_t>(kk) * n + l] * cubic;
          }
          out[(static_cast<std::size_t>(kk) * n + i) * n + static_cast<std::size_t>(j)] = sum;
        }
  });
  auto g = make_provider(n, 2, g_fn);
  StatisticalStructure s("torus_bump", n, DomainBox::cube(n, 0.0, 2.0 * 3.14159265358979323846), std::move(g),
                         std::move(k), p.deriv);
  return {"torus_bump", std::move(s), StructureFlags{false, false, false},
          "periodic bump metric with small periodic cubic form (compact stand-in)"};
}

}  // namespace

const std::vector<std::string>& gallery_ids() {
  static const std::vector<std::string> ids{"euclid_trivial", "paper_hessian", "round_sphere2",
                                            "gaussian_fisher", "torus_bump"};
  return ids;
}

GalleryEntry make_gallery(const std::string& id, const GalleryParams& params) {
  if (params.dim < 2 || params.dim > 4) throw ConfigError("gallery: dim must be 2, 3 or 4");
  if (id == "euclid_trivial") return make_euclid(params);
  if (id == "paper_hessian") return make_hessian_orthant(params);
  if (id == "round_sphere2") return make_round_sphere(params);
  if (id == "gaussian_fisher") return make_gaussian_fisher(params);
  if (id == "torus_bump") return make_torus_bump(params);
  throw ConfigError("unknown gallery id: " + id);
}

std::vector<GalleryEntry> full_gallery(int dim, double alpha, DerivativeConfig deriv) {
  std::vector<GalleryEntry> out;
  for (const auto& id : gallery_ids()) {
    GalleryParams p;
    p.dim = dim;
    p.alpha = alpha;
    p.deriv = deriv;
    out.push_back(make_gallery(id, p));
  }
  return out;
}

}  // namespace statgeom
