#pragma once

#include <span>
#include <string>
#include <vector>

#include "statgeom/coordgeom.hpp"
#include "statgeom/provider.hpp"
#include "statgeom/tensor.hpp"

namespace statgeom {

enum class ConnectionKind { LeviCivita, Statistical, Conjugate };

struct DomainBox {
  std::vector<double> lo, hi;

  int dim() const { return static_cast<int>(lo.size()); }
  bool contains(std::span<const double> x, double margin = 0.0) const;
  static DomainBox cube(int n, double lo, double hi);
};

/// Chart-based description of a statistical structure (g, K): an SPD metric
/// provider, a difference-tensor provider K^k_{ij} (symmetric in the lower
/// slots, g-self-adjoint), and the derivative engine configuration.
/// Construction samples the domain box and rejects providers violating the
/// symmetry invariants.
class StatisticalStructure {
 public:
  StatisticalStructure(std::string name, int n, DomainBox domain, FieldProvider g, FieldProvider k,
                       DerivativeConfig deriv = {}, bool validate = true);

  const std::string& name() const { return name_; }
  int dim() const { return n_; }
  const DomainBox& domain() const { return domain_; }
  const DerivativeConfig& deriv() const { return deriv_; }

  void require_in_domain(std::span<const double> x) const;

  template <class S>
  void metric_t(std::span<const S> x, std::vector<S>& g) const {
    g.assign(static_cast<std::size_t>(n_) * n_, S(0.0));
    g_.eval(x, std::span<S>(g));
  }

  template <class S>
  void metric_inverse_t(std::span<const S> x, std::vector<S>& ginv) const {
    std::vector<S> g;
    metric_t(x, g);
    mat_inverse(n_, g, ginv);
  }

  template <class S>
  void difference_t(std::span<const S> x, std::vector<S>& k) const {
    k.assign(static_cast<std::size_t>(n_) * n_ * n_, S(0.0));
    k_.eval(x, std::span<S>(k));
  }

  /// Connection coefficients Gamma^l_{ij}: Levi-Civita from the metric,
  /// statistical = Levi-Civita + K, conjugate = Levi-Civita - K.
  template <class S>
  void christoffel_t(std::span<const S> x, ConnectionKind kind, std::vector<S>& gamma) const {
    auto gfn = [this](auto xs, auto out) { this->g_.eval(xs, out); };
    christoffel_of_metric(deriv_, gfn, x, gamma);
    if (kind == ConnectionKind::LeviCivita) return;
    std::vector<S> k;
    difference_t(x, k);
    const double sgn = kind == ConnectionKind::Statistical ? 1.0 : -1.0;
    for (std::size_t i = 0; i < gamma.size(); ++i) gamma[i] = gamma[i] + sgn * k[i];
  }

  template <class S>
  void curvature_t(std::span<const S> x, ConnectionKind kind, std::vector<S>& r) const {
    auto cfn = [this, kind](auto xs, auto out) {
      using T = std::remove_cvref_t<decltype(xs[0])>;
      std::vector<T> gamma;
      this->christoffel_t(std::span<const T>(xs), kind, gamma);
      std::copy(gamma.begin(), gamma.end(), out.begin());
    };
    curvature_of_connection(deriv_, cfn, x, r);
  }

  /// Components of the auxiliary tensor defined by
  /// g(W, R1(X,Y,Z)) = (1/2) g(R(W,X)Y, Z)  (statistical curvature R).
  template <class S>
  void r1_components_t(std::span<const S> x, std::vector<S>& r1) const {
    const int n = n_;
    std::vector<S> g, ginv, r;
    metric_t(x, g);
    mat_inverse(n, g, ginv);
    curvature_t(x, ConnectionKind::Statistical, r);
    r1.assign(static_cast<std::size_t>(n) * n * n * n, S(0.0));
    for (int p = 0; p < n; ++p)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c) {
            S sum(0.0);
            for (int w = 0; w < n; ++w)
              for (int l = 0; l < n; ++l)
                sum = sum + ginv[static_cast<std::size_t>(p) * n + w] * g[static_cast<std::size_t>(l) * n + c] *
                                r[((static_cast<std::size_t>(l) * n + b) * n + static_cast<std::size_t>(w)) * n +
                                  static_cast<std::size_t>(a)];
            r1[((static_cast<std::size_t>(p) * n + a) * n + static_cast<std::size_t>(b)) * n +
               static_cast<std::size_t>(c)] = 0.5 * sum;
          }
  }

 private:
  std::string name_;
  int n_;
  DomainBox domain_;
  FieldProvider g_;
  FieldProvider k_;
  DerivativeConfig deriv_;

  void validate_construction() const;
};

/// Everything the closed-form layers need at one base point, in coordinate
/// components. Derivative slots come last; curvature layout R^l_{kij} with
/// R(e_i,e_j)e_k = R^l_{kij} e_l.
struct CurvatureBundle {
  int n = 0;
  std::vector<double> x;

  std::vector<double> g, ginv;
  std::vector<double> dg;  // [i][j][m], plain partials of the metric
  std::vector<double> gamma_g, gamma, gamma_star;
  std::vector<double> K;                   // K^k_{ij}
  std::vector<double> Rg, R, Rstar;        // curvatures of the three connections
  std::vector<double> KK;                  // [K,K]^l_{kij}
  std::vector<double> frakR;               // (R + R*)/2
  std::vector<double> R1;                  // [p][a][b][c], see r1_components_t
  std::vector<double> nablaK_g, nablaK;    // [k][i][j][m], direction last
  std::vector<double> nablaR;              // [l][k][i][j][m], statistical connection
  std::vector<double> nablaR1;             // [p][a][b][c][m], statistical connection
  std::vector<double> tau;                 // tau_i = trace of K_{e_i}
  std::vector<double> nabla_tau;           // [i][j] = (nabla_{e_i} tau)(e_j), statistical
  std::vector<double> E;                   // E^k = g^{ij} K^k_{ij}
  std::vector<double> ric, ric_star, ric_g, ric_K, frak_ric;  // [y][z]
  double rho = 0.0, rho_g = 0.0;
  std::vector<double> frame;  // n rows of g-orthonormal vectors (Gram-Schmidt, index order)

  // Vector helpers (arguments/results are base-coordinate n-vectors).
  std::vector<double> k_of(std::span<const double> X, std::span<const double> Y) const;
  std::vector<double> r_of(std::span<const double> X, std::span<const double> Y, std::span<const double> Z) const;
  std::vector<double> rg_of(std::span<const double> X, std::span<const double> Y, std::span<const double> Z) const;
  std::vector<double> kk_of(std::span<const double> X, std::span<const double> Y, std::span<const double> Z) const;
  std::vector<double> r1_of(std::span<const double> X, std::span<const double> Y, std::span<const double> Z) const;
  std::vector<double> nabla_k_of(std::span<const double> D, std::span<const double> X, std::span<const double> Y) const;
  std::vector<double> nabla_k_g_of(std::span<const double> D, std::span<const double> X, std::span<const double> Y) const;
  std::vector<double> nabla_r_of(std::span<const double> D, std::span<const double> X, std::span<const double> Y,
                                 std::span<const double> Z) const;
  std::vector<double> nabla_r1_of(std::span<const double> D, std::span<const double> X, std::span<const double> Y,
                                  std::span<const double> Z) const;
  double inner(std::span<const double> X, std::span<const double> Y) const;
  double tau_of(std::span<const double> X) const;
  std::vector<double> frame_vector(int i) const;
};

CurvatureBundle curvature_bundle(const StatisticalStructure& s, std::span<const double> x);

// --- public operations (double precision, DenseTensor interface) ----------

DenseTensor partials(const FieldProvider& f, const DerivativeConfig& cfg, std::span<const double> x,
                     Frame frame, std::vector<Variance> variance);
DenseTensor second_partials(const FieldProvider& f, const DerivativeConfig& cfg, std::span<const double> x,
                            Frame frame, std::vector<Variance> variance);

DenseTensor christoffel(const StatisticalStructure& s, std::span<const double> x, ConnectionKind kind);
DenseTensor curvature(const StatisticalStructure& s, std::span<const double> x, ConnectionKind kind);
DenseTensor bracket_KK(const StatisticalStructure& s, std::span<const double> x);

struct KoszulForms {
  DenseTensor tau;        // covector
  DenseTensor nabla_tau;  // (0,2), [X][Y]
  DenseTensor E;          // vector, metric trace of K
};
KoszulForms koszul_forms(const StatisticalStructure& s, std::span<const double> x);

struct RicciFamily {
  DenseTensor ric, ric_star, ric_g, ric_K, frak_ric;
};
RicciFamily ricci_family(const StatisticalStructure& s, std::span<const double> x);

enum class SectionalKind { Riemannian, Kcurv, Frak };
double sectional(const StatisticalStructure& s, std::span<const double> x, std::span<const double> X,
                 std::span<const double> Y, SectionalKind kind);
double sectional(const CurvatureBundle& b, std::span<const double> X, std::span<const double> Y, SectionalKind kind);

struct ScalarCurvatures {
  double rho = 0.0;    // statistical scalar curvature (trace of the mean Ricci)
  double rho_g = 0.0;  // Riemannian scalar curvature of g
};
ScalarCurvatures scalars(const StatisticalStructure& s, std::span<const double> x);

struct StructureFlags {
  bool trivial = false;              // K == 0
  bool conjugate_symmetric = false;  // R == R*
  bool hessian = false;              // R == 0

  bool operator==(const StructureFlags&) const = default;
};
StructureFlags classify(const StatisticalStructure& s, const std::vector<std::vector<double>>& sample, double tol);

}  // namespace statgeom
