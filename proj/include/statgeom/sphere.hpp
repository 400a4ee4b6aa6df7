#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "statgeom/tangent.hpp"
#include "statgeom/tm_chart.hpp"

namespace statgeom {

/// Point of the radius-r sphere bundle: a tangent point whose fiber vector
/// has g-norm r (projected at construction).
struct SpherePoint {
  TangentPoint tp;
  double r = 1.0;
};

/// Projects xi onto g-norm r at x.
SpherePoint make_sphere_point(const StatisticalStructure& s, std::vector<double> x, std::vector<double> xi,
                              double r);
SpherePoint make_sphere_point(const CurvatureBundle& b, std::vector<double> xi, double r);

enum class SphereSlot { TangentVertical, TangentHorizontal };

/// Tangential lifts at a sphere point:
///   X^tv = X^v - r^{-2} g(xi, X) U,   X^th = X^h + r^{-2} g(K(xi,xi), X) U,
/// with U the canonical vertical vector at xi.
struct TangentLifts {
  SplitVector tv, th;
};
TangentLifts tangent_lifts(const CurvatureBundle& b, const SpherePoint& sp, std::span<const double> X);
TangentLifts tangent_lifts(const StatisticalStructure& s, const SpherePoint& sp, std::span<const double> X);

/// Outward unit normal: (U - K(xi,xi)^h) / sqrt(r^2 + |K(xi,xi)|^2).
SplitVector sphere_normal(const CurvatureBundle& b, const SpherePoint& sp);
SplitVector sphere_normal(const StatisticalStructure& s, const SpherePoint& sp);

/// Orthonormal tangent frame at a sphere point: vertical lifts of a frame
/// orthogonal to xi, horizontal lifts of a frame orthogonal to K(xi,xi),
/// and (when K(xi,xi) != 0) the normalized tangential-horizontal lift of
/// K(xi,xi) itself.
struct SphereFrame {
  std::vector<std::vector<double>> vert;   // n-1 base vectors, orthonormal, all orthogonal to xi
  std::vector<std::vector<double>> horiz;  // n-1 (or n) base vectors, orthonormal
  bool has_estar = false;
  SplitVector estar;                 // normalized K(xi,xi)^th when defined
  SplitVector normal;                // unit normal
  std::vector<double> kxx;           // K(xi,xi)
  double kxx_norm = 0.0;             // |K(xi,xi)|_g
  double f = 0.0;                    // 1/sqrt(r^2 + |K(xi,xi)|^2)

  /// All 2n-1 tangent frame vectors in a fixed order (vertical block,
  /// horizontal block, then e* when present).
  std::vector<SplitVector> tangent_vectors() const;
};
SphereFrame sphere_frame(const CurvatureBundle& b, const SpherePoint& sp);

/// Second fundamental form of the sphere bundle (closed forms). The slot
/// kinds select tangential lifts of the base arguments; TangentVertical
/// arguments must be orthogonal to xi.
double second_fundamental_form(const CurvatureBundle& b, const SpherePoint& sp, SphereSlot a,
                               std::span<const double> X, SphereSlot bk, std::span<const double> Y);
double second_fundamental_form(const StatisticalStructure& s, const SpherePoint& sp, SphereSlot a,
                               std::span<const double> X, SphereSlot bk, std::span<const double> Y);

/// Numeric shape operator: S(A) = -(tangential part of nabla_A N), with N
/// differentiated as an explicit field in the induced chart on TM.
/// Entirely independent of the closed forms above.
SplitVector shape_operator_oracle(const StatisticalStructure& s, const SpherePoint& sp, const SplitVector& tangent);

/// Mean curvature (trace of the second fundamental form), single closed
/// formula valid in both the K(xi,xi) = 0 and K(xi,xi) != 0 cases.
double mean_curvature(const CurvatureBundle& b, const SpherePoint& sp);
double mean_curvature(const StatisticalStructure& s, const SpherePoint& sp);

/// Squared norm of the second fundamental form via the per-block closed
/// forms, and via a plain double loop over the frame (cross-check).
double norm_h_squared(const CurvatureBundle& b, const SpherePoint& sp);
double norm_h_squared(const StatisticalStructure& s, const SpherePoint& sp);
double norm_h_squared_loop(const CurvatureBundle& b, const SpherePoint& sp);

/// Ricci of the lifted metric evaluated on the unit normal twice.
double ricci_normal_normal(const CurvatureBundle& b, const SpherePoint& sp);

/// Scalar curvature of the sphere bundle through the hypersurface
/// contraction: rho~ = rho^lift - 2 Ric^lift(N,N) + H^2 - |h|^2.
double scalar_sphere(const CurvatureBundle& b, const SpherePoint& sp);
double scalar_sphere(const StatisticalStructure& s, const SpherePoint& sp);

/// One radius-sweep record.
struct SweepRow {
  std::string structure;
  std::uint64_t seed = 0;
  int point_index = 0;
  double lambda = 1.0;
  double r_eff = 1.0;
  double H = 0.0;
  double norm_h_sq = 0.0;
  double H2_minus_h2 = 0.0;
  double rho_tilde = 0.0;
  double rho_tg = 0.0;
  double ric_NN = 0.0;
};

/// Deterministic sphere-point sample: fixed interior base points crossed
/// with a seeded direction set on the fiber sphere.
std::vector<SpherePoint> sample_sphere_points(const StatisticalStructure& s, double r, int base_count,
                                              int fiber_count, std::uint64_t seed);

/// Evaluates every sweep quantity at (lambda * xi, lambda * r) for each
/// point and each lambda; rows ordered by (point index, lambda descending).
std::vector<SweepRow> radius_sweep(const StatisticalStructure& s, const std::vector<SpherePoint>& points,
                                   const std::vector<double>& lambdas, std::uint64_t seed);

/// Halving grid 1, 1/2, ..., 2^-halvings (clipped at lambda_min if given).
std::vector<double> lambda_grid(int halvings, double lambda_min = 0.0);

}  // namespace statgeom
