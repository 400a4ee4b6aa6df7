#pragma once

#include <string>
#include <vector>

#include "statgeom/statistical.hpp"

namespace statgeom {

/// A registered, analytically specified statistical structure together with
/// its expected classification flags. Every test suite and sweep draws its
/// inputs from here.
struct GalleryEntry {
  std::string id;
  StatisticalStructure structure;
  StructureFlags known_flags;
  std::string notes;
};

struct GalleryParams {
  int dim = 3;         // used by euclid_trivial, paper_hessian, torus_bump (2..4)
  double alpha = 1.0;  // used by gaussian_fisher (in [-1, 1])
  DerivativeConfig deriv{};
};

/// Structure ids accepted here and by the CLI's --structure flag:
///   euclid_trivial   flat metric, K = 0
///   paper_hessian    flat metric on the positive orthant, diagonal K with
///                    lambda_i = -1/x_i (Hessian, parallel K, flat lift)
///   round_sphere2    unit 2-sphere in the stereographic chart, K = 0
///   gaussian_fisher  (mu, sigma) Fisher metric with the alpha-scaled
///                    skewness tensor
///   torus_bump       periodic bump metric with a small periodic cubic form
GalleryEntry make_gallery(const std::string& id, const GalleryParams& params = {});

const std::vector<std::string>& gallery_ids();

/// All five entries at the given base dimension (entries with a fixed
/// dimension ignore it).
std::vector<GalleryEntry> full_gallery(int dim, double alpha = 1.0, DerivativeConfig deriv = {});

}  // namespace statgeom
