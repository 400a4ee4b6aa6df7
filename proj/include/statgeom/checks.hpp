#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "statgeom/gallery.hpp"

namespace statgeom {

/// Outcome of one named verification check on one structure.
struct CheckResult {
  std::string id;
  std::string ref;      // one-line statement of what the check certifies
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  int points = 0;
};

struct VerifyOptions {
  std::uint64_t seed = 7;
  int base_points = 20;    // base-manifold sample size
  int tm_points = 10;      // (x, xi) sample size for lifted checks
  int sphere_points = 6;   // sphere-bundle sample size
  double identity_tol = 0; // 0: default for the derivative mode
  double oracle_tol = 0;   // 0: default for the derivative mode
  bool with_oracle = true; // include the brute-force chart comparisons
  bool with_sweep = true;  // include the radius-sweep boundedness checks
};

double default_identity_tol(DerivMode mode);
double default_oracle_tol(DerivMode mode);

/// Runs every applicable check for one gallery entry. Deterministic for a
/// fixed (entry, options) pair.
std::vector<CheckResult> run_verification(const GalleryEntry& entry, const VerifyOptions& opt);

bool all_pass(const std::vector<CheckResult>& results);

}  // namespace statgeom
