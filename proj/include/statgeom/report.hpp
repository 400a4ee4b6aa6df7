#pragma once

#include <string>
#include <vector>

#include "statgeom/checks.hpp"
#include "statgeom/sphere.hpp"

namespace statgeom {

inline constexpr const char* kVersion = "0.1.0";

/// Machine-readable verification report; serialization is stable, so a
/// fixed (config, seed) pair produces byte-identical output.
struct Report {
  std::string structure;
  std::uint64_t seed = 0;
  std::string deriv_mode;
  std::string version = kVersion;
  std::vector<CheckResult> checks;

  bool all_pass() const { return statgeom::all_pass(checks); }
  std::string to_json() const;
  std::string human_summary() const;
};

std::string deriv_mode_name(DerivMode mode);

/// CSV with the fixed sweep schema, floats at 17 significant digits:
/// structure,seed,point_index,lambda,r_eff,H,norm_h_sq,H2_minus_h2,
/// rho_tilde,rho_tg,ric_NN
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace statgeom
