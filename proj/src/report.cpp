#include "statgeom/report.hpp"

#include <cstdio>

#include "json.hpp"

namespace statgeom {

std::string deriv_mode_name(DerivMode mode) {
  return mode == DerivMode::DualNumber ? "dual" : "fd";
}

std::string Report::to_json() const {
  nlohmann::ordered_json j;
  j["environment"] = {{"version", version}, {"seed", seed}, {"deriv_mode", deriv_mode}, {"structure", structure}};
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    j["checks"].push_back({{"id", c.id},
                           {"ref", c.ref},
                           {"max_residual", c.max_residual},
                           {"tolerance", c.tolerance},
                           {"pass", c.pass},
                           {"points", c.points}});
  }
  j["all_pass"] = all_pass();
  return j.dump(2) + "\n";
}

std::string Report::human_summary() const {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "structure %s  seed %llu  deriv %s\n", structure.c_str(),
                static_cast<unsigned long long>(seed), deriv_mode.c_str());
  out += line;
  for (const auto& c : checks) {
    std::snprintf(line, sizeof line, "  [%s] %-28s residual %.3e  tol %.3e  (%d pts)\n",
                  c.pass ? "PASS" : "FAIL", c.id.c_str(), c.max_residual, c.tolerance, c.points);
    out += line;
  }
  std::snprintf(line, sizeof line, "%zu checks, %s\n", checks.size(), all_pass() ? "all passed" : "FAILURES");
  out += line;
  return out;
}

namespace {

void append_g17(std::string& out, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

}  // namespace

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "structure,seed,point_index,lambda,r_eff,H,norm_h_sq,H2_minus_h2,rho_tilde,rho_tg,ric_NN\n";
  for (const auto& r : rows) {
    out += r.structure;
    out += ',';
    out += std::to_string(r.seed);
    out += ',';
    out += std::to_string(r.point_index);
    for (double v : {r.lambda, r.r_eff, r.H, r.norm_h_sq, r.H2_minus_h2, r.rho_tilde, r.rho_tg, r.ric_NN}) {
      out += ',';
      append_g17(out, v);
    }
    out += '\n';
  }
  return out;
}

}  // namespace statgeom
