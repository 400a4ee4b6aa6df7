// Command-line front door: verification suites, pointwise curvature
// evaluation with oracle cross-checks, and radius sweeps over sphere
// bundles. Exit codes: 0 all checks pass, 1 check failure, 2 usage or
// configuration error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "statgeom/checks.hpp"
#include "statgeom/gallery.hpp"
#include "statgeom/report.hpp"
#include "statgeom/sphere.hpp"
#include "statgeom/tangent.hpp"
#include "statgeom/tm_chart.hpp"

namespace {

using namespace statgeom;

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("cannot parse coordinate list: " + text);
    }
  }
  if (out.empty()) throw ConfigError("empty coordinate list");
  return out;
}

struct CommonArgs {
  std::string structure = "euclid_trivial";
  int dim = 3;
  double alpha = 1.0;
  std::uint64_t seed = 7;
  std::string deriv = "dual";
  double fd_step = 1e-5;

  GalleryEntry make() const {
    GalleryParams p;
    p.dim = dim;
    p.alpha = alpha;
    if (deriv == "fd")
      p.deriv.mode = DerivMode::FiniteDifference;
    else if (deriv != "dual")
      throw ConfigError("deriv mode must be 'dual' or 'fd'");
    p.deriv.fd_step = fd_step;
    return make_gallery(structure, p);
  }
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->set_config("--config", "", "read options for this subcommand from an ini-style file");
  cmd->add_option("--structure", args.structure, "gallery structure id")
      ->check(CLI::IsMember(gallery_ids()))
      ->capture_default_str();
  cmd->add_option("--dim", args.dim, "base dimension (2..4, where applicable)")->capture_default_str();
  cmd->add_option("--alpha", args.alpha, "skewness scale for gaussian_fisher")->capture_default_str();
  cmd->add_option("--seed", args.seed, "sampling seed")->capture_default_str();
  cmd->add_option("--deriv", args.deriv, "derivative engine: dual | fd")->capture_default_str();
  cmd->add_option("--fd-step", args.fd_step, "finite-difference step")->capture_default_str();
}

void write_or_print(const std::string& path, const std::string& payload, bool quiet, const std::string& human) {
  if (!path.empty()) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file " + path);
    f << payload;
  }
  if (!quiet) std::fputs(human.c_str(), stdout);
}

int cmd_verify(const CommonArgs& common, const VerifyOptions& opt, const std::string& json_path, bool quiet) {
  auto entry = common.make();
  Report rep;
  rep.structure = entry.id;
  rep.seed = opt.seed;
  rep.deriv_mode = deriv_mode_name(entry.structure.deriv().mode);
  rep.checks = run_verification(entry, opt);
  write_or_print(json_path, rep.to_json(), quiet, rep.human_summary());
  return rep.all_pass() ? 0 : 1;
}

nlohmann::ordered_json tensor_json(const DenseTensor& t) {
  nlohmann::ordered_json j;
  j["frame"] = to_string(t.frame().kind);
  j["rank"] = t.rank();
  j["extent"] = t.extent();
  j["components"] = std::vector<double>(t.data().begin(), t.data().end());
  return j;
}

int cmd_curvature(const CommonArgs& common, const std::string& x_text, const std::string& xi_text,
                  const std::string& what, double r, const std::string& json_path, bool quiet) {
  auto entry = common.make();
  const auto& s = entry.structure;
  auto x = parse_point(x_text);
  if (static_cast<int>(x.size()) != s.dim())
    throw DomainError("point has " + std::to_string(x.size()) + " coordinates, structure needs " +
                      std::to_string(s.dim()));
  std::vector<double> xi(static_cast<std::size_t>(s.dim()), 0.0);
  if (!xi_text.empty()) xi = parse_point(xi_text);
  if (static_cast<int>(xi.size()) != s.dim()) throw DomainError("fiber vector dimension mismatch");

  nlohmann::ordered_json j;
  j["structure"] = entry.id;
  j["x"] = x;
  j["xi"] = xi;
  std::string human;
  char line[256];

  auto b = curvature_bundle(s, x);
  if (what == "base") {
    j["curvature_lc"] = tensor_json(curvature(s, x, ConnectionKind::LeviCivita));
    j["curvature_statistical"] = tensor_json(curvature(s, x, ConnectionKind::Statistical));
    j["curvature_conjugate"] = tensor_json(curvature(s, x, ConnectionKind::Conjugate));
    auto fam = ricci_family(s, x);
    j["ricci"] = tensor_json(fam.ric);
    j["ricci_g"] = tensor_json(fam.ric_g);
    j["ricci_K"] = tensor_json(fam.ric_K);
    auto sc = scalars(s, x);
    j["rho"] = sc.rho;
    j["rho_g"] = sc.rho_g;
    std::snprintf(line, sizeof line, "rho = %.12g   rho_g = %.12g\n", sc.rho, sc.rho_g);
    human += line;
  } else if (what == "sasaki") {
    std::vector<double> z = x;
    z.insert(z.end(), xi.begin(), xi.end());
    auto closed = curvature_tg_adapted(b, xi);
    auto oracle = to_adapted(s, z, tm_curvature(s, z));
    double curv_delta = rel_diff(closed, oracle);
    double rho_closed = scalar_tg(b, xi);
    double rho_oracle = tm_scalar(s, z);
    j["curvature_closed"] = tensor_json(closed);
    j["curvature_oracle"] = tensor_json(oracle);
    j["curvature_rel_delta"] = curv_delta;
    j["rho_closed"] = rho_closed;
    j["rho_oracle"] = rho_oracle;
    j["rho_delta"] = rho_closed - rho_oracle;
    std::snprintf(line, sizeof line,
                  "lifted scalar: closed %.12g, oracle %.12g; curvature rel delta %.3e\n", rho_closed,
                  rho_oracle, curv_delta);
    human += line;
  } else if (what == "sphere") {
    auto sp = make_sphere_point(b, xi, r);
    double H = mean_curvature(b, sp);
    double h2 = norm_h_squared(b, sp);
    double rho = scalar_sphere(b, sp);
    double ricnn = ricci_normal_normal(b, sp);
    SphereFrame fr = sphere_frame(b, sp);
    auto tangents = fr.tangent_vectors();
    double trS = 0.0, frob = 0.0;
    for (std::size_t a = 0; a < tangents.size(); ++a) {
      auto S = shape_operator_oracle(s, sp, tangents[a]);
      trS += lift_inner(b, S, tangents[a]);
      for (std::size_t c = 0; c < tangents.size(); ++c) {
        double v = lift_inner(b, S, tangents[c]);
        frob += v * v;
      }
    }
    j["r"] = sp.r;
    j["H"] = H;
    j["H_oracle"] = trS;
    j["norm_h_sq"] = h2;
    j["norm_h_sq_oracle"] = frob;
    j["rho_sphere"] = rho;
    j["ric_NN"] = ricnn;
    std::snprintf(line, sizeof line,
                  "H = %.12g (oracle %.12g)   |h|^2 = %.12g (oracle %.12g)\nrho_sphere = %.12g   Ric(N,N) = %.12g\n",
                  H, trS, h2, frob, rho, ricnn);
    human += line;
  } else {
    throw ConfigError("--what must be base, sasaki or sphere");
  }
  write_or_print(json_path, j.dump(2) + "\n", quiet, human);
  return 0;
}

int cmd_sweep(const CommonArgs& common, double r, int halvings, double lambda_min, int points, int fiber,
              const std::string& out_path, bool quiet) {
  auto entry = common.make();
  auto pts = sample_sphere_points(entry.structure, r, points, fiber, common.seed);
  auto rows = radius_sweep(entry.structure, pts, lambda_grid(halvings, lambda_min), common.seed);
  std::string csv = sweep_csv(rows);
  if (out_path.empty()) {
    std::fputs(csv.c_str(), stdout);
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file " + out_path);
    f << csv;
    if (!quiet)
      std::printf("wrote %zu rows (%d sphere points x %d radii) to %s\n", rows.size(), static_cast<int>(pts.size()),
                  halvings + 1, out_path.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical geometry of statistical manifolds and their tangent/sphere bundles"};
  app.require_subcommand(1);

  CommonArgs common;
  VerifyOptions vopt;
  std::string json_path, out_path, x_text, xi_text, what = "base";
  double r = 1.0, lambda_min = 0.0;
  int halvings = 10, points = 4, fiber = 6;
  bool quiet = false, no_oracle = false, no_sweep = false;

  auto* verify = app.add_subcommand("verify", "run the verification suites and emit a report");
  add_common(verify, common);
  verify->add_option("--samples", vopt.base_points, "base-point sample count")->capture_default_str();
  verify->add_option("--tm-samples", vopt.tm_points, "tangent-bundle sample count")->capture_default_str();
  verify->add_option("--sphere-samples", vopt.sphere_points, "sphere-bundle sample count")->capture_default_str();
  verify->add_option("--identity-tol", vopt.identity_tol, "identity-check tolerance override");
  verify->add_option("--oracle-tol", vopt.oracle_tol, "oracle-check tolerance override");
  verify->add_flag("--no-oracle", no_oracle, "skip brute-force chart comparisons");
  verify->add_flag("--no-sweep", no_sweep, "skip radius-sweep boundedness checks");
  verify->add_option("--json", json_path, "write the JSON report here");
  verify->add_flag("--quiet", quiet, "suppress the human-readable summary");

  auto* curv = app.add_subcommand("curvature", "evaluate curvatures at a point");
  add_common(curv, common);
  curv->add_option("--x", x_text, "base point, comma-separated")->required();
  curv->add_option("--xi", xi_text, "fiber vector, comma-separated (default zero)");
  curv->add_option("--what", what, "base | sasaki | sphere")->capture_default_str();
  curv->add_option("--r", r, "sphere radius (sphere mode; xi is projected)")->capture_default_str();
  curv->add_option("--json", json_path, "write JSON output here");
  curv->add_flag("--quiet", quiet, "suppress the human-readable summary");

  auto* sweep = app.add_subcommand("sweep", "radius sweep over sphere bundles, CSV output");
  add_common(sweep, common);
  sweep->add_option("--r", r, "initial sphere radius")->capture_default_str();
  sweep->add_option("--halvings", halvings, "number of lambda halvings from 1")->capture_default_str();
  sweep->add_option("--lambda-min", lambda_min, "stop the grid at this lambda");
  sweep->add_option("--points", points, "base-point count")->capture_default_str();
  sweep->add_option("--fiber-dirs", fiber, "fiber directions per base point")->capture_default_str();
  sweep->add_option("--out", out_path, "CSV output path (stdout when omitted)");
  sweep->add_flag("--quiet", quiet, "suppress the progress line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) {
      vopt.seed = common.seed;
      vopt.with_oracle = !no_oracle;
      vopt.with_sweep = !no_sweep;
      return cmd_verify(common, vopt, json_path, quiet);
    }
    if (curv->parsed()) return cmd_curvature(common, x_text, xi_text, what, r, json_path, quiet);
    if (sweep->parsed()) return cmd_sweep(common, r, halvings, lambda_min, points, fiber, out_path, quiet);
  } catch (const GeomError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected error: %s\n", e.what());
    return 2;
  }
  return 2;
}
