#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "statgeom/checks.hpp"
#include "statgeom/gallery.hpp"
#include "statgeom/report.hpp"
#include "statgeom/sphere.hpp"
#include "statgeom/tangent.hpp"
#include "statgeom/tm_chart.hpp"

namespace py = pybind11;
using namespace statgeom;

namespace {

py::dict tensor_dict(const DenseTensor& t) {
  py::dict d;
  d["frame"] = to_string(t.frame().kind);
  std::vector<int> dims(static_cast<std::size_t>(t.rank()), t.extent());
  d["dims"] = dims;
  d["data"] = std::vector<double>(t.data().begin(), t.data().end());
  return d;
}

ConnectionKind kind_of(const std::string& name) {
  if (name == "levi_civita") return ConnectionKind::LeviCivita;
  if (name == "statistical") return ConnectionKind::Statistical;
  if (name == "conjugate") return ConnectionKind::Conjugate;
  throw ConfigError("connection kind must be levi_civita, statistical or conjugate");
}

/// Python-facing handle for one gallery structure.
class Structure {
 public:
  Structure(const std::string& id, int dim, double alpha, const std::string& deriv)
      : entry_(make_gallery(id, params(dim, alpha, deriv))) {}

  static GalleryParams params(int dim, double alpha, const std::string& deriv) {
    GalleryParams p;
    p.dim = dim;
    p.alpha = alpha;
    if (deriv == "fd")
      p.deriv.mode = DerivMode::FiniteDifference;
    else if (deriv != "dual")
      throw ConfigError("deriv must be 'dual' or 'fd'");
    return p;
  }

  std::string id() const { return entry_.id; }
  int dim() const { return entry_.structure.dim(); }
  std::pair<std::vector<double>, std::vector<double>> domain() const {
    return {entry_.structure.domain().lo, entry_.structure.domain().hi};
  }

  py::dict classify_flags() const {
    auto f = sampled_flags(entry_.structure, 1e-7, 8, 17);
    py::dict d;
    d["trivial"] = f.trivial;
    d["conjugate_symmetric"] = f.conjugate_symmetric;
    d["hessian"] = f.hessian;
    return d;
  }

  py::dict christoffel_at(const std::vector<double>& x, const std::string& kind) const {
    return tensor_dict(christoffel(entry_.structure, x, kind_of(kind)));
  }
  py::dict curvature_at(const std::vector<double>& x, const std::string& kind) const {
    return tensor_dict(curvature(entry_.structure, x, kind_of(kind)));
  }
  py::dict koszul_at(const std::vector<double>& x) const {
    auto k = koszul_forms(entry_.structure, x);
    py::dict d;
    d["tau"] = tensor_dict(k.tau);
    d["nabla_tau"] = tensor_dict(k.nabla_tau);
    d["E"] = tensor_dict(k.E);
    return d;
  }
  py::dict ricci_at(const std::vector<double>& x) const {
    auto r = ricci_family(entry_.structure, x);
    py::dict d;
    d["ric"] = tensor_dict(r.ric);
    d["ric_star"] = tensor_dict(r.ric_star);
    d["ric_g"] = tensor_dict(r.ric_g);
    d["ric_K"] = tensor_dict(r.ric_K);
    d["frak_ric"] = tensor_dict(r.frak_ric);
    return d;
  }
  std::pair<double, double> scalars_at(const std::vector<double>& x) const {
    auto s = scalars(entry_.structure, x);
    return {s.rho, s.rho_g};
  }
  double sectional_at(const std::vector<double>& x, const std::vector<double>& X, const std::vector<double>& Y,
                      const std::string& kind) const {
    SectionalKind k;
    if (kind == "riemannian")
      k = SectionalKind::Riemannian;
    else if (kind == "k_curv")
      k = SectionalKind::Kcurv;
    else if (kind == "mean_pair")
      k = SectionalKind::Frak;
    else
      throw ConfigError("sectional kind: riemannian | k_curv | mean_pair");
    return sectional(entry_.structure, x, X, Y, k);
  }

  py::dict lift_metric_at(const std::vector<double>& x) const {
    auto b = curvature_bundle(entry_.structure, x);
    return tensor_dict(lift_metric(b));
  }
  py::dict lift_curvature_at(const std::vector<double>& x, const std::vector<double>& xi) const {
    auto b = curvature_bundle(entry_.structure, x);
    return tensor_dict(curvature_tg_adapted(b, xi));
  }
  py::dict lift_ricci_at(const std::vector<double>& x, const std::vector<double>& xi) const {
    auto b = curvature_bundle(entry_.structure, x);
    return tensor_dict(ricci_tg_adapted(b, xi));
  }
  double lift_scalar_at(const std::vector<double>& x, const std::vector<double>& xi) const {
    auto b = curvature_bundle(entry_.structure, x);
    return scalar_tg(b, xi);
  }
  double lift_sectional_at(const std::vector<double>& x, const std::vector<double>& xi, const std::string& pair,
                           const std::vector<double>& X, const std::vector<double>& Y) const {
    auto b = curvature_bundle(entry_.structure, x);
    SectionalPair p = pair == "vv" ? SectionalPair::VV : pair == "hh" ? SectionalPair::HH : SectionalPair::VH;
    return sectional_tg(b, xi, p, X, Y);
  }
  py::dict oracle_at(const std::vector<double>& x, const std::vector<double>& xi) const {
    std::vector<double> z = x;
    z.insert(z.end(), xi.begin(), xi.end());
    py::dict d;
    d["metric"] = tensor_dict(tm_metric(entry_.structure, z));
    d["curvature_adapted"] = tensor_dict(to_adapted(entry_.structure, z, tm_curvature(entry_.structure, z)));
    d["scalar"] = tm_scalar(entry_.structure, z);
    return d;
  }

  py::dict sphere_at(const std::vector<double>& x, const std::vector<double>& xi, double r) const {
    auto b = curvature_bundle(entry_.structure, x);
    auto sp = make_sphere_point(b, xi, r);
    py::dict d;
    d["r"] = sp.r;
    d["xi"] = sp.tp.xi;
    d["H"] = mean_curvature(b, sp);
    d["norm_h_sq"] = norm_h_squared(b, sp);
    d["rho_sphere"] = scalar_sphere(b, sp);
    d["ric_NN"] = ricci_normal_normal(b, sp);
    auto N = sphere_normal(b, sp);
    d["normal_h"] = N.h;
    d["normal_v"] = N.v;
    return d;
  }

  py::list sweep(double r, int halvings, int points, int fiber_dirs, std::uint64_t seed) const {
    auto pts = sample_sphere_points(entry_.structure, r, points, fiber_dirs, seed);
    auto rows = radius_sweep(entry_.structure, pts, lambda_grid(halvings), seed);
    py::list out;
    for (const auto& row : rows) {
      py::dict d;
      d["point_index"] = row.point_index;
      d["lambda"] = row.lambda;
      d["r_eff"] = row.r_eff;
      d["H"] = row.H;
      d["norm_h_sq"] = row.norm_h_sq;
      d["H2_minus_h2"] = row.H2_minus_h2;
      d["rho_tilde"] = row.rho_tilde;
      d["rho_tg"] = row.rho_tg;
      d["ric_NN"] = row.ric_NN;
      out.append(d);
    }
    return out;
  }

  py::dict verify(std::uint64_t seed, int base_points, int tm_points, int sphere_points, bool with_oracle) const {
    VerifyOptions opt;
    opt.seed = seed;
    opt.base_points = base_points;
    opt.tm_points = tm_points;
    opt.sphere_points = sphere_points;
    opt.with_oracle = with_oracle;
    auto results = run_verification(entry_, opt);
    py::dict d;
    py::list checks;
    for (const auto& c : results) {
      py::dict cd;
      cd["id"] = c.id;
      cd["ref"] = c.ref;
      cd["max_residual"] = c.max_residual;
      cd["tolerance"] = c.tolerance;
      cd["pass"] = c.pass;
      cd["points"] = c.points;
      checks.append(cd);
    }
    d["checks"] = checks;
    d["all_pass"] = all_pass(results);
    d["structure"] = entry_.id;
    d["seed"] = seed;
    return d;
  }

 private:
  GalleryEntry entry_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "numerical geometry of statistical manifolds, their tangent bundles and sphere bundles";
  m.attr("__version__") = kVersion;

  py::register_exception<GeomError>(m, "GeomError");

  m.def(
      "gallery_ids", [] { return gallery_ids(); }, "registered structure ids");

  py::class_<Structure>(m, "Structure")
      .def(py::init<const std::string&, int, double, const std::string&>(), py::arg("id"), py::arg("dim") = 3,
           py::arg("alpha") = 1.0, py::arg("deriv") = "dual")
      .def_property_readonly("id", &Structure::id)
      .def_property_readonly("dim", &Structure::dim)
      .def("domain", &Structure::domain, "chart box as (lo, hi) coordinate lists")
      .def("classify", &Structure::classify_flags, "trivial / conjugate-symmetric / flat-connection flags")
      .def("christoffel", &Structure::christoffel_at, py::arg("x"), py::arg("kind") = "statistical")
      .def("curvature", &Structure::curvature_at, py::arg("x"), py::arg("kind") = "statistical")
      .def("koszul", &Structure::koszul_at, py::arg("x"))
      .def("ricci_family", &Structure::ricci_at, py::arg("x"))
      .def("scalars", &Structure::scalars_at, py::arg("x"), "(rho, rho_g)")
      .def("sectional", &Structure::sectional_at, py::arg("x"), py::arg("X"), py::arg("Y"),
           py::arg("kind") = "riemannian")
      .def("lift_metric", &Structure::lift_metric_at, py::arg("x"))
      .def("lift_curvature", &Structure::lift_curvature_at, py::arg("x"), py::arg("xi"),
           "closed-form curvature of the lifted metric, adapted frame")
      .def("lift_ricci", &Structure::lift_ricci_at, py::arg("x"), py::arg("xi"))
      .def("lift_scalar", &Structure::lift_scalar_at, py::arg("x"), py::arg("xi"))
      .def("lift_sectional", &Structure::lift_sectional_at, py::arg("x"), py::arg("xi"), py::arg("pair"),
           py::arg("X"), py::arg("Y"))
      .def("oracle", &Structure::oracle_at, py::arg("x"), py::arg("xi"),
           "brute-force chart quantities on the tangent bundle")
      .def("sphere", &Structure::sphere_at, py::arg("x"), py::arg("xi"), py::arg("r") = 1.0,
           "extrinsic sphere-bundle quantities at (x, xi projected to radius r)")
      .def("sweep", &Structure::sweep, py::arg("r") = 1.0, py::arg("halvings") = 10, py::arg("points") = 4,
           py::arg("fiber_dirs") = 6, py::arg("seed") = 7)
      .def("verify", &Structure::verify, py::arg("seed") = 7, py::arg("base_points") = 20,
           py::arg("tm_points") = 10, py::arg("sphere_points") = 6, py::arg("with_oracle") = true);
}
