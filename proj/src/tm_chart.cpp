#include "statgeom/tm_chart.hpp"

#include <cmath>

namespace statgeom {

namespace {

void require_tm_point(const StatisticalStructure& s, std::span<const double> z) {
  if (static_cast<int>(z.size()) != 2 * s.dim()) throw DomainError("TM point must have 2n coordinates");
  s.require_in_domain(z.subspan(0, static_cast<std::size_t>(s.dim())));
}

DenseTensor wrap_tm(int n, const std::vector<double>& comps, std::vector<Variance> var) {
  DenseTensor t(Frame{FrameKind::CoordTM, n}, std::move(var));
  std::copy(comps.begin(), comps.end(), t.data().begin());
  return t;
}

}  // namespace

DenseTensor tm_metric(const StatisticalStructure& s, std::span<const double> z, TMChartOptions opt) {
  require_tm_point(s, z);
  std::vector<double> G;
  tm_metric_t(s, z, G, opt);
  std::vector<double> chk;
  if (!cholesky(2 * s.dim(), G, chk)) throw MetricDegenerateError("lifted chart metric not SPD");
  return wrap_tm(s.dim(), G, {Variance::Lower, Variance::Lower});
}

DenseTensor tm_christoffel(const StatisticalStructure& s, std::span<const double> z, TMChartOptions opt) {
  require_tm_point(s, z);
  std::vector<double> gamma;
  tm_christoffel_t(s, z, gamma, opt);
  return wrap_tm(s.dim(), gamma, {Variance::Upper, Variance::Lower, Variance::Lower});
}

DenseTensor tm_curvature(const StatisticalStructure& s, std::span<const double> z, TMChartOptions opt) {
  require_tm_point(s, z);
  std::vector<double> r;
  tm_curvature_t(s, z, r, opt);
  return wrap_tm(s.dim(), r, {Variance::Upper, Variance::Lower, Variance::Lower, Variance::Lower});
}

DenseTensor tm_ricci(const StatisticalStructure& s, std::span<const double> z, TMChartOptions opt) {
  require_tm_point(s, z);
  std::vector<double> r, ric;
  tm_curvature_t(s, z, r, opt);
  ricci_from_curvature(2 * s.dim(), r, ric);
  return wrap_tm(s.dim(), ric, {Variance::Lower, Variance::Lower});
}

double tm_scalar(const StatisticalStructure& s, std::span<const double> z, TMChartOptions opt) {
  require_tm_point(s, z);
  const int m = 2 * s.dim();
  std::vector<double> r, ric, G, Ginv;
  tm_curvature_t(s, z, r, opt);
  ricci_from_curvature(m, r, ric);
  tm_metric_t(s, z, G, opt);
  mat_inverse(m, G, Ginv);
  return trace_with_inverse_metric(m, Ginv, ric);
}

std::vector<double> tm_nabla_curvature(const StatisticalStructure& s, std::span<const double> z,
                                       TMChartOptions opt) {
  require_tm_point(s, z);
  const int m = 2 * s.dim();
  const std::size_t m4 = static_cast<std::size_t>(m) * m * m * m;
  std::vector<double> R, dR, gamma, out;
  auto rfn = [&s, opt](auto zs, auto o) {
    using T = std::remove_cvref_t<decltype(zs[0])>;
    std::vector<T> r;
    tm_curvature_t(s, std::span<const T>(zs), r, opt);
    std::copy(r.begin(), r.end(), o.begin());
  };
  std::vector<double> val;
  jacobian(nested_fd(nested_fd(nested_fd(s.deriv()))), rfn, z, m4, val, dR);
  tm_curvature_t(s, z, R, opt);
  tm_christoffel_t(s, z, gamma, opt);
  const Variance ULLL[] = {Variance::Upper, Variance::Lower, Variance::Lower, Variance::Lower};
  covariant_derivative_components(m, std::span<const Variance>(ULLL, 4), R, dR, gamma, out);
  return out;
}

std::vector<double> FrameChange::matrix() const {
  const int m = 2 * n;
  std::vector<double> M(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i) M[static_cast<std::size_t>(i) * m + i] = 1.0;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      M[static_cast<std::size_t>(n + k) * m + i] = A[static_cast<std::size_t>(k) * n + i];
  return M;
}

std::vector<double> FrameChange::matrix_inverse() const {
  const int m = 2 * n;
  std::vector<double> M(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i) M[static_cast<std::size_t>(i) * m + i] = 1.0;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      M[static_cast<std::size_t>(n + k) * m + i] = -A[static_cast<std::size_t>(k) * n + i];
  return M;
}

FrameChange frame_change(const StatisticalStructure& s, std::span<const double> z, TMChartOptions opt) {
  require_tm_point(s, z);
  const int n = s.dim();
  std::vector<double> gamma;
  s.christoffel_t(z.subspan(0, static_cast<std::size_t>(n)), opt.horizontal, gamma);
  FrameChange fc;
  fc.n = n;
  fc.A.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      double sum = 0.0;
      for (int a = 0; a < n; ++a)
        sum += gamma[(static_cast<std::size_t>(k) * n + i) * n + static_cast<std::size_t>(a)] *
               z[static_cast<std::size_t>(n + a)];
      fc.A[static_cast<std::size_t>(k) * n + i] = sum;
    }
  return fc;
}

namespace {

// out[.. a ..] = sum_b T[a][b] in[.. b ..] applied at one slot.
DenseTensor slot_transform(const DenseTensor& t, int slot, const std::vector<double>& T, Frame out_frame) {
  DenseTensor out(out_frame, t.variance());
  const int m = t.extent();
  std::vector<int> idx(static_cast<std::size_t>(t.rank()), 0);
  std::vector<int> src;
  bool more = true;
  while (more) {
    double sum = 0.0;
    src = idx;
    for (int bIdx = 0; bIdx < m; ++bIdx) {
      src[static_cast<std::size_t>(slot)] = bIdx;
      sum += T[static_cast<std::size_t>(idx[static_cast<std::size_t>(slot)]) * m + bIdx] * t.at(src);
    }
    out.at(idx) = sum;
    more = false;
    for (int s2 = t.rank() - 1; s2 >= 0; --s2) {
      if (++idx[static_cast<std::size_t>(s2)] < m) {
        more = true;
        break;
      }
      idx[static_cast<std::size_t>(s2)] = 0;
    }
  }
  return out;
}

std::vector<double> transpose_mat(int m, const std::vector<double>& M) {
  std::vector<double> T(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) T[static_cast<std::size_t>(i) * m + j] = M[static_cast<std::size_t>(j) * m + i];
  return T;
}

DenseTensor change_all_slots(const DenseTensor& t, const std::vector<double>& M_upper,
                             const std::vector<double>& M_lower_t, Frame out_frame) {
  DenseTensor cur = t;
  for (int slot = 0; slot < t.rank(); ++slot) {
    const auto& T = t.variance()[static_cast<std::size_t>(slot)] == Variance::Upper ? M_upper : M_lower_t;
    cur = slot_transform(cur, slot, T, slot + 1 == t.rank() ? out_frame : cur.frame());
  }
  if (!(cur.frame() == out_frame)) {
    DenseTensor out(out_frame, t.variance());
    std::copy(cur.data().begin(), cur.data().end(), out.data().begin());
    return out;
  }
  return cur;
}

}  // namespace

DenseTensor to_adapted(const StatisticalStructure& s, std::span<const double> z, const DenseTensor& coord_tensor,
                       TMChartOptions opt) {
  if (coord_tensor.frame().kind != FrameKind::CoordTM)
    throw FrameMismatchError("to_adapted: expected a CoordTM tensor");
  FrameChange fc = frame_change(s, z, opt);
  const int m = 2 * fc.n;
  auto M = fc.matrix();
  auto Minv = fc.matrix_inverse();
  // upper slots transform with M, lower slots with (M^{-1})^T.
  return change_all_slots(coord_tensor, M, transpose_mat(m, Minv), Frame{FrameKind::AdaptedTM, fc.n});
}

DenseTensor to_coord(const StatisticalStructure& s, std::span<const double> z, const DenseTensor& adapted_tensor,
                     TMChartOptions opt) {
  if (adapted_tensor.frame().kind != FrameKind::AdaptedTM)
    throw FrameMismatchError("to_coord: expected an AdaptedTM tensor");
  FrameChange fc = frame_change(s, z, opt);
  const int m = 2 * fc.n;
  auto M = fc.matrix();
  auto Minv = fc.matrix_inverse();
  return change_all_slots(adapted_tensor, Minv, transpose_mat(m, M), Frame{FrameKind::CoordTM, fc.n});
}

std::vector<double> lift_to_coord(const FrameChange& fc, bool horizontal, std::span<const double> X) {
  const int n = fc.n;
  std::vector<double> out(static_cast<std::size_t>(2 * n), 0.0);
  if (!horizontal) {
    for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(n + k)] = X[static_cast<std::size_t>(k)];
    return out;
  }
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = X[static_cast<std::size_t>(i)];
  for (int k = 0; k < n; ++k) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += fc.A[static_cast<std::size_t>(k) * n + i] * X[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(n + k)] = -sum;
  }
  return out;
}

std::pair<std::vector<double>, std::vector<double>> coord_to_adapted_vector(const FrameChange& fc,
                                                                            std::span<const double> u) {
  const int n = fc.n;
  std::vector<double> h(u.begin(), u.begin() + n);
  std::vector<double> v(u.begin() + n, u.end());
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      v[static_cast<std::size_t>(k)] += fc.A[static_cast<std::size_t>(k) * n + i] * u[static_cast<std::size_t>(i)];
  return {std::move(h), std::move(v)};
}

std::vector<double> adapted_to_coord_vector(const FrameChange& fc, std::span<const double> h,
                                            std::span<const double> v) {
  const int n = fc.n;
  std::vector<double> u(static_cast<std::size_t>(2 * n), 0.0);
  for (int i = 0; i < n; ++i) u[static_cast<std::size_t>(i)] = h[static_cast<std::size_t>(i)];
  for (int k = 0; k < n; ++k) {
    double sum = v[static_cast<std::size_t>(k)];
    for (int i = 0; i < n; ++i) sum -= fc.A[static_cast<std::size_t>(k) * n + i] * h[static_cast<std::size_t>(i)];
    u[static_cast<std::size_t>(n + k)] = sum;
  }
  return u;
}

}  // namespace statgeom
