#include "statgeom/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace statgeom {

std::string to_string(FrameKind k) {
  switch (k) {
    case FrameKind::BaseCoord:
      return "BaseCoord";
    case FrameKind::AdaptedTM:
      return "AdaptedTM";
    case FrameKind::CoordTM:
      return "CoordTM";
  }
  return "?";
}

DenseTensor::DenseTensor(Frame frame, std::vector<Variance> variance)
    : frame_(frame), variance_(std::move(variance)) {
  std::size_t sz = 1;
  for (std::size_t i = 0; i < variance_.size(); ++i) sz *= static_cast<std::size_t>(frame_.extent());
  data_.assign(sz, 0.0);
}

DenseTensor DenseTensor::zeros(Frame frame, std::vector<Variance> variance) {
  return DenseTensor(frame, std::move(variance));
}

DenseTensor DenseTensor::identity(Frame frame) {
  DenseTensor t(frame, {Variance::Upper, Variance::Lower});
  int m = frame.extent();
  for (int i = 0; i < m; ++i) t.data_[static_cast<std::size_t>(i) * m + i] = 1.0;
  return t;
}

std::size_t DenseTensor::flat_index(std::span<const int> idx) const {
  if (static_cast<int>(idx.size()) != rank()) throw FrameMismatchError("index rank mismatch");
  std::size_t f = 0;
  int m = extent();
  for (std::size_t s = 0; s < idx.size(); ++s) {
    if (idx[s] < 0 || idx[s] >= m) throw FrameMismatchError("index out of range");
    f = f * static_cast<std::size_t>(m) + static_cast<std::size_t>(idx[s]);
  }
  return f;
}

double& DenseTensor::at(std::span<const int> idx) { return data_[flat_index(idx)]; }
double DenseTensor::at(std::span<const int> idx) const { return data_[flat_index(idx)]; }

DenseTensor& DenseTensor::operator+=(const DenseTensor& o) {
  if (frame_ != o.frame_ || variance_ != o.variance_) throw FrameMismatchError("tensor add: incompatible tensors");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

DenseTensor& DenseTensor::operator-=(const DenseTensor& o) {
  if (frame_ != o.frame_ || variance_ != o.variance_) throw FrameMismatchError("tensor sub: incompatible tensors");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

DenseTensor& DenseTensor::operator*=(double c) {
  for (double& v : data_) v *= c;
  return *this;
}

double DenseTensor::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double DenseTensor::frobenius() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

namespace {

// Iterate all multi-indices of the given rank/extent.
bool next_index(std::vector<int>& idx, int m) {
  for (int s = static_cast<int>(idx.size()) - 1; s >= 0; --s) {
    if (++idx[s] < m) return true;
    idx[s] = 0;
  }
  return false;
}

}  // namespace

DenseTensor contract(const DenseTensor& t, int slot_a, int slot_b) {
  int r = t.rank();
  if (slot_a < 0 || slot_b < 0 || slot_a >= r || slot_b >= r || slot_a == slot_b)
    throw FrameMismatchError("contract: bad slot pair");
  if (t.variance()[slot_a] == t.variance()[slot_b])
    throw FrameMismatchError("contract: slots must pair upper with lower");
  int m = t.extent();

  std::vector<Variance> out_var;
  for (int s = 0; s < r; ++s)
    if (s != slot_a && s != slot_b) out_var.push_back(t.variance()[s]);
  DenseTensor out(t.frame(), out_var);

  std::vector<int> oidx(out_var.size(), 0);
  std::vector<int> tidx(static_cast<std::size_t>(r), 0);
  if (out_var.empty()) {
    double s = 0.0;
    for (int k = 0; k < m; ++k) {
      tidx[static_cast<std::size_t>(slot_a)] = k;
      tidx[static_cast<std::size_t>(slot_b)] = k;
      s += t.at(tidx);
    }
    out.data()[0] = s;
    return out;
  }
  do {
    int oi = 0;
    for (int s = 0; s < r; ++s) {
      if (s == slot_a || s == slot_b) continue;
      tidx[static_cast<std::size_t>(s)] = oidx[static_cast<std::size_t>(oi++)];
    }
    double sum = 0.0;
    for (int k = 0; k < m; ++k) {
      tidx[static_cast<std::size_t>(slot_a)] = k;
      tidx[static_cast<std::size_t>(slot_b)] = k;
      sum += t.at(tidx);
    }
    out.at(oidx) = sum;
  } while (next_index(oidx, m));
  return out;
}

DenseTensor raise_lower(const DenseTensor& t, int slot, const DenseTensor& metric) {
  if (slot < 0 || slot >= t.rank()) throw FrameMismatchError("raise_lower: bad slot");
  if (metric.rank() != 2 || metric.frame() != t.frame())
    throw FrameMismatchError("raise_lower: metric frame mismatch");
  int m = t.extent();

  // Contract with g to lower, with g^{-1} to raise; g^{-1} via Cholesky so a
  // non-SPD metric is reported instead of silently used.
  std::vector<double> gmat(metric.data().begin(), metric.data().end());
  std::vector<double> weight;
  if (t.variance()[slot] == Variance::Upper) {
    std::vector<double> chk;
    if (!cholesky(m, gmat, chk)) throw MetricDegenerateError("raise_lower: metric not SPD");
    weight = gmat;
  } else {
    weight = spd_inverse(m, gmat);
  }

  std::vector<Variance> out_var = t.variance();
  out_var[static_cast<std::size_t>(slot)] =
      t.variance()[static_cast<std::size_t>(slot)] == Variance::Upper ? Variance::Lower : Variance::Upper;
  DenseTensor out(t.frame(), out_var);

  std::vector<int> idx(static_cast<std::size_t>(t.rank()), 0);
  std::vector<int> src = idx;
  do {
    double sum = 0.0;
    src = idx;
    for (int k = 0; k < m; ++k) {
      src[static_cast<std::size_t>(slot)] = k;
      sum += weight[static_cast<std::size_t>(idx[static_cast<std::size_t>(slot)]) * m + k] * t.at(src);
    }
    out.at(idx) = sum;
  } while (next_index(idx, m));
  return out;
}

namespace {

DenseTensor sym_impl(const DenseTensor& t, int slot_a, int slot_b, double sign) {
  int r = t.rank();
  if (slot_a < 0 || slot_b < 0 || slot_a >= r || slot_b >= r || slot_a == slot_b)
    throw FrameMismatchError("symmetrize: bad slot pair");
  if (t.variance()[slot_a] != t.variance()[slot_b])
    throw FrameMismatchError("symmetrize: slots must share variance");
  DenseTensor out(t.frame(), t.variance());
  int m = t.extent();
  std::vector<int> idx(static_cast<std::size_t>(r), 0);
  std::vector<int> swp;
  do {
    swp = idx;
    std::swap(swp[static_cast<std::size_t>(slot_a)], swp[static_cast<std::size_t>(slot_b)]);
    out.at(idx) = 0.5 * (t.at(idx) + sign * t.at(swp));
  } while (next_index(idx, m));
  return out;
}

}  // namespace

DenseTensor symmetrize(const DenseTensor& t, int slot_a, int slot_b) { return sym_impl(t, slot_a, slot_b, 1.0); }
DenseTensor antisymmetrize(const DenseTensor& t, int slot_a, int slot_b) { return sym_impl(t, slot_a, slot_b, -1.0); }

double max_abs_diff(const DenseTensor& a, const DenseTensor& b) {
  if (a.frame() != b.frame() || a.variance() != b.variance())
    throw FrameMismatchError("max_abs_diff: incompatible tensors");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

double rel_diff(const DenseTensor& a, const DenseTensor& b) {
  if (a.frame() != b.frame() || a.variance() != b.variance())
    throw FrameMismatchError("rel_diff: incompatible tensors");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a.data()[i] - b.data()[i];
    num += d * d;
    den += b.data()[i] * b.data()[i];
  }
  return std::sqrt(num) / std::max(1.0, std::sqrt(den));
}

bool cholesky(int n, std::span<const double> a, std::vector<double>& lower) {
  lower.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = a[static_cast<std::size_t>(i) * n + j];
      for (int k = 0; k < j; ++k) s -= lower[static_cast<std::size_t>(i) * n + k] * lower[static_cast<std::size_t>(j) * n + k];
      if (i == j) {
        if (s <= 0.0 || !std::isfinite(s)) return false;
        lower[static_cast<std::size_t>(i) * n + j] = std::sqrt(s);
      } else {
        lower[static_cast<std::size_t>(i) * n + j] = s / lower[static_cast<std::size_t>(j) * n + j];
      }
    }
  }
  return true;
}

std::vector<double> spd_inverse(int n, std::span<const double> a) {
  std::vector<double> l;
  if (!cholesky(n, a, l)) throw MetricDegenerateError("spd_inverse: matrix not SPD");
  // Invert L, then inv = L^{-T} L^{-1}.
  std::vector<double> li(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    li[static_cast<std::size_t>(i) * n + i] = 1.0 / l[static_cast<std::size_t>(i) * n + i];
    for (int j = 0; j < i; ++j) {
      double s = 0.0;
      for (int k = j; k < i; ++k) s += l[static_cast<std::size_t>(i) * n + k] * li[static_cast<std::size_t>(k) * n + j];
      li[static_cast<std::size_t>(i) * n + j] = -s / l[static_cast<std::size_t>(i) * n + i];
    }
  }
  std::vector<double> inv(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = std::max(i, j); k < n; ++k)
        s += li[static_cast<std::size_t>(k) * n + i] * li[static_cast<std::size_t>(k) * n + j];
      inv[static_cast<std::size_t>(i) * n + j] = s;
    }
  return inv;
}

}  // namespace statgeom
