#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "statgeom/dual.hpp"
#include "statgeom/errors.hpp"

namespace statgeom {

/// Frame a tensor's components refer to.
enum class FrameKind : std::uint8_t {
  BaseCoord,  // coordinate frame of the base chart, extent n
  AdaptedTM,  // horizontal/vertical splitting on TM, extent 2n
  CoordTM,    // induced coordinate frame (x, xi) on TM, extent 2n
};

enum class Variance : std::uint8_t { Upper, Lower };

struct Frame {
  FrameKind kind = FrameKind::BaseCoord;
  int n = 0;  // base dimension

  int extent() const { return kind == FrameKind::BaseCoord ? n : 2 * n; }
  bool operator==(const Frame&) const = default;
};

std::string to_string(FrameKind k);

/// Dense multi-index array of doubles in row-major order with a frame tag
/// and per-slot variance. Immutable frame/variance after construction;
/// components are filled in place.
class DenseTensor {
 public:
  DenseTensor() = default;
  DenseTensor(Frame frame, std::vector<Variance> variance);

  static DenseTensor zeros(Frame frame, std::vector<Variance> variance);
  static DenseTensor identity(Frame frame);  // (1,1) delta

  int rank() const { return static_cast<int>(variance_.size()); }
  int extent() const { return frame_.extent(); }
  const Frame& frame() const { return frame_; }
  const std::vector<Variance>& variance() const { return variance_; }
  std::size_t size() const { return data_.size(); }

  double& at(std::span<const int> idx);
  double at(std::span<const int> idx) const;
  double& at(std::initializer_list<int> idx) { return at(std::span<const int>(idx.begin(), idx.size())); }
  double at(std::initializer_list<int> idx) const { return at(std::span<const int>(idx.begin(), idx.size())); }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  DenseTensor& operator+=(const DenseTensor& o);
  DenseTensor& operator-=(const DenseTensor& o);
  DenseTensor& operator*=(double c);

  /// Max-abs component.
  double max_abs() const;
  /// Plain Frobenius norm of the component array (no metric weighting).
  double frobenius() const;

 private:
  Frame frame_{};
  std::vector<Variance> variance_;
  std::vector<double> data_;
  std::size_t flat_index(std::span<const int> idx) const;
};

/// Sum over a paired (upper, lower) slot pair. Rank drops by two.
DenseTensor contract(const DenseTensor& t, int slot_a, int slot_b);

/// Flips the variance of one slot using the given SPD metric (lower with g,
/// raise with its inverse; the inverse is computed here via Cholesky).
DenseTensor raise_lower(const DenseTensor& t, int slot, const DenseTensor& metric);

/// Symmetrize / antisymmetrize over a slot pair (idempotent).
DenseTensor symmetrize(const DenseTensor& t, int slot_a, int slot_b);
DenseTensor antisymmetrize(const DenseTensor& t, int slot_a, int slot_b);

double max_abs_diff(const DenseTensor& a, const DenseTensor& b);

/// Frobenius-relative distance ||a-b||_F / max(1, ||b||_F).
double rel_diff(const DenseTensor& a, const DenseTensor& b);

// --- small dense linear algebra over generic scalars ----------------------

/// Gauss-Jordan inverse with partial pivoting on |value|. Works for any
/// scalar supporting field operations (double or nested duals).
template <class S>
void mat_inverse(int n, const std::vector<S>& a, std::vector<S>& inv) {
  std::vector<S> m = a;
  inv.assign(static_cast<std::size_t>(n) * n, S(0.0));
  for (int i = 0; i < n; ++i) inv[i * n + i] = S(1.0);
  for (int c = 0; c < n; ++c) {
    int piv = c;
    double best = std::abs(value(m[c * n + c]));
    for (int r = c + 1; r < n; ++r) {
      double v = std::abs(value(m[r * n + c]));
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) throw MetricDegenerateError("singular matrix in mat_inverse");
    if (piv != c) {
      for (int j = 0; j < n; ++j) {
        std::swap(m[c * n + j], m[piv * n + j]);
        std::swap(inv[c * n + j], inv[piv * n + j]);
      }
    }
    S d = m[c * n + c];
    for (int j = 0; j < n; ++j) {
      m[c * n + j] = m[c * n + j] / d;
      inv[c * n + j] = inv[c * n + j] / d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      // No zero-value short-circuit: with dual scalars an entry with zero
      // value can still carry derivative information.
      S f = m[r * n + c];
      for (int j = 0; j < n; ++j) {
        m[r * n + j] = m[r * n + j] - f * m[c * n + j];
        inv[r * n + j] = inv[r * n + j] - f * inv[c * n + j];
      }
    }
  }
}

/// Cholesky factorization; returns false when the matrix is not SPD.
bool cholesky(int n, std::span<const double> a, std::vector<double>& lower);

/// Inverse of an SPD matrix; throws MetricDegenerateError on failure.
std::vector<double> spd_inverse(int n, std::span<const double> a);

}  // namespace statgeom
