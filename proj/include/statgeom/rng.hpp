#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace statgeom {

/// Deterministic 64-bit generator (splitmix64). Uniforms are produced from
/// the top 53 bits, so identical seeds give identical streams on every
/// platform; reports and sweep CSVs depend on this.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Interior point of a box, keeping a relative margin from the faces.
  std::vector<double> point_in_box(std::span<const double> lo, std::span<const double> hi,
                                   double margin_frac = 0.05) {
    std::vector<double> p(lo.size());
    for (std::size_t i = 0; i < lo.size(); ++i) {
      double w = hi[i] - lo[i];
      p[i] = uniform(lo[i] + margin_frac * w, hi[i] - margin_frac * w);
    }
    return p;
  }

  /// Components uniform in [-1, 1].
  std::vector<double> vector_in_cube(int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& c : v) c = uniform(-1.0, 1.0);
    return v;
  }

 private:
  std::uint64_t state_;
};

}  // namespace statgeom
