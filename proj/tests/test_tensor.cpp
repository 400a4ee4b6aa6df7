#include "doctest.h"

#include <cmath>

#include "statgeom/rng.hpp"
#include "statgeom/tensor.hpp"

using namespace statgeom;

namespace {

DenseTensor random_tensor(Frame f, std::vector<Variance> var, Rng& rng) {
  DenseTensor t(f, std::move(var));
  for (auto& v : t.data()) v = rng.uniform(-1.0, 1.0);
  return t;
}

DenseTensor random_spd(Frame f, Rng& rng, double diag_boost) {
  DenseTensor m(f, {Variance::Lower, Variance::Lower});
  int n = f.extent();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      double v = rng.uniform(-0.5, 0.5);
      m.at({i, j}) = v;
      m.at({j, i}) = v;
    }
  for (int i = 0; i < n; ++i) m.at({i, i}) += diag_boost;
  return m;
}

}  // namespace

TEST_CASE("contract: trace of identity is n") {
  for (int n : {2, 3, 4, 6}) {
    Frame f{FrameKind::BaseCoord, n};
    auto id = DenseTensor::identity(f);
    auto tr = contract(id, 0, 1);
    CHECK(tr.rank() == 0);
    CHECK(tr.data()[0] == static_cast<double>(n));
  }
}

TEST_CASE("contract matches a direct diagonal sum") {
  Rng rng(42);
  Frame f{FrameKind::BaseCoord, 5};
  auto t = random_tensor(f, {Variance::Upper, Variance::Lower}, rng);
  double direct = 0.0;
  for (int i = 0; i < 5; ++i) direct += t.at({i, i});
  auto c = contract(t, 0, 1);
  CHECK(c.data()[0] == doctest::Approx(direct).epsilon(1e-15));
}

TEST_CASE("contract is linear") {
  Rng rng(7);
  Frame f{FrameKind::BaseCoord, 4};
  auto s = random_tensor(f, {Variance::Upper, Variance::Lower, Variance::Lower}, rng);
  auto t = random_tensor(f, {Variance::Upper, Variance::Lower, Variance::Lower}, rng);
  double a = 1.7, b = -0.3;
  DenseTensor combo = s;
  combo *= a;
  DenseTensor tb = t;
  tb *= b;
  combo += tb;
  auto lhs = contract(combo, 0, 1);
  auto ra = contract(s, 0, 1);
  auto rb = contract(t, 0, 1);
  ra *= a;
  rb *= b;
  ra += rb;
  CHECK(max_abs_diff(lhs, ra) < 1e-12);
}

TEST_CASE("contract rejects mismatched variance and bad slots") {
  Frame f{FrameKind::BaseCoord, 3};
  DenseTensor t(f, {Variance::Lower, Variance::Lower});
  CHECK_THROWS_AS(contract(t, 0, 1), FrameMismatchError);
  DenseTensor u(f, {Variance::Upper, Variance::Lower});
  CHECK_THROWS_AS(contract(u, 0, 0), FrameMismatchError);
}

TEST_CASE("symmetrize is idempotent, antisymmetrize kills symmetric part") {
  Rng rng(3);
  Frame f{FrameKind::BaseCoord, 4};
  auto t = random_tensor(f, {Variance::Lower, Variance::Lower, Variance::Lower}, rng);
  auto s1 = symmetrize(t, 0, 2);
  auto s2 = symmetrize(s1, 0, 2);
  CHECK(max_abs_diff(s1, s2) == 0.0);
  auto a = antisymmetrize(s1, 0, 2);
  CHECK(a.max_abs() < 1e-15);
}

TEST_CASE("raise then lower returns the original") {
  Rng rng(11);
  Frame f{FrameKind::BaseCoord, 5};
  // condition numbers stay modest with a diagonal boost
  auto g = random_spd(f, rng, 3.0);
  auto t = random_tensor(f, {Variance::Upper, Variance::Lower, Variance::Lower}, rng);
  auto up = raise_lower(t, 1, g);
  CHECK(up.variance()[1] == Variance::Upper);
  auto back = raise_lower(up, 1, g);
  CHECK(max_abs_diff(back, t) < 1e-10);
}

TEST_CASE("raise_lower with the euclidean metric is the identity") {
  Rng rng(4);
  Frame f{FrameKind::BaseCoord, 3};
  DenseTensor g(f, {Variance::Lower, Variance::Lower});
  for (int i = 0; i < 3; ++i) g.at({i, i}) = 1.0;
  auto t = random_tensor(f, {Variance::Upper, Variance::Lower}, rng);
  auto lowered = raise_lower(t, 0, g);
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(lowered.data()[i] == doctest::Approx(t.data()[i]).epsilon(1e-15));
}

TEST_CASE("raise_lower rejects non-SPD metrics") {
  Frame f{FrameKind::BaseCoord, 2};
  DenseTensor g(f, {Variance::Lower, Variance::Lower});
  g.at({0, 0}) = 1.0;
  g.at({1, 1}) = -1.0;
  DenseTensor t(f, {Variance::Upper});
  CHECK_THROWS_AS(raise_lower(t, 0, g), MetricDegenerateError);
}

TEST_CASE("frame mixing is an error") {
  DenseTensor a(Frame{FrameKind::BaseCoord, 3}, {Variance::Lower});
  DenseTensor b(Frame{FrameKind::AdaptedTM, 3}, {Variance::Lower});
  CHECK_THROWS_AS(a += b, FrameMismatchError);
}

TEST_CASE("spd_inverse handles moderately conditioned matrices") {
  Rng rng(19);
  for (int rep = 0; rep < 20; ++rep) {
    int n = 2 + static_cast<int>(rng.next_u64() % 4);
    Frame f{FrameKind::BaseCoord, n};
    auto g = random_spd(f, rng, 2.0);
    std::vector<double> gm(g.data().begin(), g.data().end());
    auto inv = spd_inverse(n, gm);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += gm[static_cast<std::size_t>(i) * n + k] * inv[static_cast<std::size_t>(k) * n + j];
        CHECK(s == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-10));
      }
  }
}

TEST_CASE("raise then lower survives condition number 1e4") {
  Rng rng(23);
  Frame f{FrameKind::BaseCoord, 3};
  DenseTensor g(f, {Variance::Lower, Variance::Lower});
  // eigenvalues spanning four orders of magnitude plus a small rotation
  double d[3] = {1e-2, 1.0, 1e2};
  double c = std::cos(0.7), s = std::sin(0.7);
  double q[3][3] = {{c, -s, 0}, {s, c, 0}, {0, 0, 1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double sum = 0.0;
      for (int k = 0; k < 3; ++k) sum += q[i][k] * d[k] * q[j][k];
      g.at({i, j}) = sum;
    }
  auto t = random_tensor(f, {Variance::Upper, Variance::Lower}, rng);
  auto back = raise_lower(raise_lower(t, 0, g), 0, g);
  CHECK(max_abs_diff(back, t) < 1e-10);
}
