#pragma once

#include <cmath>
#include <type_traits>

namespace statgeom {

/// Forward-mode dual number. Nesting (Dual<Dual<...>>) yields exact higher
/// derivatives: the value carries the function, the tangent carries one
/// directional derivative per nesting level.
template <class T>
struct Dual {
  T a{};  // value
  T b{};  // tangent

  constexpr Dual() = default;
  constexpr Dual(double v) : a(v), b() {}
  template <class U = T, class = std::enable_if_t<!std::is_same_v<U, double>>>
  constexpr Dual(const T& av) : a(av), b() {}
  constexpr Dual(const T& av, const T& bv) : a(av), b(bv) {}

  Dual& operator+=(const Dual& o) {
    a = a + o.a;
    b = b + o.b;
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    a = a - o.a;
    b = b - o.b;
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    b = a * o.b + b * o.a;
    a = a * o.a;
    return *this;
  }
};

inline double value(double x) { return x; }
template <class T>
double value(const Dual<T>& x) {
  return value(x.a);
}

template <class T>
Dual<T> operator+(const Dual<T>& x, const Dual<T>& y) {
  return {x.a + y.a, x.b + y.b};
}
template <class T>
Dual<T> operator-(const Dual<T>& x, const Dual<T>& y) {
  return {x.a - y.a, x.b - y.b};
}
template <class T>
Dual<T> operator-(const Dual<T>& x) {
  return {-x.a, -x.b};
}
template <class T>
Dual<T> operator+(const Dual<T>& x) {
  return x;
}
template <class T>
Dual<T> operator*(const Dual<T>& x, const Dual<T>& y) {
  return {x.a * y.a, x.a * y.b + x.b * y.a};
}
template <class T>
Dual<T> operator/(const Dual<T>& x, const Dual<T>& y) {
  T q = x.a / y.a;
  return {q, (x.b - q * y.b) / y.a};
}

template <class T>
Dual<T> operator+(const Dual<T>& x, double c) {
  return {x.a + T(c), x.b};
}
template <class T>
Dual<T> operator+(double c, const Dual<T>& x) {
  return {T(c) + x.a, x.b};
}
template <class T>
Dual<T> operator-(const Dual<T>& x, double c) {
  return {x.a - T(c), x.b};
}
template <class T>
Dual<T> operator-(double c, const Dual<T>& x) {
  return {T(c) - x.a, -x.b};
}
template <class T>
Dual<T> operator*(const Dual<T>& x, double c) {
  return {x.a * T(c), x.b * T(c)};
}
template <class T>
Dual<T> operator*(double c, const Dual<T>& x) {
  return {T(c) * x.a, T(c) * x.b};
}
template <class T>
Dual<T> operator/(const Dual<T>& x, double c) {
  return {x.a / T(c), x.b / T(c)};
}
template <class T>
Dual<T> operator/(double c, const Dual<T>& x) {
  return Dual<T>(c) / x;
}

template <class T>
bool operator<(const Dual<T>& x, const Dual<T>& y) {
  return value(x) < value(y);
}
template <class T>
bool operator>(const Dual<T>& x, const Dual<T>& y) {
  return value(x) > value(y);
}

using std::cos;
using std::exp;
using std::log;
using std::pow;
using std::sin;
using std::sqrt;
using std::tan;

template <class T>
Dual<T> sin(const Dual<T>& x) {
  return {sin(x.a), cos(x.a) * x.b};
}
template <class T>
Dual<T> cos(const Dual<T>& x) {
  return {cos(x.a), -sin(x.a) * x.b};
}
template <class T>
Dual<T> exp(const Dual<T>& x) {
  T e = exp(x.a);
  return {e, e * x.b};
}
template <class T>
Dual<T> log(const Dual<T>& x) {
  return {log(x.a), x.b / x.a};
}
template <class T>
Dual<T> sqrt(const Dual<T>& x) {
  T s = sqrt(x.a);
  return {s, x.b / (2.0 * s)};
}
// Integer powers only; general exponents are not needed by any provider.
template <class T>
Dual<T> powi(const Dual<T>& x, int p) {
  if (p == 0) return Dual<T>(1.0);
  if (p < 0) return 1.0 / powi(x, -p);
  Dual<T> r = x;
  for (int k = 1; k < p; ++k) r = r * x;
  return r;
}
inline double powi(double x, int p) { return std::pow(x, p); }

using Dual1 = Dual<double>;
using Dual2 = Dual<Dual1>;
using Dual3 = Dual<Dual2>;
using Dual4 = Dual<Dual3>;

/// Sets the tangent of a first-level perturbation to 1 (direction seed).
template <class T>
void seed(Dual<T>& x) {
  x.b = T(1.0);
}

}  // namespace statgeom
