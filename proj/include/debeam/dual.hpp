#pragma once

#include <array>
#include <cmath>

// Forward-mode dual numbers. Nesting Dual<Dual<double,N>,N> yields exact
// second derivatives; this is the derivative engine behind the residual,
// the tangent matrix and the deformation-gradient rate.

namespace debeam {

template <typename T, int N>
struct Dual {
  T v;
  std::array<T, N> d;

  Dual() : v(0.0), d{} {}
  Dual(double c) : v(c), d{} {}  // constants lift with zero derivative

  Dual& operator+=(const Dual& o) {
    v = v + o.v;
    for (int i = 0; i < N; ++i) d[i] = d[i] + o.d[i];
    return *this;
  }
};

inline double value_of(double x) { return x; }

template <typename T, int N>
inline double value_of(const Dual<T, N>& x) {
  return value_of(x.v);
}

template <typename T, int N>
inline Dual<T, N> operator-(const Dual<T, N>& a) {
  Dual<T, N> r;
  r.v = -a.v;
  for (int i = 0; i < N; ++i) r.d[i] = -a.d[i];
  return r;
}

template <typename T, int N>
inline Dual<T, N> operator+(const Dual<T, N>& a, const Dual<T, N>& b) {
  Dual<T, N> r;
  r.v = a.v + b.v;
  for (int i = 0; i < N; ++i) r.d[i] = a.d[i] + b.d[i];
  return r;
}

template <typename T, int N>
inline Dual<T, N> operator+(const Dual<T, N>& a, double b) {
  Dual<T, N> r = a;
  r.v = a.v + b;
  return r;
}

template <typename T, int N>
inline Dual<T, N> operator+(double a, const Dual<T, N>& b) {
  return b + a;
}

template <typename T, int N>
inline Dual<T, N> operator-(const Dual<T, N>& a, const Dual<T, N>& b) {
  Dual<T, N> r;
  r.v = a.v - b.v;
  for (int i = 0; i < N; ++i) r.d[i] = a.d[i] - b.d[i];
  return r;
}

template <typename T, int N>
inline Dual<T, N> operator-(const Dual<T, N>& a, double b) {
  Dual<T, N> r = a;
  r.v = a.v - b;
  return r;
}

template <typename T, int N>
inline Dual<T, N> operator-(double a, const Dual<T, N>& b) {
  Dual<T, N> r = -b;
  r.v = a - b.v;
  return r;
}

template <typename T, int N>
inline Dual<T, N> operator*(const Dual<T, N>& a, const Dual<T, N>& b) {
  Dual<T, N> r;
  r.v = a.v * b.v;
  for (int i = 0; i < N; ++i) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
  return r;
}

template <typename T, int N>
inline Dual<T, N> operator*(const Dual<T, N>& a, double b) {
  Dual<T, N> r;
  r.v = a.v * b;
  for (int i = 0; i < N; ++i) r.d[i] = a.d[i] * b;
  return r;
}

template <typename T, int N>
inline Dual<T, N> operator*(double a, const Dual<T, N>& b) {
  return b * a;
}

template <typename T, int N>
inline Dual<T, N> operator/(const Dual<T, N>& a, const Dual<T, N>& b) {
  Dual<T, N> r;
  r.v = a.v / b.v;
  for (int i = 0; i < N; ++i) r.d[i] = (a.d[i] - r.v * b.d[i]) / b.v;
  return r;
}

template <typename T, int N>
inline Dual<T, N> operator/(const Dual<T, N>& a, double b) {
  Dual<T, N> r;
  r.v = a.v / b;
  for (int i = 0; i < N; ++i) r.d[i] = a.d[i] / b;
  return r;
}

template <typename T, int N>
inline Dual<T, N> operator/(double a, const Dual<T, N>& b) {
  return Dual<T, N>(a) / b;
}

using std::cos;
using std::log;
using std::sin;
using std::sqrt;

template <typename T, int N>
inline Dual<T, N> sqrt(const Dual<T, N>& a) {
  Dual<T, N> r;
  r.v = sqrt(a.v);
  T half_inv = 0.5 / r.v;
  for (int i = 0; i < N; ++i) r.d[i] = a.d[i] * half_inv;
  return r;
}

template <typename T, int N>
inline Dual<T, N> sin(const Dual<T, N>& a) {
  Dual<T, N> r;
  r.v = sin(a.v);
  T c = cos(a.v);
  for (int i = 0; i < N; ++i) r.d[i] = a.d[i] * c;
  return r;
}

template <typename T, int N>
inline Dual<T, N> cos(const Dual<T, N>& a) {
  Dual<T, N> r;
  r.v = cos(a.v);
  T ms = -sin(a.v);
  for (int i = 0; i < N; ++i) r.d[i] = a.d[i] * ms;
  return r;
}

template <typename T, int N>
inline Dual<T, N> log(const Dual<T, N>& a) {
  Dual<T, N> r;
  r.v = log(a.v);
  for (int i = 0; i < N; ++i) r.d[i] = a.d[i] / a.v;
  return r;
}

}  // namespace debeam
