#pragma once

#include <algorithm>
#include <array>
#include <cmath>

// Small fixed-size vector/matrix types used by the element kernels.
// They are templated on the scalar so the same kernels run on plain
// doubles and on forward-mode dual numbers.

namespace debeam {

template <typename T>
struct Vec3 {
  std::array<T, 3> c{};

  Vec3() = default;
  Vec3(T a, T b, T d) : c{a, b, d} {}

  T& operator[](int i) { return c[i]; }
  const T& operator[](int i) const { return c[i]; }
};

template <typename T>
struct Mat3 {
  // row-major
  std::array<T, 9> m{};

  T& operator()(int i, int j) { return m[3 * i + j]; }
  const T& operator()(int i, int j) const { return m[3 * i + j]; }

  static Mat3 identity() {
    Mat3 r;
    r(0, 0) = 1.0;
    r(1, 1) = 1.0;
    r(2, 2) = 1.0;
    return r;
  }
};

template <typename A, typename B>
using mul_t = decltype(A{} * B{});

template <typename A, typename B>
inline Vec3<mul_t<A, B>> operator+(const Vec3<A>& a, const Vec3<B>& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

template <typename A, typename B>
inline Vec3<mul_t<A, B>> operator-(const Vec3<A>& a, const Vec3<B>& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

template <typename A>
inline Vec3<A> operator-(const Vec3<A>& a) {
  return {-a[0], -a[1], -a[2]};
}

template <typename A, typename B>
inline Vec3<mul_t<A, B>> operator*(const A& s, const Vec3<B>& v) {
  return {s * v[0], s * v[1], s * v[2]};
}

template <typename A, typename B>
inline Vec3<mul_t<A, B>> operator*(const Vec3<A>& v, const B& s) {
  return s * v;
}

template <typename A, typename B>
inline mul_t<A, B> dot(const Vec3<A>& a, const Vec3<B>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <typename A, typename B>
inline Vec3<mul_t<A, B>> cross(const Vec3<A>& a, const Vec3<B>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

template <typename A, typename B>
inline Mat3<mul_t<A, B>> outer(const Vec3<A>& a, const Vec3<B>& b) {
  Mat3<mul_t<A, B>> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = a[i] * b[j];
  return r;
}

template <typename A, typename B>
inline Mat3<mul_t<A, B>> operator+(const Mat3<A>& a, const Mat3<B>& b) {
  Mat3<mul_t<A, B>> r;
  for (int i = 0; i < 9; ++i) r.m[i] = a.m[i] + b.m[i];
  return r;
}

template <typename A, typename B>
inline Mat3<mul_t<A, B>> operator-(const Mat3<A>& a, const Mat3<B>& b) {
  Mat3<mul_t<A, B>> r;
  for (int i = 0; i < 9; ++i) r.m[i] = a.m[i] - b.m[i];
  return r;
}

template <typename A, typename B>
inline Mat3<mul_t<A, B>> operator*(const A& s, const Mat3<B>& a) {
  Mat3<mul_t<A, B>> r;
  for (int i = 0; i < 9; ++i) r.m[i] = s * a.m[i];
  return r;
}

template <typename A, typename B>
inline Mat3<mul_t<A, B>> operator*(const Mat3<A>& a, const Mat3<B>& b) {
  Mat3<mul_t<A, B>> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
  return r;
}

template <typename A, typename B>
inline Vec3<mul_t<A, B>> operator*(const Mat3<A>& a, const Vec3<B>& v) {
  return {a(0, 0) * v[0] + a(0, 1) * v[1] + a(0, 2) * v[2],
          a(1, 0) * v[0] + a(1, 1) * v[1] + a(1, 2) * v[2],
          a(2, 0) * v[0] + a(2, 1) * v[1] + a(2, 2) * v[2]};
}

template <typename T>
inline Mat3<T> transpose(const Mat3<T>& a) {
  Mat3<T> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = a(j, i);
  return r;
}

template <typename T>
inline T trace(const Mat3<T>& a) {
  return a(0, 0) + a(1, 1) + a(2, 2);
}

template <typename T>
inline T det(const Mat3<T>& a) {
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
         a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

template <typename T>
inline Mat3<T> inverse(const Mat3<T>& a) {
  Mat3<T> adj;
  adj(0, 0) = a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
  adj(0, 1) = a(0, 2) * a(2, 1) - a(0, 1) * a(2, 2);
  adj(0, 2) = a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1);
  adj(1, 0) = a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2);
  adj(1, 1) = a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0);
  adj(1, 2) = a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2);
  adj(2, 0) = a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0);
  adj(2, 1) = a(0, 1) * a(2, 0) - a(0, 0) * a(2, 1);
  adj(2, 2) = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  T d = det(a);
  Mat3<T> r;
  for (int i = 0; i < 9; ++i) r.m[i] = adj.m[i] / d;
  return r;
}

// double contraction A : B
template <typename A, typename B>
inline mul_t<A, B> ddot(const Mat3<A>& a, const Mat3<B>& b) {
  mul_t<A, B> s = a.m[0] * b.m[0];
  for (int i = 1; i < 9; ++i) s = s + a.m[i] * b.m[i];
  return s;
}

using Vec3d = Vec3<double>;
using Mat3d = Mat3<double>;

inline double max_abs(const Mat3d& a) {
  double m = 0.0;
  for (double v : a.m) m = std::max(m, std::abs(v));
  return m;
}

inline double max_abs(const Vec3d& a) {
  return std::max({std::abs(a[0]), std::abs(a[1]), std::abs(a[2])});
}

}  // namespace debeam
