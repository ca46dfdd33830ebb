#pragma once

#include "debeam/dual.hpp"
#include "debeam/linalg.hpp"

namespace debeam::so3 {

// Below this angle the Rodrigues factors switch to their Taylor series
// (4th order in the angle), which keeps the map smooth through zero.
inline constexpr double kSeriesAngle = 1e-6;

template <typename S>
inline Mat3<S> hat(const Vec3<S>& v) {
  Mat3<S> r;
  r(0, 1) = -v[2];
  r(0, 2) = v[1];
  r(1, 0) = v[2];
  r(1, 2) = -v[0];
  r(2, 0) = -v[1];
  r(2, 1) = v[0];
  return r;
}

// Rodrigues form R = I + sinc(|t|) t^ + (1-cos|t|)/|t|^2 (t^)^2.
template <typename S>
inline Mat3<S> exp_map(const Vec3<S>& theta) {
  S t = dot(theta, theta);  // squared angle
  S f1, f2;
  if (value_of(t) < kSeriesAngle * kSeriesAngle) {
    f1 = 1.0 - t * (1.0 / 6.0) + t * t * (1.0 / 120.0);
    f2 = 0.5 - t * (1.0 / 24.0) + t * t * (1.0 / 720.0);
  } else {
    S n = sqrt(t);
    f1 = sin(n) / n;
    S s2 = sin(0.5 * n) / (0.5 * n);
    f2 = 0.5 * s2 * s2;
  }
  Mat3<S> th = hat(theta);
  Mat3<S> r = th * th;
  for (int i = 0; i < 9; ++i) r.m[i] = f1 * th.m[i] + f2 * r.m[i];
  r(0, 0) = r(0, 0) + 1.0;
  r(1, 1) = r(1, 1) + 1.0;
  r(2, 2) = r(2, 2) + 1.0;
  return r;
}

inline double orthonormality_defect(const Mat3d& r) {
  Mat3d g = transpose(r) * r;
  g(0, 0) -= 1.0;
  g(1, 1) -= 1.0;
  g(2, 2) -= 1.0;
  return max_abs(g);
}

inline bool is_rotation(const Mat3d& r, double tol = 1e-12) {
  return orthonormality_defect(r) <= tol && std::abs(det(r) - 1.0) <= tol;
}

}  // namespace debeam::so3
