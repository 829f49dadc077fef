#include "mat3.hpp"

#include <algorithm>

#include "errors.hpp"

namespace prp {

Mat3 Mat3::identity() {
  Mat3 r;
  r.m = {1, 0, 0, 0, 1, 0, 0, 0, 1};
  return r;
}

Mat3 Mat3::zero() { return Mat3{}; }

Mat3 rot_z(double angle) { return rot_z_from(std::cos(angle), std::sin(angle)); }

Mat3 rot_z_from(double c, double s) {
  Mat3 r;
  r.m = {c, s, 0, -s, c, 0, 0, 0, 1};
  return r;
}

Mat3 theta1() {
  Mat3 r;
  r.m = {0, 0, -1, 0, 1, 0, 1, 0, 0};
  return r;
}

Mat3 skew(const Vec3& u) {
  Mat3 r;
  r.m = {0, -u.z, u.y, u.z, 0, -u.x, -u.y, u.x, 0};
  return r;
}

Mat3 transpose(const Mat3& a) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = a(j, i);
  return r;
}

Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
  return r;
}

Mat3 operator+(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 9; ++i) r.m[i] = a.m[i] + b.m[i];
  return r;
}

Mat3 operator-(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 9; ++i) r.m[i] = a.m[i] - b.m[i];
  return r;
}

Mat3 operator*(double s, const Mat3& a) {
  Mat3 r;
  for (int i = 0; i < 9; ++i) r.m[i] = s * a.m[i];
  return r;
}

Vec3 operator*(const Mat3& a, const Vec3& v) {
  return {a(0, 0) * v.x + a(0, 1) * v.y + a(0, 2) * v.z,
          a(1, 0) * v.x + a(1, 1) * v.y + a(1, 2) * v.z,
          a(2, 0) * v.x + a(2, 1) * v.y + a(2, 2) * v.z};
}

Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
Vec3 operator-(const Vec3& v) { return {-v.x, -v.y, -v.z}; }

double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

double max_abs(const Mat3& a) {
  double r = 0.0;
  for (double e : a.m) r = std::max(r, std::abs(e));
  return r;
}

double max_abs(const Vec3& v) {
  return std::max({std::abs(v.x), std::abs(v.y), std::abs(v.z)});
}

double det2(double a11, double a12, double a21, double a22) {
  return a11 * a22 - a12 * a21;
}

double det3(const Mat3& a) {
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
         a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

std::array<double, 2> solve2(double a11, double a12, double a21, double a22,
                             double b1, double b2, double tol) {
  const double det = det2(a11, a12, a21, a22);
  if (std::abs(det) <= tol)
    throw SingularSystem("2x2 system is singular within tolerance", det);
  return {(b1 * a22 - b2 * a12) / det, (a11 * b2 - a21 * b1) / det};
}

Vec3 solve3(const Mat3& a, const Vec3& b, double tol) {
  const double det = det3(a);
  if (std::abs(det) <= tol)
    throw SingularSystem("3x3 system is singular within tolerance", det);
  // Cramer's rule is perfectly adequate at this size.
  Mat3 c;
  auto col_swapped = [&](int col) {
    c = a;
    c(0, col) = b.x;
    c(1, col) = b.y;
    c(2, col) = b.z;
    return det3(c);
  };
  return {col_swapped(0) / det, col_swapped(1) / det, col_swapped(2) / det};
}

}  // namespace prp
