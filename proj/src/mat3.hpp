#pragma once

#include <array>
#include <cmath>

namespace prp {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Dense 3x3 matrix, row-major storage.
struct Mat3 {
  std::array<double, 9> m{};

  double operator()(int r, int c) const { return m[3 * r + c]; }
  double& operator()(int r, int c) { return m[3 * r + c]; }

  static Mat3 identity();
  static Mat3 zero();
};

/// Rotation about z used throughout this library:
///
///   rot_z(a) = [  cos a   sin a   0 ]
///              [ -sin a   cos a   0 ]
///              [    0       0     1 ]
///
/// This is the transform that takes base-frame components of a vector to the
/// components seen from a frame rotated by +a about z. Its transpose maps a
/// body-frame vector back to the base frame. Every chain transform in the
/// robot model composes matrices of this base-to-body orientation, so keep
/// the convention in mind when reading formulas: it is the transpose of the
/// "active" rotation matrix many texts use.
Mat3 rot_z(double angle);

/// rot_z from a precomputed cosine/sine pair (exact values can be supplied).
Mat3 rot_z_from(double c, double s);

/// Constant tilt that maps the out-of-plane z axis onto an in-plane axis:
/// theta1 = [0 0 -1; 0 1 0; 1 0 0]. Used where a prismatic joint slides
/// along an in-plane direction that the local frame calls z.
Mat3 theta1();

/// Cross-product matrix: skew(u) * w == cross(u, w).
Mat3 skew(const Vec3& u);

Mat3 transpose(const Mat3& a);
Mat3 operator*(const Mat3& a, const Mat3& b);
Mat3 operator+(const Mat3& a, const Mat3& b);
Mat3 operator-(const Mat3& a, const Mat3& b);
Mat3 operator*(double s, const Mat3& a);
Vec3 operator*(const Mat3& a, const Vec3& v);

Vec3 operator+(const Vec3& a, const Vec3& b);
Vec3 operator-(const Vec3& a, const Vec3& b);
Vec3 operator*(double s, const Vec3& v);
Vec3 operator-(const Vec3& v);
double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
double norm(const Vec3& v);

/// Largest absolute entry; handy residual metric.
double max_abs(const Mat3& a);
double max_abs(const Vec3& v);

double det2(double a11, double a12, double a21, double a22);
double det3(const Mat3& a);

/// Determinant magnitude below which the linear solvers refuse to divide.
inline constexpr double kSolveTol = 1e-12;

/// Solve [a11 a12; a21 a22] * x = b by Cramer's rule.
/// Throws SingularSystem when |det| <= tol.
std::array<double, 2> solve2(double a11, double a12, double a21, double a22,
                             double b1, double b2, double tol = kSolveTol);

/// Solve a * x = b. Throws SingularSystem when |det a| <= tol.
Vec3 solve3(const Mat3& a, const Vec3& b, double tol = kSolveTol);

}  // namespace prp
