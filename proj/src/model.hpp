#pragma once

#include <array>

#include "mat3.hpp"

namespace prp {

enum class LegId { A = 0, B = 1, C = 2 };

inline constexpr std::array<LegId, 3> kLegs{LegId::A, LegId::B, LegId::C};

const char* to_string(LegId leg);

/// Platform pose: centroid position (x, y) and orientation phi in the base
/// frame, all motion confined to the base plane.
struct PlatformPose {
  double x = 0.0;    ///< [m]
  double y = 0.0;    ///< [m]
  double phi = 0.0;  ///< [rad]
};

/// Fixed data of one P-R-P leg.
struct LegGeometry {
  double alpha;          ///< rail direction angle in the base frame [rad]
  double cos_alpha;      ///< cached cos(alpha)
  double sin_alpha;      ///< cached sin(alpha)
  Vec3 anchor;           ///< rail origin (base-triangle vertex), base frame
  Vec3 local_anchor;     ///< the same point expressed in the leg frame
};

/// Geometry of the whole mechanism.
///
/// The base is an equilateral triangle of circumradius l0 centered on the
/// origin; each actuated rail starts at a vertex and runs along the edge
/// toward the next vertex (counterclockwise). The moving platform is an
/// equilateral triangle of edge l0*sqrt(3); platform_anchor is the vector
/// from a leg's platform attachment point to the platform centroid,
/// expressed in that leg's outermost body frame (the same value serves all
/// three legs by symmetry).
struct RobotGeometry {
  double l0 = 0.3;  ///< base circumradius [m]
  std::array<LegGeometry, 3> legs;
  Vec3 platform_anchor;

  const LegGeometry& leg(LegId id) const { return legs[static_cast<int>(id)]; }
};

/// Geometry used by all defaults: l0 = 0.3 m, rails along the triangle
/// edges (alpha = pi/3, pi, -pi/3). At the central configuration every
/// joint coordinate of this geometry is exactly zero.
///
/// Trigonometric constants of the three legs are stored in exact symmetric
/// form so that poses related by the 120-degree symmetry map to bitwise
/// identical per-leg computations.
RobotGeometry default_geometry();

/// The default layout scaled to a caller-chosen circumradius.
/// Throws std::invalid_argument unless l0 > 0.
RobotGeometry default_geometry(double l0);

/// Same vertex layout scaled to l0, rails at caller-chosen angles.
/// Throws std::invalid_argument unless l0 > 0.
RobotGeometry make_geometry(double l0, const std::array<double, 3>& alpha);

/// Fully custom: explicit anchors and platform anchor.
RobotGeometry make_geometry(double l0, const std::array<double, 3>& alpha,
                            const std::array<Vec3, 3>& anchors,
                            const Vec3& platform_anchor);

/// One leg's chain of body frames at a given configuration.
///
/// q10, q21, q32 are the inter-body rotations; q20 and q30 their cumulative
/// products. All follow the base-to-body convention of rot_z. r10 is the
/// slider position vector in the base frame, r32 the passive-rail offset in
/// the second body frame. phi21, the revolute angle, equals the platform
/// angle phi for every leg.
struct LegChain {
  LegId leg;
  double phi21;
  double lambda10;
  double lambda32;
  Mat3 q10, q21, q32, q20, q30;
  Mat3 q30_init;  ///< q30 of the unrotated platform, for orientation checks
  Vec3 r10;       ///< base frame
  Vec3 r32;       ///< body-2 frame
};

LegChain leg_chain(const RobotGeometry& geom, LegId leg, double phi,
                   double lambda10, double lambda32);

/// Largest-entry mismatch between q30_init^T * q30 and rot_z(phi): zero (to
/// roundoff) exactly when the chain's revolute angle equals the platform
/// angle phi, which is the orientation closure condition of the mechanism.
double orientation_residual(const LegChain& chain, double phi);

}  // namespace prp
