#pragma once

#include <array>
#include <vector>

#include "model.hpp"

namespace prp {

/// Poses with |sin(phi - pi/3)| at or below this margin are rejected as
/// singular before any division happens.
inline constexpr double kSingularTol = 1e-9;

/// Joint coordinates of one leg: actuated slide lambda10, passive slide
/// lambda32. The revolute angle is shared by all legs and lives in
/// IkSolution::phi21.
struct LegSolution {
  double lambda10;
  double lambda32;
};

struct IkSolution {
  std::array<LegSolution, 3> legs;
  double phi21;  ///< passive revolute angle, equal to the platform angle

  const LegSolution& leg(LegId id) const {
    return legs[static_cast<int>(id)];
  }
};

/// Platform pose plus its first and second time derivatives.
struct PlatformState {
  PlatformPose pose;
  double vx = 0.0, vy = 0.0, vphi = 0.0;
  double ax = 0.0, ay = 0.0, aphi = 0.0;
};

struct LegRates {
  double v10;      ///< actuated slide rate
  double v32;      ///< passive slide rate
  double omega21;  ///< revolute rate, equal to vphi
};

struct LegAccels {
  double gamma10;
  double gamma32;
  double epsilon21;  ///< revolute acceleration, equal to aphi
};

/// Inverse Jacobian pair of the velocity relation j1 * lambda_dot = j2 * q_dot
/// with lambda_dot the actuated rates and q_dot = (vx, vy, vphi).
/// j1 is diagonal with every entry sin(phi - pi/3); both matrices lose rank
/// exactly at phi = pi/3 + k*pi, where the direct and inverse singularity
/// coincide for this mechanism.
struct JacobianPair {
  Mat3 j1;
  Mat3 j2;
  double det_j1;
  double det_j2;
};

/// Loop-closure residual of a full joint-space candidate, two components per
/// leg in order (a.x, a.y, b.x, b.y, c.x, c.y). Written in the base frame, so
/// it checks solve_position through a different path than the leg-frame
/// elimination used there. Zero (to roundoff) iff the candidate closes all
/// three loops.
std::array<double, 6> closure_residual(const RobotGeometry& geom,
                                       const PlatformPose& pose,
                                       const std::array<double, 3>& lambda10,
                                       const std::array<double, 3>& lambda32);

/// Position-level inverse kinematics, exact per-leg elimination.
/// Throws SingularPose when |sin(phi - pi/3)| <= kSingularTol.
IkSolution solve_position(const RobotGeometry& geom, const PlatformPose& pose);

/// First time derivative of the joint coordinates.
std::array<LegRates, 3> solve_velocity(const RobotGeometry& geom,
                                       const PlatformState& state,
                                       const IkSolution& sol);

/// Second time derivative of the joint coordinates.
std::array<LegAccels, 3> solve_acceleration(const RobotGeometry& geom,
                                            const PlatformState& state,
                                            const IkSolution& sol,
                                            const std::array<LegRates, 3>& rates);

/// Position, velocity and acceleration solves bundled.
struct MotionSolution {
  IkSolution position;
  std::array<LegRates, 3> velocity;
  std::array<LegAccels, 3> acceleration;
};

MotionSolution solve_motion(const RobotGeometry& geom,
                            const PlatformState& state);

/// Jacobian pair at a solved configuration.
JacobianPair jacobians(const RobotGeometry& geom, const PlatformPose& pose,
                       const IkSolution& sol);

/// Determinants only. Never throws: at a singular pose det_j2 cannot be
/// evaluated (the passive slide length diverges) and is reported as NaN,
/// while det_j1 keeps its closed form sin^3(phi - pi/3).
struct SingularityMetrics {
  double det_j1;
  double det_j2;
};

SingularityMetrics singularity_metrics(const RobotGeometry& geom,
                                       const PlatformPose& pose);

/// One row of a singularity sweep over phi at fixed (x, y).
struct ScanSample {
  double phi;
  double det_j1;
  double det_j2;  ///< NaN where the pose is singular
};

/// Result of singularity_scan: the sampled determinants plus refined zero
/// crossings. Sign flips of det_j2 caused by its blow-up at det_j1 = 0 are
/// sorted into j2_poles, not j2_roots.
struct ScanResult {
  std::vector<ScanSample> samples;
  std::vector<double> j1_roots;
  std::vector<double> j2_roots;
  std::vector<double> j2_poles;
};

/// Samples both determinants at `steps` evenly spaced angles in
/// [phi_min, phi_max] and refines every sign change by bisection to an
/// interval width of 1e-12. Throws std::invalid_argument on a bad range or
/// steps < 2.
ScanResult singularity_scan(const RobotGeometry& geom, double x, double y,
                            double phi_min, double phi_max, int steps);

}  // namespace prp
