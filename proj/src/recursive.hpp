#pragma once

#include <array>

#include "ik.hpp"
#include "model.hpp"

namespace prp {

/// Motion of one moving body of a leg, resolved in that body's own frame.
/// acc_matrix is the second-order operator omega~ * omega~ + eps~ that maps
/// a body-fixed position offset to its acceleration contribution; it is
/// propagated alongside the accelerations rather than recomputed, which is
/// what keeps the outward recursion linear in the number of bodies.
struct BodyKinematics {
  Mat3 rotation;    ///< base-to-body rotation q_k0
  Vec3 omega;       ///< angular velocity
  Vec3 v;           ///< linear velocity of the frame origin
  Vec3 eps;         ///< angular acceleration
  Vec3 gamma;       ///< linear acceleration of the frame origin
  Mat3 acc_matrix;  ///< omega~ * omega~ + eps~
};

/// A leg's three moving bodies with velocities and accelerations propagated
/// outward from the fixed base: body[0] is the actuated slider, body[1] the
/// part that turns about the revolute joint, body[2] the platform-side
/// slide whose frame origin is the platform attachment point.
struct LegKinematicsChain {
  LegChain chain;
  LegRates rates;  ///< joint rates the velocities were propagated from
  std::array<BodyKinematics, 3> body;

  /// Base-frame views q_k0^T * (...) of the body-frame quantities.
  Vec3 omega_base(int k) const;
  Vec3 v_base(int k) const;
  Vec3 eps_base(int k) const;
  Vec3 gamma_base(int k) const;
};

/// Fills rotations, omega and v by the outward velocity recursion; the
/// acceleration fields are zeroed.
LegKinematicsChain propagate_velocities(const LegChain& chain,
                                        const LegRates& rates);

/// Adds eps, gamma and acc_matrix by the outward acceleration recursion.
/// `kin` must come from propagate_velocities on the same configuration.
void propagate_accelerations(LegKinematicsChain& kin, const LegAccels& accels);

/// Solves the full inverse kinematics at `state` and propagates one leg.
LegKinematicsChain leg_kinematics(const RobotGeometry& geom,
                                  const PlatformState& state, LegId leg);

/// Cross-checks of the recursion against closed-form rigid-body kinematics
/// of the platform, maximized over the three legs at one state:
///
///   velocity_error      attachment-point velocity, chain vs platform formula
///   acceleration_error  same for acceleration
///   omega_error         outermost body's angular velocity vs (0, 0, vphi)
///   epsilon_error       same for angular acceleration vs (0, 0, aphi)
///   acc_matrix_error    worst defect of acc_matrix == omega~*omega~ + eps~
///
/// All comparisons are made in the base frame.
struct ConsistencyReport {
  double velocity_error;
  double acceleration_error;
  double omega_error;
  double epsilon_error;
  double acc_matrix_error;
};

ConsistencyReport leg_consistency_report(const RobotGeometry& geom,
                                         const PlatformState& state);

}  // namespace prp
