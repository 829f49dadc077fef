#pragma once

#include <array>
#include <vector>

#include "ik.hpp"
#include "model.hpp"

namespace prp {

struct FkOptions {
  double tol = 1e-11;  ///< accepted max-norm of the closure residual
  int max_iter = 50;
};

struct FkResult {
  PlatformPose pose;
  std::array<double, 3> lambda32;  ///< passive slides, recovered as well
  int iterations;
  double residual;  ///< final max-norm closure residual
  std::vector<double> residual_history;  ///< max-norm before each step + final
};

/// Jacobian of closure_residual with respect to the forward-kinematics
/// unknowns (x, y, phi, lambda32_a, lambda32_b, lambda32_c), rows in the
/// residual's own order. Exposed so the Newton matrix can be checked
/// against finite differences.
std::array<std::array<double, 6>, 6> residual_jacobian(
    const RobotGeometry& geom, const PlatformPose& pose,
    const std::array<double, 3>& lambda32);

/// Forward kinematics: recovers the platform pose from the three actuated
/// slide positions by damped Newton iteration on the loop closure, starting
/// from `guess`. Each step eliminates the passive slides exactly, leaving a
/// 3x3 solve whose matrix is the negated inverse-kinematics matrix j2, then
/// back-substitutes them.
///
/// Throws SingularJacobian if that matrix loses rank, NoConvergence if the
/// residual neither meets options.tol within options.max_iter steps nor
/// improves under step halving.
FkResult forward_kinematics(const RobotGeometry& geom,
                            const std::array<double, 3>& lambda10,
                            const PlatformPose& guess = {},
                            const FkOptions& options = {});

}  // namespace prp
