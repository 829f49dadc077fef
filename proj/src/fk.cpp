#include "fk.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "errors.hpp"

namespace prp {

namespace {

constexpr double kPi = std::numbers::pi;

double max_norm(const std::array<double, 6>& r) {
  double m = 0.0;
  for (double v : r) m = std::max(m, std::abs(v));
  return m;
}

struct Unknowns {
  PlatformPose pose;
  std::array<double, 3> lambda32;
};

std::array<double, 6> eval(const RobotGeometry& geom,
                           const std::array<double, 3>& lambda10,
                           const Unknowns& u) {
  return closure_residual(geom, u.pose, lambda10, u.lambda32);
}

}  // namespace

std::array<std::array<double, 6>, 6> residual_jacobian(
    const RobotGeometry& geom, const PlatformPose& pose,
    const std::array<double, 3>& lambda32) {
  const double k = geom.l0 / std::sqrt(3.0);
  std::array<std::array<double, 6>, 6> jac{};
  for (int i = 0; i < 3; ++i) {
    const LegGeometry& leg = geom.legs[i];
    const double psi = pose.phi - kPi / 3 + leg.alpha;
    const double chi = pose.phi + kPi / 3 + leg.alpha;
    const double cos_psi = std::cos(psi), sin_psi = std::sin(psi);
    auto& rx = jac[2 * i];
    auto& ry = jac[2 * i + 1];
    rx[0] = -1.0;
    ry[1] = -1.0;
    rx[2] = -lambda32[i] * sin_psi - k * std::sin(chi);
    ry[2] = lambda32[i] * cos_psi + k * std::cos(chi);
    rx[3 + i] = cos_psi;
    ry[3 + i] = sin_psi;
  }
  return jac;
}

FkResult forward_kinematics(const RobotGeometry& geom,
                            const std::array<double, 3>& lambda10,
                            const PlatformPose& guess,
                            const FkOptions& options) {
  Unknowns u{guess, {0.0, 0.0, 0.0}};
  // Start the passive slides from the consistent values of the guessed pose
  // when that pose is regular; from zero otherwise.
  try {
    const IkSolution sol = solve_position(geom, guess);
    for (int i = 0; i < 3; ++i) u.lambda32[i] = sol.legs[i].lambda32;
  } catch (const SingularPose&) {
  }

  FkResult out;
  std::array<double, 6> res = eval(geom, lambda10, u);
  double err = max_norm(res);
  out.residual_history.push_back(err);

  const double k = geom.l0 / std::sqrt(3.0);
  int iter = 0;
  for (; iter < options.max_iter && err > options.tol; ++iter) {
    // Eliminate the passive slides: combining each leg's two rows with
    // weights (sin(psi), -cos(psi)) cancels delta_lambda32 and leaves a 3x3
    // system in (dx, dy, dphi) whose matrix is -j2.
    Mat3 m;
    std::array<double, 3> rho_c;
    std::array<std::array<double, 4>, 3> trig;
    for (int i = 0; i < 3; ++i) {
      const LegGeometry& leg = geom.legs[i];
      const double psi = u.pose.phi - kPi / 3 + leg.alpha;
      const double chi = u.pose.phi + kPi / 3 + leg.alpha;
      const double cp = std::cos(psi), sp = std::sin(psi);
      const double cc = std::cos(chi), sc = std::sin(chi);
      trig[i] = {cp, sp, cc, sc};
      // k * (sp * sc + cp * cc) = k * cos(chi - psi) = -k / 2
      const double beta3 = u.lambda32[i] + k * (sp * sc + cp * cc);
      m(i, 0) = -sp;
      m(i, 1) = cp;
      m(i, 2) = -beta3;
      rho_c[i] = sp * res[2 * i] - cp * res[2 * i + 1];
    }
    const Vec3 rho{rho_c[0], rho_c[1], rho_c[2]};

    const double det = det3(m);
    if (std::abs(det) <= kSolveTol) {
      std::ostringstream msg;
      msg << "newton matrix is singular (det = " << det << ")";
      throw SingularJacobian(msg.str(), det);
    }
    const Vec3 dq = solve3(m, -1.0 * rho);

    // Back-substitute each passive slide from whichever of the leg's two
    // rows has the better-conditioned pivot.
    std::array<double, 3> dl;
    for (int i = 0; i < 3; ++i) {
      const auto [cp, sp, cc, sc] = trig[i];
      const double l32 = u.lambda32[i];
      if (std::abs(cp) >= std::abs(sp))
        dl[i] = (-res[2 * i] + dq.x + (l32 * sp + k * sc) * dq.z) / cp;
      else
        dl[i] = (-res[2 * i + 1] + dq.y - (l32 * cp + k * cc) * dq.z) / sp;
    }

    // Damped update: halve the step until the residual actually drops.
    double step = 1.0;
    bool improved = false;
    Unknowns trial;
    std::array<double, 6> trial_res{};
    double trial_err = 0.0;
    for (int halving = 0; halving < 20; ++halving) {
      trial = u;
      trial.pose.x += step * dq.x;
      trial.pose.y += step * dq.y;
      trial.pose.phi += step * dq.z;
      for (int i = 0; i < 3; ++i) trial.lambda32[i] += step * dl[i];
      trial_res = eval(geom, lambda10, trial);
      trial_err = max_norm(trial_res);
      if (trial_err < err) {
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) {
      std::ostringstream msg;
      msg << "no convergence: residual stalled at " << err << " after "
          << iter + 1 << " iterations";
      throw NoConvergence(msg.str(), iter + 1, err);
    }
    u = trial;
    res = trial_res;
    err = trial_err;
    out.residual_history.push_back(err);
  }

  if (err > options.tol) {
    std::ostringstream msg;
    msg << "no convergence: residual " << err << " above tolerance "
        << options.tol << " after " << iter << " iterations";
    throw NoConvergence(msg.str(), iter, err);
  }

  out.pose = u.pose;
  out.lambda32 = u.lambda32;
  out.iterations = iter;
  out.residual = err;
  return out;
}

}  // namespace prp
