#include "recursive.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace prp {

namespace {

constexpr Vec3 kU3{0.0, 0.0, 1.0};

struct JointMotion {
  double omega;  ///< relative rate about / along the joint axis u3
  double v;
  double eps;
  double gamma;
};

struct BodyState {
  Mat3 rot;  ///< q_k0
  Vec3 omega, v, eps, gamma;
  Mat3 w;  ///< omega~ * omega~ + eps~
};

/// One outward step. `a` is the rotation from the previous body's frame into
/// this one, `r` the offset of this frame's origin from the previous one,
/// expressed in the previous frame. Prismatic joints pass zero omega/eps,
/// revolute joints zero v/gamma.
BodyState step(const BodyState& prev, const Mat3& a, const Vec3& r,
               const JointMotion& j) {
  BodyState cur;
  cur.rot = a * prev.rot;

  const Mat3 omega_prev_t = skew(prev.omega);
  cur.omega = a * prev.omega + j.omega * kU3;
  cur.v = a * (prev.v + omega_prev_t * r) + j.v * kU3;

  // a * omega~_{k-1} * a^T is the previous angular velocity operator seen
  // from this frame; it carries the convective parts of both accelerations.
  const Mat3 conv = a * omega_prev_t * transpose(a);
  cur.eps = a * prev.eps + j.eps * kU3 + j.omega * (conv * kU3);
  cur.gamma = a * (prev.gamma + prev.w * r) + 2.0 * j.v * (conv * kU3) +
              j.gamma * kU3;

  const Mat3 u3t = skew(kU3);
  cur.w = a * prev.w * transpose(a) + (j.omega * j.omega) * (u3t * u3t) +
          j.eps * u3t + (2.0 * j.omega) * (conv * u3t);
  return cur;
}

LegKinematicsChain propagate(const LegChain& chain, const LegRates& rates,
                             const LegAccels& accels) {
  const std::array<Mat3, 3> a{chain.q10, chain.q21, chain.q32};
  const std::array<Vec3, 3> r{chain.r10, Vec3{0.0, 0.0, 0.0}, chain.r32};
  const std::array<JointMotion, 3> joints{
      JointMotion{0.0, rates.v10, 0.0, accels.gamma10},
      JointMotion{rates.omega21, 0.0, accels.epsilon21, 0.0},
      JointMotion{0.0, rates.v32, 0.0, accels.gamma32},
  };

  BodyState s{Mat3::identity(), {}, {}, {}, {}, Mat3::zero()};
  LegKinematicsChain kin;
  kin.chain = chain;
  kin.rates = rates;
  for (int k = 0; k < 3; ++k) {
    s = step(s, a[k], r[k], joints[k]);
    kin.body[k] = {s.rot, s.omega, s.v, s.eps, s.gamma, s.w};
  }
  return kin;
}

const BodyKinematics& body_at(const LegKinematicsChain& kin, int k) {
  if (k < 0 || k > 2) throw std::out_of_range("body index must be 0..2");
  return kin.body[k];
}

}  // namespace

Vec3 LegKinematicsChain::omega_base(int k) const {
  const BodyKinematics& b = body_at(*this, k);
  return transpose(b.rotation) * b.omega;
}

Vec3 LegKinematicsChain::v_base(int k) const {
  const BodyKinematics& b = body_at(*this, k);
  return transpose(b.rotation) * b.v;
}

Vec3 LegKinematicsChain::eps_base(int k) const {
  const BodyKinematics& b = body_at(*this, k);
  return transpose(b.rotation) * b.eps;
}

Vec3 LegKinematicsChain::gamma_base(int k) const {
  const BodyKinematics& b = body_at(*this, k);
  return transpose(b.rotation) * b.gamma;
}

LegKinematicsChain propagate_velocities(const LegChain& chain,
                                        const LegRates& rates) {
  LegKinematicsChain kin = propagate(chain, rates, {0.0, 0.0, 0.0});
  // With zero joint accelerations the recursion still leaves convective
  // terms in gamma; clear them so the fields read as "not yet propagated".
  for (BodyKinematics& b : kin.body) {
    b.eps = {};
    b.gamma = {};
    b.acc_matrix = Mat3::zero();
  }
  return kin;
}

void propagate_accelerations(LegKinematicsChain& kin, const LegAccels& accels) {
  kin = propagate(kin.chain, kin.rates, accels);
}

LegKinematicsChain leg_kinematics(const RobotGeometry& geom,
                                  const PlatformState& state, LegId leg) {
  const MotionSolution m = solve_motion(geom, state);
  const int i = static_cast<int>(leg);
  const LegChain chain =
      leg_chain(geom, leg, state.pose.phi, m.position.legs[i].lambda10,
                m.position.legs[i].lambda32);
  LegKinematicsChain kin = propagate_velocities(chain, m.velocity[i]);
  propagate_accelerations(kin, m.acceleration[i]);
  return kin;
}

ConsistencyReport leg_consistency_report(const RobotGeometry& geom,
                                         const PlatformState& state) {
  const MotionSolution m = solve_motion(geom, state);
  ConsistencyReport rep{0.0, 0.0, 0.0, 0.0, 0.0};

  const Vec3 v_platform{state.vx, state.vy, 0.0};
  const Vec3 a_platform{state.ax, state.ay, 0.0};
  const Vec3 omega_platform{0.0, 0.0, state.vphi};
  const Vec3 eps_platform{0.0, 0.0, state.aphi};
  const Mat3 omega_t = skew(omega_platform);
  const Mat3 eps_t = skew(eps_platform);

  for (LegId leg : kLegs) {
    const int i = static_cast<int>(leg);
    const LegChain chain =
        leg_chain(geom, leg, state.pose.phi, m.position.legs[i].lambda10,
                  m.position.legs[i].lambda32);
    LegKinematicsChain kin = propagate_velocities(chain, m.velocity[i]);
    propagate_accelerations(kin, m.acceleration[i]);

    // Vector from the attachment point to the centroid, in the base frame.
    const Vec3 c = transpose(chain.q30) * geom.platform_anchor;
    const Vec3 v_anchor = v_platform - omega_t * c;
    const Vec3 a_anchor = a_platform - eps_t * c - omega_t * (omega_t * c);

    rep.velocity_error =
        std::max(rep.velocity_error, max_abs(kin.v_base(2) - v_anchor));
    rep.acceleration_error =
        std::max(rep.acceleration_error, max_abs(kin.gamma_base(2) - a_anchor));
    rep.omega_error =
        std::max(rep.omega_error, max_abs(kin.omega_base(2) - omega_platform));
    rep.epsilon_error =
        std::max(rep.epsilon_error, max_abs(kin.eps_base(2) - eps_platform));
    for (int k = 0; k < 3; ++k) {
      const BodyKinematics& b = kin.body[k];
      const Mat3 wt = skew(b.omega);
      rep.acc_matrix_error = std::max(
          rep.acc_matrix_error, max_abs(b.acc_matrix - (wt * wt + skew(b.eps))));
    }
  }
  return rep;
}

}  // namespace prp
