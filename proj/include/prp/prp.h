/* Planar 3-PRP parallel robot kinematics.
 *
 * The mechanism: three legs connect a triangular base to a triangular
 * moving platform, each leg an actuated slide along a base rail, a passive
 * revolute joint, and a passive slide along a platform rail. The platform
 * moves in the plane with pose (x, y, phi).
 *
 * All functions are thread-compatible: distinct handles may be used from
 * distinct threads, shared handles are read-only after creation. Error
 * details for the calling thread are kept in prp_last_error().
 *
 * Units are meters, radians, seconds throughout. Legs are ordered a, b, c
 * everywhere; leg a's rail starts at the bottom vertex of the base
 * triangle, b and c follow counterclockwise.
 */

#ifndef PRP_H
#define PRP_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum prp_status {
  PRP_OK = 0,
  PRP_INVALID_ARG = 1,
  PRP_SINGULAR_POSE = 2,     /* pose on the sin(phi - pi/3) = 0 surface */
  PRP_NO_CONVERGENCE = 3,    /* forward solver stalled */
  PRP_SINGULAR_JACOBIAN = 4, /* linear system inside a solver lost rank */
  PRP_OUT_OF_RANGE = 5,      /* time or index outside the valid range */
  PRP_PARSE = 6,             /* malformed geometry file */
  PRP_IO = 7                 /* unreadable file */
} prp_status;

/* Short identifier of a status, e.g. "singular_pose". */
const char* prp_status_name(prp_status status);

/* Human-readable detail of the calling thread's most recent failure.
 * Empty string if the last call succeeded. */
const char* prp_last_error(void);
prp_status prp_last_status(void);

const char* prp_version(void);

/* ------------------------------------------------------------------ */
/* Robot handle                                                        */

typedef struct prp_robot prp_robot;

/* The reference geometry: base circumradius 0.3 m, rails along the base
 * triangle edges. Never fails. */
prp_robot* prp_robot_create_default(void);

/* Same vertex layout with caller-chosen circumradius and rail angles
 * (alpha[3], radians). NULL on invalid arguments. */
prp_robot* prp_robot_create(double l0, const double alpha[3]);

/* Geometry from a "key = value" description file; see the project README
 * for the accepted keys. NULL on parse or I/O failure, details in
 * prp_last_error(). */
prp_robot* prp_robot_load(const char* path);

void prp_robot_destroy(prp_robot* robot);

double prp_robot_l0(const prp_robot* robot);
void prp_robot_alpha(const prp_robot* robot, double alpha[3]);
/* Base-frame rail origin of leg 0, 1, 2 (a, b, c): writes {x, y}. */
void prp_robot_anchor(const prp_robot* robot, int leg, double anchor[2]);

/* ------------------------------------------------------------------ */
/* Inverse kinematics                                                  */

/* pose = {x, y, phi}. Writes the actuated slide positions lambda10 and the
 * passive slide positions lambda32, legs a, b, c. Either output pointer
 * may be NULL if not wanted. */
prp_status prp_solve_position(const prp_robot* robot, const double pose[3],
                              double lambda10[3], double lambda32[3]);

/* state = {x, y, phi, vx, vy, vphi, ax, ay, aphi}.
 * out, per leg a, b, c in turn: lambda10, v10, gamma10 (position, rate and
 * acceleration of the actuated slide), then lambda32, v32, gamma32 for the
 * passive slide. 18 doubles. The passive revolute joint tracks the
 * platform angle: its rate is vphi and its acceleration aphi. */
prp_status prp_solve_motion(const prp_robot* robot, const double state[9],
                            double out[18]);

/* The 3x3 matrix pair of j1 * lambda10_dot = j2 * {vx, vy, vphi}, row
 * major, plus determinants. Any output pointer may be NULL. det_j1
 * vanishes exactly at phi = pi/3 + k*pi, where the mechanism is singular.  */
prp_status prp_jacobians(const prp_robot* robot, const double pose[3],
                         double j1[9], double j2[9], double* det_j1,
                         double* det_j2);

/* Both determinants without failing at singular poses: det_j2 is NaN
 * there. */
prp_status prp_singularity_metrics(const prp_robot* robot,
                                   const double pose[3], double* det_j1,
                                   double* det_j2);

/* Recursion cross-check at a full motion state (layout as in
 * prp_solve_motion). Writes five worst-case disagreements between the
 * per-body outward recursion and closed-form platform kinematics:
 * {attachment velocity, attachment acceleration, angular velocity,
 *  angular acceleration, acceleration-matrix defect}. */
prp_status prp_consistency(const prp_robot* robot, const double state[9],
                           double out[5]);

/* ------------------------------------------------------------------ */
/* Forward kinematics                                                  */

/* Recovers the pose from actuated slide positions by damped Newton
 * iteration started at guess (NULL: the centered pose {0, 0, 0}).
 * tol <= 0 and max_iter <= 0 select the defaults 1e-11 and 50.
 * lambda32, iterations and residual may be NULL. */
prp_status prp_forward_kinematics(const prp_robot* robot,
                                  const double lambda10[3],
                                  const double guess[3], double tol,
                                  int max_iter, double pose[3],
                                  double lambda32[3], int* iterations,
                                  double* residual);

/* ------------------------------------------------------------------ */
/* Trajectory simulation                                               */

typedef enum prp_scenario {
  PRP_SCENARIO_ROTATION = 0, /* only phi driven */
  PRP_SCENARIO_TRANS_X = 1,  /* only x driven */
  PRP_SCENARIO_TRANS_Y = 2,  /* only y driven */
  PRP_SCENARIO_COMBINED = 3  /* all three driven */
} prp_scenario;

/* "rotation", "trans-x", "trans-y", "combined"; -1 if unknown. */
int prp_scenario_parse(const char* name);
const char* prp_scenario_name(prp_scenario scenario);

typedef struct prp_sim prp_sim;

/* Runs the rest-to-rest program q(t) = q_star * (1 - cos(pi t / duration))
 * on the selected pose components and solves the complete inverse
 * kinematics at `samples` evenly spaced times. The pose reached at
 * t = duration is twice the starred amplitudes. With verify_fk nonzero,
 * every sample is round-tripped through the forward solver.
 *
 * On PRP_OK, *out owns the trajectory and must be freed with
 * prp_sim_destroy. */
prp_status prp_simulate(const prp_robot* robot, prp_scenario scenario,
                        double x_star, double y_star, double phi_star,
                        double duration, int samples, int verify_fk,
                        prp_sim** out);

/* Columns of one trajectory row, in order:
 *   0 t, 1 x, 2 y, 3 phi, 4 vx, 5 vy, 6 vphi, 7 ax, 8 ay, 9 aphi,
 *   10-12 lambda10 a..c, 13-15 v10 a..c, 16-18 gamma10 a..c,
 *   19-21 lambda32 a..c, 22-24 v32 a..c, 25-27 gamma32 a..c,
 *   28 fk_error (NaN unless verify_fk was set). */
#define PRP_SIM_COLS 29

int prp_sim_rows(const prp_sim* sim);
prp_status prp_sim_row(const prp_sim* sim, int row,
                       double out[PRP_SIM_COLS]);
void prp_sim_destroy(prp_sim* sim);

/* ------------------------------------------------------------------ */
/* Singularity scan                                                    */

typedef struct prp_scan prp_scan;

/* Sweeps phi over [phi_min, phi_max] in `steps` evenly spaced samples at
 * fixed (x, y), recording both determinants and refining every sign change
 * by bisection. Zero crossings of det_j2 are separated from its poles (the
 * blow-up where det_j1 vanishes). *out must be freed with
 * prp_scan_destroy. */
prp_status prp_singularity_scan(const prp_robot* robot, double x, double y,
                                double phi_min, double phi_max, int steps,
                                prp_scan** out);

int prp_scan_samples(const prp_scan* scan);
/* det_j2 is NaN at samples whose pose is singular. */
prp_status prp_scan_sample(const prp_scan* scan, int index, double* phi,
                           double* det_j1, double* det_j2);

typedef enum prp_scan_list {
  PRP_SCAN_J1_ROOTS = 0,
  PRP_SCAN_J2_ROOTS = 1,
  PRP_SCAN_J2_POLES = 2
} prp_scan_list;

int prp_scan_count(const prp_scan* scan, prp_scan_list list);
double prp_scan_value(const prp_scan* scan, prp_scan_list list, int index);
void prp_scan_destroy(prp_scan* scan);

#ifdef __cplusplus
}
#endif

#endif /* PRP_H */
