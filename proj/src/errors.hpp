#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace prp {

/// Base class for every domain error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A 2x2 or 3x3 linear solve met a determinant at or below its tolerance.
struct SingularSystem : Error {
  double det;
  explicit SingularSystem(const std::string& what, double det_value)
      : Error(what), det(det_value) {}
};

/// Platform orientation is at (or numerically indistinguishable from) a
/// type-1 singularity: sin(phi - pi/3) == 0, i.e. phi = pi/3 + k*pi.
struct SingularPose : Error {
  double phi;     ///< offending platform angle [rad]
  double margin;  ///< |sin(phi - pi/3)| at that angle
  double time;    ///< trajectory time when raised by the simulator, else NaN
  SingularPose(const std::string& what, double phi_value, double margin_value)
      : Error(what), phi(phi_value), margin(margin_value),
        time(std::numeric_limits<double>::quiet_NaN()) {}
};

/// Iterative forward kinematics failed to reach its tolerance.
struct NoConvergence : Error {
  int iterations;
  double residual;
  NoConvergence(const std::string& what, int iters, double res)
      : Error(what), iterations(iters), residual(res) {}
};

/// The Newton matrix of the forward solver lost rank.
struct SingularJacobian : Error {
  double det;
  SingularJacobian(const std::string& what, double det_value)
      : Error(what), det(det_value) {}
};

/// Time or index outside the valid range of a query.
struct OutOfRange : Error {
  using Error::Error;
};

/// Malformed geometry configuration file.
struct ParseError : Error {
  int line;  ///< 1-based line number, 0 when not line-specific
  ParseError(const std::string& what, int line_number)
      : Error(what), line(line_number) {}
};

/// File could not be opened, read, or written.
struct IoError : Error {
  using Error::Error;
};

}  // namespace prp
