#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace logdiv {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Coordinate frame a quantity lives in: primal = theta (domain of phi),
// dual = eta (image of the transform T).
enum class Frame { primal, dual };

// A manifold point given in one declared frame.  Operations that need the
// other representation compute it through the transform.
struct Point {
  Vector coords;
  Frame frame = Frame::primal;
};

// Numeric failures surface as one of these; the C layer maps the concrete
// type to an error code.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input outside the admissible set: non-positive coordinate, log argument
// <= 0, alpha out of range.
struct DomainError : Error {
  using Error::Error;
};

// A matrix or denominator that must be invertible is numerically singular.
struct SingularError : Error {
  using Error::Error;
};

// An iterative solver ran out of iterations without meeting its tolerance.
struct ConvergenceError : Error {
  using Error::Error;
};

// A frame-tagged argument arrived in the wrong frame.
struct FrameError : Error {
  using Error::Error;
};

// Basis columns are rank deficient, or a requested dimension is out of range.
struct RankError : Error {
  using Error::Error;
};

// A geometric contract failed (degenerate metric, non-definite pullback,
// point not on the expected leaf).
struct GeometryError : Error {
  using Error::Error;
};

// A minimizing sequence escaped toward the boundary of the domain; the
// infimum is possibly not attained.
struct BoundaryError : Error {
  using Error::Error;
};

// Caller broke an API precondition (dimension mismatch, bad config value).
struct PreconditionError : Error {
  using Error::Error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

}  // namespace logdiv
