#pragma once

#include <utility>

#include "logdiv/divergence.hpp"
#include "logdiv/types.hpp"

namespace logdiv {

// The mixed-frame metric at a point: entry (i, j) of G pairs the i-th
// primal coordinate vector field with the j-th dual one.
struct MetricMatrix {
  Matrix G;
  double Pi = 0.0;  // 1 + alpha theta.eta
  Vector theta;
  Vector eta;
};

struct TangentVector {
  Vector components;
  Frame frame = Frame::primal;
};

// Affine trace between two points in the declared flat frame.
struct GeodesicSegment {
  Coords P;
  Coords Q;
  Frame kind = Frame::primal;

  // Coordinates, in the flat frame, of the point at parameter t in [0, 1].
  Vector sample(double t) const {
    const Vector& a = kind == Frame::primal ? P.theta : P.eta;
    const Vector& b = kind == Frame::primal ? Q.theta : Q.eta;
    return (1.0 - t) * a + t * b;
  }
};

// G = -I/Pi + (alpha/Pi^2) eta theta'.  The index order matters: entry
// (i, j) must pair d/dtheta_i with d/deta_j, equivalently G = g J^{-1}
// with g the pullback metric below.  With the transposed product the
// assembled G J loses symmetry and the orthogonal-complement construction
// breaks; the tests pin the order against the divergence-Hessian oracle.
// Requires Pi > 0.
MetricMatrix metric_matrix(const Potential& phi, double alpha, const Point& P);

// a' G b for a primal-frame a and dual-frame b at the metric's base point.
// Same-frame pairs must be converted first (convert_frame).
double mixed_inner_product(const MetricMatrix& Gm, const TangentVector& u,
                           const TangentVector& v);

// Pushes a tangent vector across frames with the transform Jacobian J:
// primal a -> J a, dual b -> J^{-1} b.
TangentVector convert_frame(const TangentVector& v, const Matrix& J);

// Same-frame (primal) metric g = sym(G J); symmetric positive definite for
// a valid potential.  Throws GeometryError when the symmetry defect before
// symmetrization exceeds 1e-8 relative or the result is not definite.
Matrix pullback_metric(const MetricMatrix& Gm, const Matrix& J);

// The segment P -> Q traced affinely in the flat frame of `kind`.  The
// interior is sampled to confirm the trace stays in the domain; an exit
// raises DomainError naming the parameter.
GeodesicSegment geodesic(const Potential& phi, double alpha, const Point& P,
                         const Point& Q, Frame kind);

// gap = D[Q:P] + D[R:Q] - D[R:P] and the orthogonality pairing
// (theta_R - theta_Q)' G(Q) (eta_P - eta_Q); the gap vanishes exactly when
// the pairing does.
std::pair<double, double> pythagorean_gap(const Potential& phi, double alpha,
                                          const Point& P, const Point& Q,
                                          const Point& R);

// Orthonormal basis of the nullspace of A0' G: the directions whose dual
// coordinate vectors pair to zero with every column of A0.  A0 must have
// full column rank; the result has exactly d - k columns.
Matrix dual_complement_basis(const Matrix& A0, const MetricMatrix& Gm);

}  // namespace logdiv
