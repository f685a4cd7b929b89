#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "logdiv/geometry.hpp"

namespace logdiv {

// {base + basis.t} in one coordinate frame.  basis has orthonormal columns
// (checked to 1e-12); base must be in the frame's domain.
struct AffineSubspace {
  Frame frame = Frame::primal;
  Vector base;
  Matrix basis;

  int dim() const { return static_cast<int>(base.size()); }
  int k() const { return static_cast<int>(basis.cols()); }
};

// Validates and assembles a subspace.  Throws PreconditionError when the
// columns are not orthonormal; use orthonormalize() first for a raw span.
AffineSubspace make_subspace(Frame frame, Vector base, Matrix basis);

// Orthonormal basis with the same span (thin QR).  Throws RankError when
// the input columns are linearly dependent.
Matrix orthonormalize(const Matrix& raw);

struct ProjectionConfig {
  double grad_tol = 1e-10;
  double orth_tol = 1e-8;
  int max_iters = 500;
  int multistarts = 3;
  std::uint64_t seed = 0;
  // With strict set, failures throw (BoundaryError / ConvergenceError);
  // otherwise the best effort comes back with converged = false.
  bool strict = true;
};

struct ProjectionResult {
  Vector theta;
  Vector eta;
  // Coordinates of the projection inside the subspace.
  Vector t;
  double divergence = 0.0;
  double orth_residual = 0.0;
  bool converged = false;
  int iterations = 0;
};

// Minimizes D[Q : P] over Q in the primal-affine E.  At the reported
// solution every basis column a satisfies |a' G(Q*) (eta_P - eta_Q*)| <=
// orth_tol; `converged` certifies both the solver and this residual.
ProjectionResult dual_project(const Potential& phi, double alpha,
                              const AffineSubspace& E, const Point& P,
                              const ProjectionConfig& config = {});

// Minimizes D[P : Q] over Q in the dual-affine M, running the same
// machinery on the conjugate side.  The first-order residual pairs the
// primal geodesic direction at Q* with M's basis through G(Q*).
ProjectionResult primal_project(const Potential& phi, const Potential& psi,
                                double alpha, const AffineSubspace& M,
                                const Point& P,
                                const ProjectionConfig& config = {});

// The unique dual-affine complement through P0: base eta_P0, basis the
// G(P0)-orthogonal complement of E's basis.  P0 must lie on E (distance of
// theta_P0 from the affine set <= 1e-10).
AffineSubspace dual_complement_at(const Potential& phi, double alpha,
                                  const AffineSubspace& E, const Point& P0);

enum class FailureKind { none, domain, boundary, convergence, other };

struct LeafAssignment {
  bool ok = false;
  FailureKind failure = FailureKind::none;
  std::string error;
  ProjectionResult projection;
  // Distance of eta_P - eta_P0 from the span of the complement basis at
  // the assigned base; small residual certifies leaf membership.
  double membership_residual = 0.0;
};

// Projects every point onto E and certifies its leaf.  Per-point failures
// are recorded, not fatal; result order matches input order.
std::vector<LeafAssignment> leaf_assign(const Potential& phi, double alpha,
                                        const AffineSubspace& E,
                                        const std::vector<Point>& points,
                                        const ProjectionConfig& config = {});

}  // namespace logdiv
