#pragma once

#include <functional>

#include "logdiv/types.hpp"

namespace logdiv {

struct SolveOptions {
  int max_iters = 500;
  double grad_tol = 1e-10;
  int max_backtracks = 60;
  double armijo_c = 1e-4;
};

struct SolveResult {
  Vector x;
  double value = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  // The line search could not move without leaving the feasible set.
  bool boundary = false;
};

// BFGS with backtracking line search.  A step is accepted only when it is
// feasible and satisfies the Armijo decrease condition, so the iterate
// value never increases.  Objective evaluations that throw Error are
// treated as infeasible points.  x0 must be feasible.
SolveResult minimize(const std::function<double(const Vector&)>& f,
                     const std::function<Vector(const Vector&)>& grad,
                     const std::function<bool(const Vector&)>& feasible,
                     const Vector& x0, const SolveOptions& opts = {});

}  // namespace logdiv
