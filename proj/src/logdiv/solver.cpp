#include "logdiv/solver.hpp"

#include <cmath>
#include <limits>
#include <optional>

namespace logdiv {
namespace {

std::optional<double> safe_eval(const std::function<double(const Vector&)>& f,
                                const std::function<bool(const Vector&)>& feasible,
                                const Vector& x) {
  if (!feasible(x)) return std::nullopt;
  try {
    double v = f(x);
    if (!std::isfinite(v)) return std::nullopt;
    return v;
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

SolveResult minimize(const std::function<double(const Vector&)>& f,
                     const std::function<Vector(const Vector&)>& grad,
                     const std::function<bool(const Vector&)>& feasible,
                     const Vector& x0, const SolveOptions& opts) {
  const Eigen::Index n = x0.size();
  SolveResult res;
  res.x = x0;
  auto v0 = safe_eval(f, feasible, x0);
  require(v0.has_value(), "minimize: infeasible starting point");
  res.value = *v0;

  Matrix H = Matrix::Identity(n, n);  // inverse Hessian approximation
  Vector g = grad(res.x);
  bool blocked_by_domain = false;
  int stalled = 0;

  for (int iter = 0; iter < opts.max_iters; ++iter) {
    res.iterations = iter;
    res.grad_norm = g.norm();
    if (res.grad_norm <= opts.grad_tol) {
      res.converged = true;
      return res;
    }

    Vector p = -(H * g);
    double slope = g.dot(p);
    if (!(slope < 0.0)) {
      H.setIdentity();
      p = -g;
      slope = -g.squaredNorm();
    }

    double lambda = 1.0;
    bool accepted = false;
    blocked_by_domain = false;
    Vector xn;
    double vn = 0.0;
    for (int bt = 0; bt < opts.max_backtracks; ++bt) {
      xn = res.x + lambda * p;
      auto v = safe_eval(f, feasible, xn);
      if (!v.has_value()) {
        blocked_by_domain = true;
      } else if (*v <= res.value + opts.armijo_c * lambda * slope) {
        vn = *v;
        accepted = true;
        break;
      } else {
        blocked_by_domain = false;
      }
      lambda *= 0.5;
    }
    if (!accepted) {
      res.boundary = blocked_by_domain;
      return res;
    }

    Vector gn = grad(xn);
    Vector s = xn - res.x;
    Vector y = gn - g;

    // Near the floating-point floor the Armijo test starts accepting pure
    // rounding noise; once both the step and the decrease sit at that
    // level repeatedly, further iterations cannot improve the iterate.
    bool noise_step = s.cwiseAbs().maxCoeff() <=
                          1e-12 * (1.0 + res.x.cwiseAbs().maxCoeff()) &&
                      res.value - vn <= 1e-14 * (1.0 + std::fabs(res.value));
    stalled = noise_step ? stalled + 1 : 0;

    double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      // Standard BFGS update of the inverse approximation.
      Vector Hy = H * y;
      double yHy = y.dot(Hy);
      H += ((sy + yHy) / (sy * sy)) * (s * s.transpose()) -
           (Hy * s.transpose() + s * Hy.transpose()) / sy;
    } else {
      H.setIdentity();
    }
    res.x = xn;
    res.value = vn;
    g = gn;
    if (stalled >= 5) break;
  }
  res.grad_norm = g.norm();
  res.converged = res.grad_norm <= opts.grad_tol;
  return res;
}

}  // namespace logdiv
