#include "logdiv/divergence.hpp"

#include <cmath>
#include <limits>

namespace logdiv {
namespace {

// Relative threshold deciding when the transform denominator counts as zero.
bool denominator_ok(double s, double scale) {
  return std::abs(s) > 1e-12 * std::max(1.0, std::abs(scale));
}

}  // namespace

double l_alpha_divergence(const Potential& phi, double alpha,
                          const Vector& theta, const Vector& theta_prime) {
  require(alpha > 0.0, "l_alpha_divergence: alpha must be positive");
  require_domain(phi, theta, "l_alpha_divergence");
  require_domain(phi, theta_prime, "l_alpha_divergence");
  Vector g = phi.gradient(theta_prime);
  double u = 1.0 + alpha * g.dot(theta - theta_prime);
  if (!(u > 0.0))
    throw DomainError("l_alpha_divergence: point pair outside the divergence domain "
                      "(log argument <= 0)");
  return std::log(u) / alpha - (phi.value(theta) - phi.value(theta_prime));
}

double bregman_divergence(const Potential& phi, const Vector& theta,
                          const Vector& theta_prime) {
  require_domain(phi, theta, "bregman_divergence");
  require_domain(phi, theta_prime, "bregman_divergence");
  Vector g = phi.gradient(theta_prime);
  return g.dot(theta - theta_prime) - (phi.value(theta) - phi.value(theta_prime));
}

Vector legendre_forward(const Potential& phi, double alpha, const Vector& theta) {
  require(alpha > 0.0, "legendre_forward: alpha must be positive");
  require_domain(phi, theta, "legendre_forward");
  Vector g = phi.gradient(theta);
  double gt = g.dot(theta);
  double s = 1.0 - alpha * gt;
  if (!denominator_ok(s, alpha * gt))
    throw SingularError("legendre_forward: transform denominator vanishes");
  return g / s;
}

Matrix transform_jacobian(const Potential& phi, double alpha, const Vector& theta) {
  require(alpha > 0.0, "transform_jacobian: alpha must be positive");
  require_domain(phi, theta, "transform_jacobian");
  Vector g = phi.gradient(theta);
  Matrix H = phi.hessian(theta);
  double gt = g.dot(theta);
  double s = 1.0 - alpha * gt;
  if (!denominator_ok(s, alpha * gt))
    throw SingularError("transform_jacobian: transform denominator vanishes");
  // d/dtheta of g/s with ds/dtheta = -alpha (H theta + g).
  return H / s + (alpha / (s * s)) * g * (H * theta + g).transpose();
}

Vector legendre_inverse(const Potential& phi, double alpha, const Vector& eta,
                        const Vector* initial_guess) {
  require(alpha > 0.0, "legendre_inverse: alpha must be positive");
  require(eta.size() == phi.dim(), "legendre_inverse: dimension mismatch");

  Vector theta;
  if (phi.closed_form_inverse(alpha, eta, theta)) return theta;

  double tol = 1e-10 * (1.0 + eta.norm());

  // Initial guess: caller, then componentwise reciprocal, then ones.
  Vector x;
  if (initial_guess && initial_guess->size() == eta.size() &&
      phi.in_domain(*initial_guess)) {
    x = *initial_guess;
  } else {
    bool invertible = true;
    for (Eigen::Index i = 0; i < eta.size(); ++i) {
      if (std::abs(eta[i]) < 1e-300) {
        invertible = false;
        break;
      }
    }
    if (invertible) x = eta.cwiseInverse();
    if (!invertible || !phi.in_domain(x)) x = Vector::Ones(eta.size());
    if (!phi.in_domain(x))
      throw DomainError("legendre_inverse: no feasible initial guess");
  }

  Vector r = legendre_forward(phi, alpha, x) - eta;
  double rnorm = r.norm();
  for (int iter = 0; iter < 100; ++iter) {
    if (rnorm <= tol) return x;
    Matrix J = transform_jacobian(phi, alpha, x);
    Vector step = J.fullPivLu().solve(r);
    double lambda = 1.0;
    bool accepted = false;
    while (lambda > 1e-12) {
      Vector xn = x - lambda * step;
      if (phi.in_domain(xn)) {
        try {
          Vector rn = legendre_forward(phi, alpha, xn) - eta;
          if (rn.norm() < rnorm) {
            x = xn;
            r = rn;
            rnorm = rn.norm();
            accepted = true;
            break;
          }
        } catch (const Error&) {
          // Denominator crossed zero along the step; halve further.
        }
      }
      lambda *= 0.5;
    }
    if (!accepted)
      throw ConvergenceError(
          "legendre_inverse: line search stalled, residual " + std::to_string(rnorm) +
          " (eta possibly outside the transform range)");
  }
  if (rnorm <= tol) return x;
  throw ConvergenceError("legendre_inverse: no convergence in 100 iterations, residual " +
                         std::to_string(rnorm));
}

double alpha_conjugate_value(const Potential& phi, double alpha, const Vector& y) {
  Vector theta = legendre_inverse(phi, alpha, y);
  double u = 1.0 + alpha * theta.dot(y);
  if (!(u > 0.0))
    throw DomainError("alpha_conjugate_value: 1 + alpha theta.y must be positive");
  return std::log(u) / alpha - phi.value(theta);
}

double self_dual_check(const Potential& phi, const Potential& psi, double alpha,
                       const Vector& theta_P, const Vector& theta_Q) {
  Vector eta_P = legendre_forward(phi, alpha, theta_P);
  Vector eta_Q = legendre_forward(phi, alpha, theta_Q);
  double lhs = l_alpha_divergence(phi, alpha, theta_P, theta_Q);
  double rhs = l_alpha_divergence(psi, alpha, eta_Q, eta_P);
  return std::abs(lhs - rhs);
}

Coords complete_point(const Potential& phi, double alpha, const Point& P) {
  Coords c;
  if (P.frame == Frame::primal) {
    c.theta = P.coords;
    c.eta = legendre_forward(phi, alpha, P.coords);
  } else {
    c.eta = P.coords;
    c.theta = legendre_inverse(phi, alpha, P.coords);
  }
  return c;
}

ConjugatePotential::ConjugatePotential(std::shared_ptr<const Potential> phi,
                                       double alpha)
    : phi_(std::move(phi)), alpha_(alpha) {
  require(static_cast<bool>(phi_), "ConjugatePotential: null model");
  require(alpha_ > 0.0, "ConjugatePotential: alpha must be positive");
}

int ConjugatePotential::dim() const { return phi_->dim(); }

double ConjugatePotential::value(const Vector& y) const {
  return alpha_conjugate_value(*phi_, alpha_, y);
}

bool ConjugatePotential::in_domain(const Vector& y) const {
  if (y.size() != phi_->dim()) return false;
  // The conjugate's domain is the range of the transform; membership is
  // decided by whether the inversion succeeds.
  try {
    legendre_inverse(*phi_, alpha_, y);
    return true;
  } catch (const Error&) {
    return false;
  }
}

Vector ConjugatePotential::gradient(const Vector& y) const {
  Vector theta = legendre_inverse(*phi_, alpha_, y);
  double w = 1.0 + alpha_ * theta.dot(y);
  return theta / w;
}

Matrix ConjugatePotential::hessian(const Vector& y) const {
  Vector theta = legendre_inverse(*phi_, alpha_, y);
  double w = 1.0 + alpha_ * theta.dot(y);
  // K = d(theta)/d(y), inverse of the forward Jacobian at theta.
  Matrix K = transform_jacobian(*phi_, alpha_, theta).fullPivLu().inverse();
  Matrix M = K / w - theta * (alpha_ * (K.transpose() * y + theta)).transpose() / (w * w);
  return 0.5 * (M + M.transpose());
}

bool ConjugatePotential::closed_form_inverse(double alpha, const Vector& target,
                                             Vector& out) const {
  require(std::abs(alpha - alpha_) <= 1e-15 * std::max(1.0, std::abs(alpha_)),
          "ConjugatePotential: alpha differs from the conjugating alpha");
  // The inverse of this model's transform is the wrapped model's forward
  // transform evaluated at the target point.
  out = legendre_forward(*phi_, alpha_, target);
  return true;
}

}  // namespace logdiv
