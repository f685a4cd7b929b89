#pragma once

#include <memory>

#include "logdiv/potential.hpp"
#include "logdiv/types.hpp"

namespace logdiv {

// Both coordinate representations of one manifold point.
struct Coords {
  Vector theta;
  Vector eta;
};

// L[theta : theta'] = (1/alpha) log(1 + alpha Dphi(theta').(theta - theta'))
//                     - (phi(theta) - phi(theta')).
// Throws DomainError when either point leaves the domain or the log
// argument is not positive.
double l_alpha_divergence(const Potential& phi, double alpha,
                          const Vector& theta, const Vector& theta_prime);

// Bregman divergence of the concave phi; the alpha -> 0 reference.
double bregman_divergence(const Potential& phi, const Vector& theta,
                          const Vector& theta_prime);

// eta = Dphi(theta) / (1 - alpha Dphi(theta).theta).  The denominator is
// only required to be nonvanishing; a near-zero value raises SingularError.
Vector legendre_forward(const Potential& phi, double alpha, const Vector& theta);

// Jacobian d(eta)/d(theta) of legendre_forward, assembled from Dphi and
// D2phi by the quotient rule.
Matrix transform_jacobian(const Potential& phi, double alpha, const Vector& theta);

// Inverts the transform.  Uses the model's closed form when registered,
// otherwise damped Newton on the residual T(theta) - eta (backtracking
// halving, max 100 iterations, tolerance 1e-10 * (1 + |eta|)).  The initial
// guess is the caller's, else a componentwise-reciprocal heuristic, else
// the ones vector.
Vector legendre_inverse(const Potential& phi, double alpha, const Vector& eta,
                        const Vector* initial_guess = nullptr);

// psi(y) = (1/alpha) log(1 + alpha theta*.y) - phi(theta*) at the
// stationary theta* = T^{-1}(y), which attains the infimum defining the
// conjugate.
double alpha_conjugate_value(const Potential& phi, double alpha, const Vector& y);

// |L_phi[theta_P : theta_Q] - L_psi[eta_Q : eta_P]|; at most ~1e-9 for a
// genuine conjugate pair.
double self_dual_check(const Potential& phi, const Potential& psi, double alpha,
                       const Vector& theta_P, const Vector& theta_Q);

// Fills in the missing representation of P through the transform.
Coords complete_point(const Potential& phi, double alpha, const Point& P);

// The alpha-conjugate of a wrapped potential, usable wherever a Potential
// is expected.  value/gradient/hessian are exact given the inverse
// transform; the inverse of this model's own transform is the wrapped
// model's forward transform, so no nested Newton solve ever runs.
class ConjugatePotential final : public Potential {
 public:
  ConjugatePotential(std::shared_ptr<const Potential> phi, double alpha);

  int dim() const override;
  double value(const Vector& y) const override;
  bool in_domain(const Vector& y) const override;
  Vector gradient(const Vector& y) const override;
  Matrix hessian(const Vector& y) const override;
  bool has_analytic_gradient() const override { return true; }
  bool has_analytic_hessian() const override { return true; }
  bool closed_form_inverse(double alpha, const Vector& target,
                           Vector& out) const override;

 private:
  std::shared_ptr<const Potential> phi_;
  double alpha_;
};

}  // namespace logdiv
