#pragma once

#include <functional>
#include <memory>

#include "logdiv/types.hpp"

namespace logdiv {

// An alpha-exponentially concave potential on an open convex domain.
// value() must be finite on the domain; gradient() and hessian() default to
// central finite differences (step eps^(1/3)*(1+|x_i|)) so a subclass only
// has to supply what it knows analytically.
//
// Implementations must be safe for concurrent read-only use.
class Potential {
 public:
  virtual ~Potential() = default;

  virtual int dim() const = 0;
  virtual double value(const Vector& theta) const = 0;
  virtual bool in_domain(const Vector& theta) const = 0;

  virtual Vector gradient(const Vector& theta) const;
  virtual Matrix hessian(const Vector& theta) const;

  virtual bool has_analytic_gradient() const { return false; }
  virtual bool has_analytic_hessian() const { return false; }

  // Closed-form inverse of the alpha-Legendre transform, when the model
  // knows one.  Returns false to request the generic Newton path.
  virtual bool closed_form_inverse(double alpha, const Vector& eta,
                                   Vector& theta_out) const {
    (void)alpha;
    (void)eta;
    (void)theta_out;
    return false;
  }
};

// Central finite differences used by the fallbacks above and by tests.
Vector fd_gradient(const std::function<double(const Vector&)>& f, const Vector& x);
Matrix fd_jacobian(const std::function<Vector(const Vector&)>& f, const Vector& x);

// phi(theta) = (1/n) * sum_i log(theta_i) on (0, inf)^d.  The weight n is
// independent of d; the simplex instance uses n = d + 1.  The transform has
// the closed form eta_i = 1 / ((n - alpha d) theta_i), its own inverse with
// the same factor, so the model registers it for every alpha < n/d.
class LogPotential final : public Potential {
 public:
  LogPotential(int dim, int weight_n);

  int dim() const override { return d_; }
  int weight() const { return n_; }
  double value(const Vector& theta) const override;
  bool in_domain(const Vector& theta) const override;
  Vector gradient(const Vector& theta) const override;
  Matrix hessian(const Vector& theta) const override;
  bool has_analytic_gradient() const override { return true; }
  bool has_analytic_hessian() const override { return true; }
  bool closed_form_inverse(double alpha, const Vector& eta,
                           Vector& theta_out) const override;

 private:
  int d_;
  int n_;
};

// Log potential plus a smooth non-separable term:
//   phi(theta) = (1/(d+1)) sum_i log(theta_i) + 0.01 log(1 + theta_1).
// 1-exponentially concave on the box (0.02, 8)^d; used as the generic
// instance with no closed-form inverse, exercising the Newton path.
class PerturbedLogPotential final : public Potential {
 public:
  explicit PerturbedLogPotential(int dim);

  static constexpr double kLo = 0.02;
  static constexpr double kHi = 8.0;

  int dim() const override { return d_; }
  double value(const Vector& theta) const override;
  bool in_domain(const Vector& theta) const override;
  Vector gradient(const Vector& theta) const override;
  Matrix hessian(const Vector& theta) const override;
  bool has_analytic_gradient() const override { return true; }
  bool has_analytic_hessian() const override { return true; }

 private:
  int d_;
};

// phi(theta) = -theta'A theta/2 + b'theta with A positive definite.
// Concave everywhere; alpha-exp-concave only where alpha |Dphi|^2 stays
// below the smallest eigenvalue of A, which the small-alpha limit tests
// respect.  Domain is all of R^d.
class QuadraticPotential final : public Potential {
 public:
  QuadraticPotential(Matrix A, Vector b);

  int dim() const override { return static_cast<int>(b_.size()); }
  double value(const Vector& theta) const override;
  bool in_domain(const Vector& theta) const override;
  Vector gradient(const Vector& theta) const override;
  Matrix hessian(const Vector& theta) const override;
  bool has_analytic_gradient() const override { return true; }
  bool has_analytic_hessian() const override { return true; }

 private:
  Matrix A_;
  Vector b_;
};

// Wraps user-supplied callables; gradient/hessian fall back to finite
// differences when not provided.  Backs the C-API custom instance.
class CustomPotential final : public Potential {
 public:
  using ValueFn = std::function<double(const Vector&)>;
  using GradFn = std::function<Vector(const Vector&)>;
  using HessFn = std::function<Matrix(const Vector&)>;
  using DomainFn = std::function<bool(const Vector&)>;

  CustomPotential(int dim, ValueFn value, DomainFn domain, GradFn grad = {},
                  HessFn hess = {});

  int dim() const override { return d_; }
  double value(const Vector& theta) const override;
  bool in_domain(const Vector& theta) const override;
  Vector gradient(const Vector& theta) const override;
  Matrix hessian(const Vector& theta) const override;
  bool has_analytic_gradient() const override { return static_cast<bool>(grad_); }
  bool has_analytic_hessian() const override { return static_cast<bool>(hess_); }

 private:
  int d_;
  ValueFn value_;
  DomainFn domain_;
  GradFn grad_;
  HessFn hess_;
};

struct ValidationReport {
  bool pass = false;
  // Largest eigenvalue of D2phi + alpha Dphi Dphi' over the samples; must be
  // strictly negative for a valid potential.
  double worst_eigenvalue = 0.0;
  int worst_eigenvalue_sample = -1;
  // Largest relative gap between the analytic gradient and central finite
  // differences; 0 when the model has no analytic gradient.
  double worst_gradient_error = 0.0;
  int worst_gradient_sample = -1;
};

// Checks strict exponential concavity and gradient consistency at each
// sample.  Throws DomainError naming the first sample outside the domain.
ValidationReport validate_potential(const Potential& model, double alpha,
                                    const std::vector<Vector>& samples);

// Throws DomainError unless theta is in the model's domain.
void require_domain(const Potential& model, const Vector& theta,
                    const char* who);

}  // namespace logdiv
