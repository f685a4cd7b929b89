#include "logdiv/potential.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace logdiv {
namespace {

double fd_step(double x) {
  static const double h0 = std::cbrt(std::numeric_limits<double>::epsilon());
  return h0 * (1.0 + std::abs(x));
}

}  // namespace

Vector fd_gradient(const std::function<double(const Vector&)>& f, const Vector& x) {
  Vector g(x.size());
  Vector xp = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    double h = fd_step(x[i]);
    xp[i] = x[i] + h;
    double fp = f(xp);
    xp[i] = x[i] - h;
    double fm = f(xp);
    xp[i] = x[i];
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

Matrix fd_jacobian(const std::function<Vector(const Vector&)>& f, const Vector& x) {
  Vector xp = x;
  Matrix J;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    double h = fd_step(x[i]);
    xp[i] = x[i] + h;
    Vector fp = f(xp);
    xp[i] = x[i] - h;
    Vector fm = f(xp);
    xp[i] = x[i];
    if (J.size() == 0) J.resize(fp.size(), x.size());
    J.col(i) = (fp - fm) / (2.0 * h);
  }
  return J;
}

Vector Potential::gradient(const Vector& theta) const {
  return fd_gradient([this](const Vector& t) { return value(t); }, theta);
}

Matrix Potential::hessian(const Vector& theta) const {
  // Differencing the gradient keeps one analytic level when the subclass
  // supplies it.
  Matrix H = fd_jacobian([this](const Vector& t) { return gradient(t); }, theta);
  return 0.5 * (H + H.transpose());
}

LogPotential::LogPotential(int dim, int weight_n) : d_(dim), n_(weight_n) {
  require(dim >= 1, "LogPotential: dim must be >= 1");
  require(weight_n >= 1, "LogPotential: weight must be >= 1");
}

double LogPotential::value(const Vector& theta) const {
  double s = 0.0;
  for (Eigen::Index i = 0; i < theta.size(); ++i) s += std::log(theta[i]);
  return s / n_;
}

bool LogPotential::in_domain(const Vector& theta) const {
  if (theta.size() != d_) return false;
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    if (!(theta[i] > 0.0) || !std::isfinite(theta[i])) return false;
  }
  return true;
}

Vector LogPotential::gradient(const Vector& theta) const {
  return theta.cwiseInverse() / n_;
}

Matrix LogPotential::hessian(const Vector& theta) const {
  return (-theta.cwiseAbs2().cwiseInverse() / n_).asDiagonal();
}

bool LogPotential::closed_form_inverse(double alpha, const Vector& eta,
                                       Vector& theta_out) const {
  double factor = n_ - alpha * d_;
  if (std::fabs(factor) <= 1e-12)
    throw SingularError("LogPotential inverse: n - alpha d vanishes");
  for (Eigen::Index i = 0; i < eta.size(); ++i) {
    if (!(factor * eta[i] > 0.0))
      throw DomainError("LogPotential inverse: eta outside the transform image");
  }
  theta_out = (factor * eta).cwiseInverse();
  return true;
}

PerturbedLogPotential::PerturbedLogPotential(int dim) : d_(dim) {
  require(dim >= 1, "PerturbedLogPotential: dim must be >= 1");
}

double PerturbedLogPotential::value(const Vector& theta) const {
  double s = 0.0;
  for (Eigen::Index i = 0; i < theta.size(); ++i) s += std::log(theta[i]);
  return s / (d_ + 1) + 0.01 * std::log1p(theta[0]);
}

bool PerturbedLogPotential::in_domain(const Vector& theta) const {
  if (theta.size() != d_) return false;
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    if (!(theta[i] > kLo) || !(theta[i] < kHi)) return false;
  }
  return true;
}

Vector PerturbedLogPotential::gradient(const Vector& theta) const {
  Vector g = theta.cwiseInverse() / (d_ + 1);
  g[0] += 0.01 / (1.0 + theta[0]);
  return g;
}

Matrix PerturbedLogPotential::hessian(const Vector& theta) const {
  Vector diag = -theta.cwiseAbs2().cwiseInverse() / (d_ + 1);
  diag[0] -= 0.01 / ((1.0 + theta[0]) * (1.0 + theta[0]));
  return diag.asDiagonal();
}

QuadraticPotential::QuadraticPotential(Matrix A, Vector b)
    : A_(std::move(A)), b_(std::move(b)) {
  require(A_.rows() == A_.cols() && A_.rows() == b_.size(),
          "QuadraticPotential: A must be square and match b");
  A_ = 0.5 * (A_ + A_.transpose().eval());
}

double QuadraticPotential::value(const Vector& theta) const {
  return -0.5 * theta.dot(A_ * theta) + b_.dot(theta);
}

bool QuadraticPotential::in_domain(const Vector& theta) const {
  return theta.size() == b_.size() && theta.allFinite();
}

Vector QuadraticPotential::gradient(const Vector& theta) const {
  return -(A_ * theta) + b_;
}

Matrix QuadraticPotential::hessian(const Vector&) const { return -A_; }

CustomPotential::CustomPotential(int dim, ValueFn value, DomainFn domain,
                                 GradFn grad, HessFn hess)
    : d_(dim),
      value_(std::move(value)),
      domain_(std::move(domain)),
      grad_(std::move(grad)),
      hess_(std::move(hess)) {
  require(d_ >= 1, "CustomPotential: dim must be >= 1");
  require(static_cast<bool>(value_), "CustomPotential: value callback required");
  require(static_cast<bool>(domain_), "CustomPotential: domain callback required");
}

double CustomPotential::value(const Vector& theta) const { return value_(theta); }

bool CustomPotential::in_domain(const Vector& theta) const {
  return theta.size() == d_ && domain_(theta);
}

Vector CustomPotential::gradient(const Vector& theta) const {
  if (grad_) return grad_(theta);
  return Potential::gradient(theta);
}

Matrix CustomPotential::hessian(const Vector& theta) const {
  if (hess_) return hess_(theta);
  return Potential::hessian(theta);
}

void require_domain(const Potential& model, const Vector& theta, const char* who) {
  if (model.dim() != theta.size())
    throw PreconditionError(std::string(who) + ": expected dimension " +
                            std::to_string(model.dim()) + ", got " +
                            std::to_string(theta.size()));
  if (!model.in_domain(theta))
    throw DomainError(std::string(who) + ": point outside the potential domain");
}

ValidationReport validate_potential(const Potential& model, double alpha,
                                    const std::vector<Vector>& samples) {
  require(alpha > 0.0, "validate_potential: alpha must be positive");
  ValidationReport rep;
  rep.pass = true;
  rep.worst_eigenvalue = -std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const Vector& x = samples[s];
    if (model.dim() != x.size() || !model.in_domain(x))
      throw DomainError("validate_potential: sample " + std::to_string(s) +
                        " outside the potential domain");
    Vector g = model.gradient(x);
    Matrix H = model.hessian(x);
    // Strict concavity of exp(alpha*phi) is equivalent to
    // D2phi + alpha Dphi Dphi' being negative definite.
    Matrix M = H + alpha * g * g.transpose();
    Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (M + M.transpose()));
    double lam = eig.eigenvalues().maxCoeff();
    if (lam > rep.worst_eigenvalue) {
      rep.worst_eigenvalue = lam;
      rep.worst_eigenvalue_sample = static_cast<int>(s);
    }
    if (lam >= 0.0) rep.pass = false;

    if (model.has_analytic_gradient()) {
      Vector gfd = fd_gradient([&](const Vector& t) { return model.value(t); }, x);
      double err = (g - gfd).norm() / std::max(1.0, g.norm());
      if (err > rep.worst_gradient_error) {
        rep.worst_gradient_error = err;
        rep.worst_gradient_sample = static_cast<int>(s);
      }
      if (err > 1e-6) rep.pass = false;
    }
  }
  if (samples.empty()) rep.worst_eigenvalue = 0.0;
  return rep;
}

}  // namespace logdiv
