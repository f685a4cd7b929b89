#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "logdiv/potential.hpp"

using namespace logdiv;

namespace {

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("log potential value, gradient, hessian") {
  LogPotential phi(2, 3);
  Vector theta = vec2(0.5, 0.25);
  CHECK(phi.value(theta) ==
        doctest::Approx((std::log(0.5) + std::log(0.25)) / 3.0).epsilon(1e-15));
  Vector g = phi.gradient(theta);
  CHECK(g(0) == doctest::Approx(1.0 / (3 * 0.5)).epsilon(1e-15));
  CHECK(g(1) == doctest::Approx(1.0 / (3 * 0.25)).epsilon(1e-15));
  Matrix H = phi.hessian(theta);
  CHECK(H(0, 0) == doctest::Approx(-1.0 / (3 * 0.25)).epsilon(1e-15));
  CHECK(H(1, 1) == doctest::Approx(-1.0 / (3 * 0.0625)).epsilon(1e-15));
  CHECK(H(0, 1) == 0.0);
  CHECK(phi.has_analytic_gradient());
  CHECK(phi.has_analytic_hessian());
}

TEST_CASE("log potential domain is the open positive orthant") {
  LogPotential phi(2, 3);
  CHECK(phi.in_domain(vec2(1e-8, 2.0)));
  CHECK_FALSE(phi.in_domain(vec2(0.0, 1.0)));
  CHECK_FALSE(phi.in_domain(vec2(1.0, -0.5)));
}

TEST_CASE("log potential closed-form inverse") {
  LogPotential phi(2, 3);
  Vector eta = vec2(2.0, 4.0);
  Vector theta(2);

  // alpha = 1: factor n - alpha d = 1, the plain reciprocal.
  REQUIRE(phi.closed_form_inverse(1.0, eta, theta));
  CHECK(theta(0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(theta(1) == doctest::Approx(0.25).epsilon(1e-15));

  // alpha = 0.5: factor 2.
  REQUIRE(phi.closed_form_inverse(0.5, eta, theta));
  CHECK(theta(0) == doctest::Approx(0.25).epsilon(1e-15));

  CHECK_THROWS_AS(phi.closed_form_inverse(1.0, vec2(-1.0, 2.0), theta),
                  DomainError);
  // factor vanishes at alpha = n/d
  CHECK_THROWS_AS(phi.closed_form_inverse(1.5, eta, theta), SingularError);
}

TEST_CASE("finite-difference fallbacks agree with analytic derivatives") {
  LogPotential phi(2, 3);
  CustomPotential numeric(
      2, [&phi](const Vector& t) { return phi.value(t); },
      [&phi](const Vector& t) { return phi.in_domain(t); });
  CHECK_FALSE(numeric.has_analytic_gradient());

  Vector theta = vec2(0.7, 1.3);
  Vector ga = phi.gradient(theta);
  Vector gn = numeric.gradient(theta);
  CHECK((ga - gn).norm() <= 1e-8 * (1 + ga.norm()));
  Matrix Ha = phi.hessian(theta);
  Matrix Hn = numeric.hessian(theta);
  CHECK((Ha - Hn).norm() <= 1e-5 * (1 + Ha.norm()));
}

TEST_CASE("fd_gradient and fd_jacobian on a known map") {
  auto f = [](const Vector& x) { return x(0) * x(0) * x(1) + std::sin(x(1)); };
  Vector x = vec2(1.2, 0.4);
  Vector g = fd_gradient(f, x);
  CHECK(g(0) == doctest::Approx(2 * 1.2 * 0.4).epsilon(1e-8));
  CHECK(g(1) == doctest::Approx(1.2 * 1.2 + std::cos(0.4)).epsilon(1e-8));

  auto m = [](const Vector& x) {
    Vector y(2);
    y << x(0) * x(1), x(0) + x(1) * x(1);
    return y;
  };
  Matrix J = fd_jacobian(m, x);
  CHECK(J(0, 0) == doctest::Approx(0.4).epsilon(1e-7));
  CHECK(J(0, 1) == doctest::Approx(1.2).epsilon(1e-7));
  CHECK(J(1, 0) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(J(1, 1) == doctest::Approx(0.8).epsilon(1e-7));
}

TEST_CASE("perturbed potential: box domain and analytic derivatives") {
  PerturbedLogPotential phi(2);
  CHECK(phi.in_domain(vec2(1.0, 1.0)));
  CHECK_FALSE(phi.in_domain(vec2(0.01, 1.0)));
  CHECK_FALSE(phi.in_domain(vec2(1.0, 9.0)));

  Vector theta = vec2(0.9, 2.1);
  Vector g = phi.gradient(theta);
  Vector gfd = fd_gradient([&phi](const Vector& t) { return phi.value(t); }, theta);
  CHECK((g - gfd).norm() <= 1e-7 * (1 + g.norm()));
  Matrix H = phi.hessian(theta);
  Matrix Hfd = fd_jacobian([&phi](const Vector& t) { return phi.gradient(t); },
                           theta);
  CHECK((H - Hfd).norm() <= 1e-6 * (1 + H.norm()));
}

TEST_CASE("quadratic potential") {
  Matrix A(2, 2);
  A << 2.0, 0.5, 0.5, 1.0;
  Vector b = vec2(0.3, -0.2);
  QuadraticPotential phi(A, b);
  Vector theta = vec2(0.4, -1.1);
  CHECK(phi.value(theta) ==
        doctest::Approx(-0.5 * theta.dot(A * theta) + b.dot(theta))
            .epsilon(1e-15));
  CHECK((phi.gradient(theta) - (b - A * theta)).norm() <= 1e-14);
  CHECK((phi.hessian(theta) + A).norm() <= 1e-14);
  CHECK(phi.in_domain(theta));
}

TEST_CASE("validate_potential accepts the log family") {
  LogPotential phi(2, 3);
  std::vector<Vector> samples = {vec2(0.5, 0.25), vec2(1.0, 1.0), vec2(3.0, 0.1),
                                 vec2(0.01, 10.0)};
  auto report = validate_potential(phi, 1.0, samples);
  CHECK(report.pass);
  CHECK(report.worst_eigenvalue < 0.0);
  // Analytic gradient, so the consistency gap is tiny.
  CHECK(report.worst_gradient_error <= 1e-6);
}

TEST_CASE("validate_potential flags exp-concavity violations") {
  // For phi = -|theta|^2/2 the matrix D2phi + alpha Dphi Dphi' is
  // -I + theta theta', indefinite once |theta| > 1.
  QuadraticPotential phi(Matrix::Identity(2, 2), Vector::Zero(2));
  std::vector<Vector> samples = {vec2(0.1, 0.0), vec2(2.0, 0.0)};
  auto report = validate_potential(phi, 1.0, samples);
  CHECK_FALSE(report.pass);
  CHECK(report.worst_eigenvalue > 0.0);
  CHECK(report.worst_eigenvalue_sample == 1);
}

TEST_CASE("validate_potential names out-of-domain samples") {
  PerturbedLogPotential phi(2);
  std::vector<Vector> samples = {vec2(1.0, 1.0), vec2(10.0, 1.0)};
  CHECK_THROWS_AS(validate_potential(phi, 1.0, samples), DomainError);
}

TEST_CASE("perturbed potential is 1-exp-concave on its box") {
  PerturbedLogPotential phi(2);
  std::vector<Vector> samples;
  for (double a : {0.03, 0.5, 2.0, 7.9})
    for (double b : {0.03, 0.5, 2.0, 7.9}) samples.push_back(vec2(a, b));
  auto report = validate_potential(phi, 1.0, samples);
  CHECK(report.pass);
}

TEST_CASE("require_domain throws on bad points") {
  LogPotential phi(2, 3);
  CHECK_THROWS_AS(require_domain(phi, vec2(-1.0, 1.0), "test"), DomainError);
  CHECK_NOTHROW(require_domain(phi, vec2(1.0, 1.0), "test"));
}
