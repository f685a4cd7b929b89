#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "logdiv/dirichlet.hpp"

using namespace logdiv;

namespace {

Vector simplex3(double a, double b, double c) {
  Vector p(3);
  p << a, b, c;
  return p;
}

Vector random_simplex(std::mt19937_64& gen, int n) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  Vector p(n);
  for (int i = 0; i < n; ++i) p(i) = u(gen);
  return p / p.sum();
}

}  // namespace

TEST_CASE("simplex membership") {
  CHECK(is_simplex_point(simplex3(0.5, 0.25, 0.25)));
  CHECK_FALSE(is_simplex_point(simplex3(0.5, 0.5, 0.1)));
  CHECK_FALSE(is_simplex_point(simplex3(0.0, 0.5, 0.5)));
  CHECK_FALSE(is_simplex_point(simplex3(-0.1, 0.6, 0.5)));
  CHECK_NOTHROW(require_simplex(simplex3(0.2, 0.3, 0.5), "test"));
  CHECK_THROWS_AS(require_simplex(simplex3(0.2, 0.3, 0.4), "test"), DomainError);
}

TEST_CASE("quotient chart round trips") {
  std::mt19937_64 gen(2);
  for (int n : {3, 4, 5}) {
    for (int i = 0; i < 20; ++i) {
      Vector p = random_simplex(gen, n);
      Vector y = simplex_to_data(p);
      CHECK(y.size() == n - 1);
      Vector back = data_to_simplex(y);
      CHECK((back - p).norm() <= 1e-14);
    }
  }
  // The worked point: ratios against the last part.
  Vector y = simplex_to_data(simplex3(0.5, 0.25, 0.25));
  CHECK(y(0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(y(1) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("dirichlet cost: frozen value, positivity, identity of indiscernibles") {
  Vector p = simplex3(0.5, 0.25, 0.25);
  Vector q = simplex3(1.0 / 3, 1.0 / 3, 1.0 / 3);
  CHECK(dirichlet_cost(p, q) ==
        doctest::Approx(0.04872750339269372).epsilon(1e-13));
  CHECK(dirichlet_cost(p, p) == doctest::Approx(0.0).epsilon(1e-15));

  std::mt19937_64 gen(9);
  for (int i = 0; i < 50; ++i) {
    Vector a = random_simplex(gen, 3), b = random_simplex(gen, 3);
    double c = dirichlet_cost(a, b);
    CHECK(c >= 0.0);
    if ((a - b).norm() > 1e-6) CHECK(c > 0.0);
  }
}

TEST_CASE("cost identity: c equals the dual divergence in the chart") {
  // c(p, q) = L[y : eta] for the conjugate potential at alpha = 1, with
  // y, eta the chart images of q, p.  The instance's psi is the same log
  // potential, so the check runs through the public pieces only.
  std::mt19937_64 gen(13);
  for (int n : {3, 4, 5}) {
    DirichletInstance inst(n, 1.0);
    for (int i = 0; i < 60; ++i) {
      Vector p = random_simplex(gen, n), q = random_simplex(gen, n);
      Vector eta = simplex_to_data(p), y = simplex_to_data(q);
      double via_divergence = l_alpha_divergence(inst.psi(), 1.0, y, eta);
      CHECK(std::fabs(dirichlet_cost(p, q) - via_divergence) <= 1e-12);
    }
  }
}

TEST_CASE("aitchison perturbation") {
  Vector p = simplex3(0.5, 0.25, 0.25);
  Vector uniform = simplex3(1.0 / 3, 1.0 / 3, 1.0 / 3);
  CHECK((aitchison_perturb(p, uniform) - p).norm() <= 1e-15);

  Vector w = simplex3(0.6, 0.3, 0.1);
  Vector r = aitchison_perturb(p, w);
  CHECK(is_simplex_point(r));
  // Componentwise proportional to p_i w_i.
  CHECK(r(0) / r(1) == doctest::Approx(p(0) * w(0) / (p(1) * w(1))).epsilon(1e-13));
}

TEST_CASE("ilr basis is the documented contrast system") {
  Matrix V = ilr_basis(3);
  REQUIRE(V.rows() == 3);
  REQUIRE(V.cols() == 2);
  CHECK(V(0, 0) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(V(1, 0) == doctest::Approx(-1 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(V(2, 0) == 0.0);
  CHECK(V(0, 1) == doctest::Approx(1 / std::sqrt(6.0)).epsilon(1e-15));
  CHECK(V(1, 1) == doctest::Approx(1 / std::sqrt(6.0)).epsilon(1e-15));
  CHECK(V(2, 1) == doctest::Approx(-2 / std::sqrt(6.0)).epsilon(1e-15));

  for (int n : {3, 4, 6}) {
    Matrix B = ilr_basis(n);
    CHECK((B.transpose() * B - Matrix::Identity(n - 1, n - 1)).norm() <= 1e-14);
    CHECK((B.transpose() * Vector::Ones(n)).norm() <= 1e-14);
  }
}

TEST_CASE("ilr round trips and turns perturbation into translation") {
  std::mt19937_64 gen(21);
  for (int i = 0; i < 30; ++i) {
    Vector p = random_simplex(gen, 4);
    Vector z = ilr(p);
    CHECK(z.size() == 3);
    CHECK((ilr_inverse(z) - p).norm() <= 1e-12);

    Vector w = random_simplex(gen, 4);
    Vector lhs = ilr(aitchison_perturb(p, w));
    Vector rhs = ilr(p) + ilr(w);
    CHECK((lhs - rhs).norm() <= 1e-12);
  }
}

TEST_CASE("perturbation sampling is reproducible and on the simplex") {
  Vector p = simplex3(0.5, 0.25, 0.25);
  Vector conc = simplex3(8.0, 10.0, 12.0);
  auto a = sample_perturbation(p, conc, 20, 123);
  auto b = sample_perturbation(p, conc, 20, 123);
  auto c = sample_perturbation(p, conc, 20, 124);
  REQUIRE(a.size() == 20);
  double max_gap = 0, cross_gap = 0;
  for (int i = 0; i < 20; ++i) {
    CHECK(is_simplex_point(a[i], 1e-9));
    max_gap = std::max(max_gap, (a[i] - b[i]).norm());
    cross_gap = std::max(cross_gap, (a[i] - c[i]).norm());
  }
  CHECK(max_gap == 0.0);
  CHECK(cross_gap > 1e-8);
}

TEST_CASE("sample count and degenerate arguments") {
  Vector p = simplex3(0.4, 0.4, 0.2);
  CHECK(sample_perturbation(p, simplex3(5, 5, 5), 0, 1).empty());
  CHECK_THROWS_AS(sample_perturbation(simplex3(0.5, 0.5, 0.1), simplex3(5, 5, 5),
                                      1, 1),
                  DomainError);
}

TEST_CASE("high concentration collapses the perturbation") {
  Vector p = simplex3(0.5, 0.25, 0.25);
  Vector conc = Vector::Constant(3, 1e6);
  auto draws = sample_perturbation(p, conc, 50, 7);
  for (const auto& q : draws) CHECK((q - p).lpNorm<Eigen::Infinity>() <= 1e-2);
}

TEST_CASE("instance construction guards its parameters") {
  CHECK_NOTHROW(DirichletInstance(3, 1.0));
  CHECK_NOTHROW(DirichletInstance(3, 1.49));
  CHECK_THROWS_AS(DirichletInstance(1, 1.0), PreconditionError);
  CHECK_THROWS_AS(DirichletInstance(3, 0.0), PreconditionError);
  CHECK_THROWS_AS(DirichletInstance(3, 1.5), PreconditionError);
  CHECK_THROWS_AS(DirichletInstance(3, -0.2), PreconditionError);
}

TEST_CASE("the transform at alpha 1 is the componentwise reciprocal") {
  DirichletInstance inst(3, 1.0);
  std::mt19937_64 gen(41);
  std::uniform_real_distribution<double> u(0.1, 4.0);
  for (int i = 0; i < 20; ++i) {
    Vector theta(2);
    theta << u(gen), u(gen);
    Vector eta = legendre_forward(inst.phi(), 1.0, theta);
    CHECK((eta - theta.cwiseInverse()).norm() <= 1e-13 * (1 + eta.norm()));
  }
}

TEST_CASE("phi and psi coincide for the simplex instance") {
  DirichletInstance inst(4, 0.9);
  CHECK(&inst.phi() == &inst.psi());
  CHECK(inst.d() == 3);
  // Conjugacy for generic alpha: the self-dual gap stays at rounding level.
  std::mt19937_64 gen(43);
  std::uniform_real_distribution<double> u(0.3, 2.0);
  for (int i = 0; i < 30; ++i) {
    Vector a(3), b(3);
    a << u(gen), u(gen), u(gen);
    b << u(gen), u(gen), u(gen);
    CHECK(self_dual_check(inst.phi(), inst.psi(), 0.9, a, b) <= 1e-9);
  }
}
