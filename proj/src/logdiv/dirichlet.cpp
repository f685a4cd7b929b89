#include "logdiv/dirichlet.hpp"

#include <cmath>
#include <random>

#include "logdiv/rng.hpp"

namespace logdiv {

bool is_simplex_point(const Vector& p, double tol) {
  if (p.size() < 2) return false;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (!(p[i] > 0.0) || !std::isfinite(p[i])) return false;
    sum += p[i];
  }
  return std::abs(sum - 1.0) <= tol;
}

void require_simplex(const Vector& p, const char* who) {
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (!(p[i] > 0.0) || !std::isfinite(p[i]))
      throw DomainError(std::string(who) + ": component " + std::to_string(i) +
                        " not strictly positive");
  if (!is_simplex_point(p))
    throw DomainError(std::string(who) + ": components must sum to 1");
}

Vector simplex_to_data(const Vector& p) {
  require_simplex(p, "simplex_to_data");
  Eigen::Index n = p.size();
  return p.head(n - 1) / p[n - 1];
}

Vector data_to_simplex(const Vector& y) {
  Eigen::Index d = y.size();
  require(d >= 1, "data_to_simplex: empty input");
  for (Eigen::Index i = 0; i < d; ++i)
    if (!(y[i] > 0.0) || !std::isfinite(y[i]))
      throw DomainError("data_to_simplex: component " + std::to_string(i) +
                        " not strictly positive");
  Vector p(d + 1);
  p.head(d) = y;
  p[d] = 1.0;
  return p / p.sum();
}

double dirichlet_cost(const Vector& p, const Vector& q) {
  require_simplex(p, "dirichlet_cost");
  require_simplex(q, "dirichlet_cost");
  require(p.size() == q.size(), "dirichlet_cost: dimension mismatch");
  Eigen::Index n = p.size();
  double mean_ratio = 0.0;
  double mean_log = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double r = q[i] / p[i];
    mean_ratio += r;
    mean_log += std::log(r);
  }
  mean_ratio /= static_cast<double>(n);
  mean_log /= static_cast<double>(n);
  return std::log(mean_ratio) - mean_log;
}

Vector aitchison_perturb(const Vector& p, const Vector& w) {
  require_simplex(p, "aitchison_perturb");
  require(p.size() == w.size(), "aitchison_perturb: dimension mismatch");
  for (Eigen::Index i = 0; i < w.size(); ++i)
    if (!(w[i] > 0.0) || !std::isfinite(w[i]))
      throw DomainError("aitchison_perturb: perturbation must be strictly positive");
  Vector r = p.cwiseProduct(w);
  return r / r.sum();
}

Matrix ilr_basis(int n) {
  require(n >= 2, "ilr_basis: need n >= 2");
  Matrix V = Matrix::Zero(n, n - 1);
  for (int j = 0; j < n - 1; ++j) {
    double norm = std::sqrt(static_cast<double>(j + 1) * (j + 2));
    for (int i = 0; i <= j; ++i) V(i, j) = 1.0 / norm;
    V(j + 1, j) = -(j + 1.0) / norm;
  }
  return V;
}

Vector ilr(const Vector& p) {
  require_simplex(p, "ilr");
  int n = static_cast<int>(p.size());
  Vector logs = p.array().log();
  Vector clr = logs.array() - logs.mean();
  return ilr_basis(n).transpose() * clr;
}

Vector ilr_inverse(const Vector& z) {
  int n = static_cast<int>(z.size()) + 1;
  Vector logs = ilr_basis(n) * z;
  // Softmax, shifted for stability.
  Vector e = (logs.array() - logs.maxCoeff()).exp();
  return e / e.sum();
}

std::vector<Vector> sample_perturbation(const Vector& p, const Vector& concentration,
                                        int count, std::uint64_t seed) {
  require_simplex(p, "sample_perturbation");
  require(concentration.size() == p.size(),
          "sample_perturbation: concentration size must match p");
  for (Eigen::Index i = 0; i < concentration.size(); ++i)
    if (!(concentration[i] > 0.0) || !std::isfinite(concentration[i]))
      throw PreconditionError("sample_perturbation: concentration must be positive");
  require(count >= 0, "sample_perturbation: negative count");

  std::vector<Vector> out;
  out.reserve(count);
  Eigen::Index n = p.size();
  for (int s = 0; s < count; ++s) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
    Vector D(n);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      std::gamma_distribution<double> gamma(concentration[i], 1.0);
      double g = gamma(rng);
      // Guard the (measure-zero, but float-reachable) zero draw.
      D[i] = std::max(g, 1e-300);
      sum += D[i];
    }
    D /= sum;
    out.push_back(aitchison_perturb(p, D));
  }
  return out;
}

DirichletInstance::DirichletInstance(int n, double alpha) : n_(n), alpha_(alpha) {
  require(n >= 2, "DirichletInstance: need n >= 2");
  require(alpha > 0.0, "DirichletInstance: alpha must be positive");
  require(alpha * (n - 1) < n,
          "DirichletInstance: alpha must be below n/(n-1) for a valid transform");
  phi_ = std::make_shared<LogPotential>(n - 1, n);
  psi_ = phi_;
}

}  // namespace logdiv
