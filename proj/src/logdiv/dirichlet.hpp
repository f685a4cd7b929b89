#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "logdiv/divergence.hpp"
#include "logdiv/potential.hpp"

namespace logdiv {

// Strict interior of the unit simplex: positive components summing to 1
// within 1e-12.
bool is_simplex_point(const Vector& p, double tol = 1e-12);
void require_simplex(const Vector& p, const char* who);

// Quotient chart of the simplex: y_i = p_i / p_n for i < n.  Any fixed
// index would give an equivalent chart; the last one is the convention
// everywhere in this library.
Vector simplex_to_data(const Vector& p);

// Inverse chart: normalizes (y_1, ..., y_{n-1}, 1) to sum 1.
Vector data_to_simplex(const Vector& y);

// Transport cost c(p, q) = log((1/n) sum q_i/p_i) - (1/n) sum log(q_i/p_i).
// Nonnegative by AM-GM, zero only at p = q.
double dirichlet_cost(const Vector& p, const Vector& q);

// (p (+) w)_i = p_i w_i / sum_j p_j w_j.
Vector aitchison_perturb(const Vector& p, const Vector& w);

// Orthonormal contrast basis used by ilr, returned as an n x (n-1) matrix
// whose columns are Helmert-type contrasts: column j (0-based) has entries
//   v_j[i] =  1/sqrt((j+1)(j+2))   for i <= j,
//   v_j[j+1] = -(j+1)/sqrt((j+1)(j+2)),
//   v_j[i] =  0                    for i > j+1.
// Columns are orthonormal and orthogonal to the all-ones vector.  ilr
// output depends on this choice only up to rotation; the fitted affine
// sets downstream do not.
Matrix ilr_basis(int n);

// ilr(p) = basis' * (log p - mean(log p)); ilr_inverse is the softmax of
// basis * z.  Inverse of each other to 1e-12.
Vector ilr(const Vector& p);
Vector ilr_inverse(const Vector& z);

// count draws of p (+) D with D Dirichlet(concentration), via normalized
// gamma variates.  Sample i uses its own generator seeded from (seed, i),
// so results are reproducible and independent of any threading.
std::vector<Vector> sample_perturbation(const Vector& p, const Vector& concentration,
                                        int count, std::uint64_t seed);

// The simplex instance: phi and psi are the same (1/n) sum log potential on
// (0, inf)^{n-1}, conjugate to each other for every alpha < n/(n-1), with
// the closed-form transform eta_i = 1/((n - alpha(n-1)) theta_i).  At
// alpha = 1 the transform is the componentwise reciprocal and the
// L-divergence of psi in the quotient chart is exactly dirichlet_cost.
class DirichletInstance {
 public:
  explicit DirichletInstance(int n, double alpha = 1.0);

  int n() const { return n_; }
  int d() const { return n_ - 1; }
  double alpha() const { return alpha_; }
  const Potential& phi() const { return *phi_; }
  const Potential& psi() const { return *psi_; }
  std::shared_ptr<const Potential> phi_ptr() const { return phi_; }
  std::shared_ptr<const Potential> psi_ptr() const { return psi_; }

 private:
  int n_;
  double alpha_;
  std::shared_ptr<const Potential> phi_;
  std::shared_ptr<const Potential> psi_;
};

}  // namespace logdiv
