#pragma once

#include <cstdint>
#include <vector>

#include "logdiv/projection.hpp"

namespace logdiv {

enum class InitStrategy { euclidean_pca, random };

struct PcaConfig {
  int k = 1;
  int max_outer = 200;
  // Inner (per-point projection) tolerances.
  double inner_grad_tol = 1e-10;
  double inner_orth_tol = 1e-8;
  // Relative objective decrease below which the outer loop stops.
  double outer_tol = 1e-9;
  int n_restarts = 5;
  std::uint64_t seed = 0;
  // Quasi-Newton iterations spent on the subspace per outer cycle.
  int outer_step_iters = 30;
};

struct PcaFit {
  AffineSubspace subspace;
  std::vector<Vector> theta;  // per-point projections, on the subspace
  std::vector<Vector> eta;    // their transforms
  std::vector<Vector> t;      // subspace coordinates
  Vector divergences;
  double objective = 0.0;
  // Objective after every half-step (inner, outer, inner, ...) of the
  // winning restart; never increasing.
  std::vector<double> trace;
  bool converged = false;
  int winning_restart = -1;
  // Another restart came within 1e-8 of the winner.
  bool near_tie = false;
};

// Fits the k-dimensional primal-affine subspace minimizing the total
// projected divergence of the data (given in dual coordinates), by
// alternating per-point dual projections with quasi-Newton subspace
// updates.  Restart 0 initializes from euclidean-pca, the rest from random
// orthonormal bases; the best objective wins.
PcaFit pca_fit(const Potential& phi, double alpha, const std::vector<Vector>& data,
               const PcaConfig& config = {});

// Total projected divergence of the data onto the subspace (sum of
// dual-projection divergences, accumulated in index order).
double pca_objective(const Potential& phi, double alpha, const AffineSubspace& A,
                     const std::vector<Vector>& data,
                     const ProjectionConfig& config = {});

// euclidean_pca: mean and top-k principal directions of the data pulled
// back to primal coordinates.  random: seeded random orthonormal basis
// through the pulled-back mean.
AffineSubspace init_subspace(const Potential& phi, double alpha,
                             const std::vector<Vector>& data, int k,
                             InitStrategy strategy, std::uint64_t seed = 0);

struct AitchisonPca {
  Vector mean_ilr;
  Matrix basis_ilr;    // top-k eigenvectors, descending eigenvalue
  Vector eigenvalues;  // all n-1, descending
  Matrix scores;       // N x k
  // Principal curve along the first component, back-transformed to the
  // simplex; spans the score range with a 10% margin.
  std::vector<Vector> curve;
};

// Classical PCA in ilr coordinates; the comparison baseline.
AitchisonPca aitchison_pca(const std::vector<Vector>& simplex_data, int k,
                           int curve_samples = 100);

}  // namespace logdiv
