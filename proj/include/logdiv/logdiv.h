/* C interface to the logdiv library.
 *
 * Conventions:
 *   - Every function returning int gives LOGDIV_OK (0) on success or an
 *     error code; logdiv_last_error() describes the most recent failure on
 *     the calling thread.
 *   - Vectors are double arrays of the instance dimension d; matrices are
 *     d*d row-major unless stated otherwise; subspace bases are d*k
 *     column-major (column j at basis + j*d).
 *   - "theta" denotes primal coordinates, "eta"/"y" dual ones.
 *   - All handles are created and released by this library; passing a
 *     handle to a different instance's functions is undefined.
 */
#ifndef LOGDIV_H
#define LOGDIV_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define LOGDIV_API __declspec(dllexport)
#else
#define LOGDIV_API __attribute__((visibility("default")))
#endif

enum {
  LOGDIV_OK = 0,
  LOGDIV_ERR_DOMAIN = 1,       /* input outside the admissible set */
  LOGDIV_ERR_SINGULAR = 2,     /* vanishing denominator or singular matrix */
  LOGDIV_ERR_CONVERGENCE = 3,  /* iteration budget exhausted */
  LOGDIV_ERR_FRAME = 4,        /* argument in the wrong coordinate frame */
  LOGDIV_ERR_RANK = 5,         /* rank-deficient basis or k out of range */
  LOGDIV_ERR_GEOMETRY = 6,     /* degenerate metric / non-definite pullback */
  LOGDIV_ERR_BOUNDARY = 7,     /* minimizer escaped toward the boundary */
  LOGDIV_ERR_PRECONDITION = 8, /* API misuse: sizes, null output, bad config */
  LOGDIV_ERR_INTERNAL = 9
};

typedef struct logdiv_instance logdiv_instance;
typedef struct logdiv_subspace logdiv_subspace;
typedef struct logdiv_pca_fit logdiv_pca_fit;

/* Frames for subspaces and geodesics. */
enum { LOGDIV_FRAME_PRIMAL = 0, LOGDIV_FRAME_DUAL = 1 };

LOGDIV_API const char* logdiv_version(void);

/* Message for the last failure on this thread; empty string if none. */
LOGDIV_API const char* logdiv_last_error(void);

/* ------------------------------------------------------------------ */
/* Instances                                                           */

/* The simplex instance on n parts (dimension d = n-1); requires
 * 0 < alpha < n/(n-1).  Both potentials have closed-form transforms. */
LOGDIV_API int logdiv_instance_create_dirichlet(int n, double alpha,
                                                logdiv_instance** out);

/* The built-in generic instance (log potential plus a smooth perturbation,
 * domain the box (0.02, 8)^dim); its transform has no closed form, so the
 * Newton inversion path runs. */
LOGDIV_API int logdiv_instance_create_perturbed(int dim, double alpha,
                                                logdiv_instance** out);

/* A caller-supplied potential.  value and in_domain are required; grad and
 * hess may be NULL to use central finite differences.  The callbacks must
 * be thread-safe and pure. */
typedef double (*logdiv_value_fn)(const double* theta, int dim, void* user);
typedef void (*logdiv_grad_fn)(const double* theta, int dim, double* grad_out,
                               void* user);
typedef void (*logdiv_hess_fn)(const double* theta, int dim, double* hess_out,
                               void* user); /* row-major d*d */
typedef int (*logdiv_domain_fn)(const double* theta, int dim, void* user);

LOGDIV_API int logdiv_instance_create_custom(int dim, double alpha,
                                             logdiv_value_fn value,
                                             logdiv_grad_fn grad,
                                             logdiv_hess_fn hess,
                                             logdiv_domain_fn in_domain,
                                             void* user, logdiv_instance** out);

LOGDIV_API void logdiv_instance_free(logdiv_instance* inst);
LOGDIV_API int logdiv_instance_dim(const logdiv_instance* inst, int* dim);
LOGDIV_API int logdiv_instance_alpha(const logdiv_instance* inst, double* alpha);

/* Exponential-concavity and gradient-consistency check over `count`
 * sample points (count*dim, row-major).  pass is 1/0; worst_eig is the
 * largest eigenvalue of D2phi + alpha Dphi Dphi' seen (must be < 0);
 * worst_grad the largest relative analytic-vs-difference gradient gap. */
LOGDIV_API int logdiv_validate(const logdiv_instance* inst, int count,
                               const double* thetas, double* worst_eig,
                               double* worst_grad, int* pass);

/* ------------------------------------------------------------------ */
/* Transforms and divergences                                          */

LOGDIV_API int logdiv_to_dual(const logdiv_instance* inst, const double* theta,
                              double* eta);

/* guess may be NULL.  Uses the registered closed form when the instance
 * has one, otherwise damped Newton. */
LOGDIV_API int logdiv_to_primal(const logdiv_instance* inst, const double* eta,
                                const double* guess, double* theta);

/* L[theta : theta_prime] of the primal potential. */
LOGDIV_API int logdiv_divergence(const logdiv_instance* inst, const double* theta,
                                 const double* theta_prime, double* out);

/* L[eta : eta_prime] of the conjugate potential. */
LOGDIV_API int logdiv_divergence_dual(const logdiv_instance* inst, const double* eta,
                                      const double* eta_prime, double* out);

/* Bregman divergence of the primal potential (the alpha -> 0 reference). */
LOGDIV_API int logdiv_bregman(const logdiv_instance* inst, const double* theta,
                              const double* theta_prime, double* out);

/* Conjugate potential value at y. */
LOGDIV_API int logdiv_conjugate_value(const logdiv_instance* inst, const double* y,
                                      double* out);

/* |L_phi[theta_P : theta_Q] - L_psi[eta_Q : eta_P]|. */
LOGDIV_API int logdiv_self_dual_gap(const logdiv_instance* inst,
                                    const double* theta_P, const double* theta_Q,
                                    double* out);

/* ------------------------------------------------------------------ */
/* Geometry                                                            */

/* Mixed-frame metric at theta: G row-major d*d, Pi = 1 + alpha theta.eta.
 * Entry (i, j) pairs d/dtheta_i with d/deta_j. */
LOGDIV_API int logdiv_metric(const logdiv_instance* inst, const double* theta,
                             double* G, double* Pi);

/* Jacobian d(eta)/d(theta) of the forward transform, row-major. */
LOGDIV_API int logdiv_transform_jacobian(const logdiv_instance* inst,
                                         const double* theta, double* J);

/* Same-frame metric sym(G J), symmetric positive definite. */
LOGDIV_API int logdiv_pullback_metric(const logdiv_instance* inst,
                                      const double* theta, double* g);

/* Point at parameter t on the affine trace between two points given (and
 * returned) in `frame` coordinates. */
LOGDIV_API int logdiv_geodesic_sample(const logdiv_instance* inst, int frame,
                                      const double* from, const double* to,
                                      double t, double* out);

/* gap = D[Q:P] + D[R:Q] - D[R:P]; orth = (theta_R - theta_Q)' G(Q)
 * (eta_P - eta_Q).  All three points in primal coordinates. */
LOGDIV_API int logdiv_pythagorean(const logdiv_instance* inst, const double* theta_P,
                                  const double* theta_Q, const double* theta_R,
                                  double* gap, double* orth);

/* ------------------------------------------------------------------ */
/* Subspaces and projections                                           */

/* basis: dim*k column-major with orthonormal columns (defect <= 1e-12);
 * base must be in the frame's domain for primal-frame subspaces. */
LOGDIV_API int logdiv_subspace_create(int frame, int dim, int k, const double* base,
                                      const double* basis, logdiv_subspace** out);
LOGDIV_API void logdiv_subspace_free(logdiv_subspace* sub);
LOGDIV_API int logdiv_subspace_info(const logdiv_subspace* sub, int* frame, int* dim,
                                    int* k);
LOGDIV_API int logdiv_subspace_base(const logdiv_subspace* sub, double* base);
LOGDIV_API int logdiv_subspace_basis(const logdiv_subspace* sub, double* basis);

typedef struct logdiv_proj_config {
  double grad_tol;  /* solver gradient tolerance, default 1e-10 */
  double orth_tol;  /* first-order residual certifying tolerance, 1e-8 */
  int max_iters;    /* default 500 */
  int multistarts;  /* default 3 */
  unsigned long long seed;
  int strict; /* nonzero: failures are errors; zero: best effort */
} logdiv_proj_config;

LOGDIV_API int logdiv_proj_config_default(logdiv_proj_config* out);

typedef struct logdiv_proj_result {
  double divergence;
  double orth_residual;
  int iterations;
  int converged;
} logdiv_proj_result;

/* Dual projection of the point with primal coordinates theta_P onto the
 * primal-frame subspace E.  Any output pointer may be NULL; t_out needs
 * room for k entries. */
LOGDIV_API int logdiv_dual_project(const logdiv_instance* inst,
                                   const logdiv_subspace* E, const double* theta_P,
                                   const logdiv_proj_config* config,
                                   logdiv_proj_result* result, double* theta_out,
                                   double* eta_out, double* t_out);

/* Primal projection onto the dual-frame subspace M; same conventions. */
LOGDIV_API int logdiv_primal_project(const logdiv_instance* inst,
                                     const logdiv_subspace* M, const double* theta_P,
                                     const logdiv_proj_config* config,
                                     logdiv_proj_result* result, double* theta_out,
                                     double* eta_out, double* t_out);

/* The dual-frame complement subspace through P0 (which must lie on E). */
LOGDIV_API int logdiv_dual_complement(const logdiv_instance* inst,
                                      const logdiv_subspace* E,
                                      const double* theta_P0,
                                      logdiv_subspace** M_out);

/* Projects count points (primal coordinates, row-major count*d) onto E and
 * certifies each leaf.  statuses[i] gets LOGDIV_OK or the per-point error
 * code; failed rows leave their outputs untouched.  Other outputs may be
 * NULL; bases_theta/etas are count*d, divergences/orth/membership count.
 * Runs points in parallel (see LOGDIV_THREADS); output order is input
 * order.  Returns LOGDIV_OK even when individual points fail. */
LOGDIV_API int logdiv_leaf_assign(const logdiv_instance* inst,
                                  const logdiv_subspace* E, int count,
                                  const double* thetas,
                                  const logdiv_proj_config* config,
                                  double* bases_theta, double* bases_eta,
                                  double* divergences, double* orth_residuals,
                                  double* membership_residuals, int* statuses);

/* ------------------------------------------------------------------ */
/* PCA                                                                 */

typedef struct logdiv_pca_config {
  int k;
  int max_outer;    /* default 200 */
  double tol_inner; /* per-point first-order tolerance, default 1e-8 */
  double tol_outer; /* relative objective decrease, default 1e-9 */
  int n_restarts;   /* default 5 */
  unsigned long long seed;
} logdiv_pca_config;

LOGDIV_API int logdiv_pca_config_default(logdiv_pca_config* out);

/* Fits the subspace to count data points given in dual coordinates
 * (row-major count*d). */
LOGDIV_API int logdiv_pca_run(const logdiv_instance* inst, int count,
                              const double* data, const logdiv_pca_config* config,
                              logdiv_pca_fit** out);
LOGDIV_API void logdiv_pca_fit_free(logdiv_pca_fit* fit);

/* near_tie: another restart finished within 1e-8 of the winner. */
LOGDIV_API int logdiv_pca_summary(const logdiv_pca_fit* fit, double* objective,
                                  int* converged, int* trace_len, int* near_tie);
LOGDIV_API int logdiv_pca_subspace(const logdiv_pca_fit* fit, logdiv_subspace** out);

/* Copies min(cap, trace_len) trace entries; len gets the full length. */
LOGDIV_API int logdiv_pca_trace(const logdiv_pca_fit* fit, int cap, double* out,
                                int* len);

/* Per-point results; any output may be NULL.  t_out needs k entries. */
LOGDIV_API int logdiv_pca_point(const logdiv_pca_fit* fit, int i, double* theta,
                                double* eta, double* t_out, double* divergence);

/* Total projected divergence of the data onto an arbitrary subspace. */
LOGDIV_API int logdiv_objective_at(const logdiv_instance* inst,
                                   const logdiv_subspace* A, int count,
                                   const double* data,
                                   const logdiv_proj_config* config, double* out);

/* ------------------------------------------------------------------ */
/* Simplex utilities (no instance handle; n is the number of parts)     */

LOGDIV_API int logdiv_simplex_to_data(int n, const double* p, double* y);
LOGDIV_API int logdiv_data_to_simplex(int n, const double* y, double* p);
LOGDIV_API int logdiv_dirichlet_cost(int n, const double* p, const double* q,
                                     double* out);
LOGDIV_API int logdiv_aitchison_perturb(int n, const double* p, const double* w,
                                        double* out);
LOGDIV_API int logdiv_ilr(int n, const double* p, double* z);
LOGDIV_API int logdiv_ilr_inverse(int n, const double* z, double* p);

/* count draws of p (+) Dirichlet(concentration); out is count*n row-major.
 * Deterministic per seed, independent of threading. */
LOGDIV_API int logdiv_sample_perturbation(int n, const double* p,
                                          const double* concentration, int count,
                                          unsigned long long seed, double* out);

/* Classical PCA in ilr coordinates (k = 1): principal curve back in the
 * simplex (curve_samples*n row-major), per-point first scores (count), and
 * all n-1 eigenvalues in descending order.  Any output may be NULL. */
LOGDIV_API int logdiv_aitchison_baseline(int n, int count, const double* simplex_data,
                                         int curve_samples, double* curve,
                                         double* scores, double* eigenvalues);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* LOGDIV_H */
