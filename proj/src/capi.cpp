#include "logdiv/logdiv.h"

#include <cstring>
#include <string>

#include "logdiv/dirichlet.hpp"
#include "logdiv/geometry.hpp"
#include "logdiv/parallel.hpp"
#include "logdiv/pca.hpp"
#include "logdiv/projection.hpp"
#include "logdiv/rng.hpp"

namespace {

using logdiv::Matrix;
using logdiv::Vector;

thread_local std::string g_last_error;

int code_for(const logdiv::Error& e) {
  if (dynamic_cast<const logdiv::DomainError*>(&e)) return LOGDIV_ERR_DOMAIN;
  if (dynamic_cast<const logdiv::SingularError*>(&e)) return LOGDIV_ERR_SINGULAR;
  if (dynamic_cast<const logdiv::ConvergenceError*>(&e)) return LOGDIV_ERR_CONVERGENCE;
  if (dynamic_cast<const logdiv::FrameError*>(&e)) return LOGDIV_ERR_FRAME;
  if (dynamic_cast<const logdiv::RankError*>(&e)) return LOGDIV_ERR_RANK;
  if (dynamic_cast<const logdiv::GeometryError*>(&e)) return LOGDIV_ERR_GEOMETRY;
  if (dynamic_cast<const logdiv::BoundaryError*>(&e)) return LOGDIV_ERR_BOUNDARY;
  if (dynamic_cast<const logdiv::PreconditionError*>(&e)) return LOGDIV_ERR_PRECONDITION;
  return LOGDIV_ERR_INTERNAL;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return LOGDIV_OK;
  } catch (const logdiv::Error& e) {
    g_last_error = e.what();
    return code_for(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LOGDIV_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return LOGDIV_ERR_INTERNAL;
  }
}

int precondition(const char* msg) {
  g_last_error = msg;
  return LOGDIV_ERR_PRECONDITION;
}

Vector to_vec(const double* x, int d) {
  return Eigen::Map<const Vector>(x, d);
}

void from_vec(const Vector& v, double* out) {
  if (out) Eigen::Map<Vector>(out, v.size()) = v;
}

void from_mat_rowmajor(const Matrix& m, double* out) {
  if (!out) return;
  Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      out, m.rows(), m.cols()) = m;
}

logdiv::ProjectionConfig convert(const logdiv_proj_config* c) {
  logdiv::ProjectionConfig pc;
  if (c) {
    pc.grad_tol = c->grad_tol;
    pc.orth_tol = c->orth_tol;
    pc.max_iters = c->max_iters;
    pc.multistarts = c->multistarts;
    pc.seed = c->seed;
    pc.strict = c->strict != 0;
  }
  return pc;
}

}  // namespace

struct logdiv_instance {
  std::shared_ptr<const logdiv::Potential> phi;
  std::shared_ptr<const logdiv::Potential> psi;
  double alpha = 1.0;
};

struct logdiv_subspace {
  logdiv::AffineSubspace sub;
};

struct logdiv_pca_fit {
  logdiv::PcaFit fit;
};

extern "C" {

const char* logdiv_version(void) { return "logdiv 1.0.0"; }

const char* logdiv_last_error(void) { return g_last_error.c_str(); }

int logdiv_instance_create_dirichlet(int n, double alpha, logdiv_instance** out) {
  if (!out) return precondition("null output handle");
  return guarded([&] {
    logdiv::DirichletInstance inst(n, alpha);
    *out = new logdiv_instance{inst.phi_ptr(), inst.psi_ptr(), alpha};
  });
}

int logdiv_instance_create_perturbed(int dim, double alpha, logdiv_instance** out) {
  if (!out) return precondition("null output handle");
  return guarded([&] {
    logdiv::require(alpha > 0.0, "perturbed instance: alpha must be positive");
    auto phi = std::make_shared<logdiv::PerturbedLogPotential>(dim);
    auto psi = std::make_shared<logdiv::ConjugatePotential>(phi, alpha);
    *out = new logdiv_instance{std::move(phi), std::move(psi), alpha};
  });
}

int logdiv_instance_create_custom(int dim, double alpha, logdiv_value_fn value,
                                  logdiv_grad_fn grad, logdiv_hess_fn hess,
                                  logdiv_domain_fn in_domain, void* user,
                                  logdiv_instance** out) {
  if (!out) return precondition("null output handle");
  if (!value || !in_domain) return precondition("value and in_domain are required");
  return guarded([&] {
    logdiv::require(alpha > 0.0, "custom instance: alpha must be positive");
    logdiv::CustomPotential::GradFn g;
    logdiv::CustomPotential::HessFn h;
    if (grad)
      g = [grad, user, dim](const Vector& t) {
        Vector o(dim);
        grad(t.data(), dim, o.data(), user);
        return o;
      };
    if (hess)
      h = [hess, user, dim](const Vector& t) {
        Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> o(dim,
                                                                                 dim);
        hess(t.data(), dim, o.data(), user);
        return Matrix(o);
      };
    auto phi = std::make_shared<logdiv::CustomPotential>(
        dim,
        [value, user, dim](const Vector& t) { return value(t.data(), dim, user); },
        [in_domain, user, dim](const Vector& t) {
          return in_domain(t.data(), dim, user) != 0;
        },
        std::move(g), std::move(h));
    auto psi = std::make_shared<logdiv::ConjugatePotential>(phi, alpha);
    *out = new logdiv_instance{std::move(phi), std::move(psi), alpha};
  });
}

void logdiv_instance_free(logdiv_instance* inst) { delete inst; }

int logdiv_instance_dim(const logdiv_instance* inst, int* dim) {
  if (!inst || !dim) return precondition("null argument");
  *dim = inst->phi->dim();
  return LOGDIV_OK;
}

int logdiv_instance_alpha(const logdiv_instance* inst, double* alpha) {
  if (!inst || !alpha) return precondition("null argument");
  *alpha = inst->alpha;
  return LOGDIV_OK;
}

int logdiv_validate(const logdiv_instance* inst, int count, const double* thetas,
                    double* worst_eig, double* worst_grad, int* pass) {
  if (!inst || !thetas || count < 0) return precondition("null argument");
  return guarded([&] {
    int d = inst->phi->dim();
    std::vector<Vector> samples;
    samples.reserve(count);
    for (int i = 0; i < count; ++i) samples.push_back(to_vec(thetas + i * d, d));
    logdiv::ValidationReport rep =
        logdiv::validate_potential(*inst->phi, inst->alpha, samples);
    if (worst_eig) *worst_eig = rep.worst_eigenvalue;
    if (worst_grad) *worst_grad = rep.worst_gradient_error;
    if (pass) *pass = rep.pass ? 1 : 0;
  });
}

int logdiv_to_dual(const logdiv_instance* inst, const double* theta, double* eta) {
  if (!inst || !theta || !eta) return precondition("null argument");
  return guarded([&] {
    from_vec(logdiv::legendre_forward(*inst->phi, inst->alpha,
                                      to_vec(theta, inst->phi->dim())),
             eta);
  });
}

int logdiv_to_primal(const logdiv_instance* inst, const double* eta,
                     const double* guess, double* theta) {
  if (!inst || !eta || !theta) return precondition("null argument");
  return guarded([&] {
    int d = inst->phi->dim();
    Vector g;
    const Vector* gp = nullptr;
    if (guess) {
      g = to_vec(guess, d);
      gp = &g;
    }
    from_vec(logdiv::legendre_inverse(*inst->phi, inst->alpha, to_vec(eta, d), gp),
             theta);
  });
}

int logdiv_divergence(const logdiv_instance* inst, const double* theta,
                      const double* theta_prime, double* out) {
  if (!inst || !theta || !theta_prime || !out) return precondition("null argument");
  return guarded([&] {
    int d = inst->phi->dim();
    *out = logdiv::l_alpha_divergence(*inst->phi, inst->alpha, to_vec(theta, d),
                                      to_vec(theta_prime, d));
  });
}

int logdiv_divergence_dual(const logdiv_instance* inst, const double* eta,
                           const double* eta_prime, double* out) {
  if (!inst || !eta || !eta_prime || !out) return precondition("null argument");
  return guarded([&] {
    int d = inst->psi->dim();
    *out = logdiv::l_alpha_divergence(*inst->psi, inst->alpha, to_vec(eta, d),
                                      to_vec(eta_prime, d));
  });
}

int logdiv_bregman(const logdiv_instance* inst, const double* theta,
                   const double* theta_prime, double* out) {
  if (!inst || !theta || !theta_prime || !out) return precondition("null argument");
  return guarded([&] {
    int d = inst->phi->dim();
    *out = logdiv::bregman_divergence(*inst->phi, to_vec(theta, d),
                                      to_vec(theta_prime, d));
  });
}

int logdiv_conjugate_value(const logdiv_instance* inst, const double* y, double* out) {
  if (!inst || !y || !out) return precondition("null argument");
  return guarded([&] {
    *out = logdiv::alpha_conjugate_value(*inst->phi, inst->alpha,
                                         to_vec(y, inst->phi->dim()));
  });
}

int logdiv_self_dual_gap(const logdiv_instance* inst, const double* theta_P,
                         const double* theta_Q, double* out) {
  if (!inst || !theta_P || !theta_Q || !out) return precondition("null argument");
  return guarded([&] {
    int d = inst->phi->dim();
    *out = logdiv::self_dual_check(*inst->phi, *inst->psi, inst->alpha,
                                   to_vec(theta_P, d), to_vec(theta_Q, d));
  });
}

int logdiv_metric(const logdiv_instance* inst, const double* theta, double* G,
                  double* Pi) {
  if (!inst || !theta || !G) return precondition("null argument");
  return guarded([&] {
    logdiv::MetricMatrix m = logdiv::metric_matrix(
        *inst->phi, inst->alpha,
        {to_vec(theta, inst->phi->dim()), logdiv::Frame::primal});
    from_mat_rowmajor(m.G, G);
    if (Pi) *Pi = m.Pi;
  });
}

int logdiv_transform_jacobian(const logdiv_instance* inst, const double* theta,
                              double* J) {
  if (!inst || !theta || !J) return precondition("null argument");
  return guarded([&] {
    from_mat_rowmajor(logdiv::transform_jacobian(*inst->phi, inst->alpha,
                                                 to_vec(theta, inst->phi->dim())),
                      J);
  });
}

int logdiv_pullback_metric(const logdiv_instance* inst, const double* theta,
                           double* g) {
  if (!inst || !theta || !g) return precondition("null argument");
  return guarded([&] {
    Vector t = to_vec(theta, inst->phi->dim());
    logdiv::MetricMatrix m =
        logdiv::metric_matrix(*inst->phi, inst->alpha, {t, logdiv::Frame::primal});
    Matrix J = logdiv::transform_jacobian(*inst->phi, inst->alpha, t);
    from_mat_rowmajor(logdiv::pullback_metric(m, J), g);
  });
}

int logdiv_geodesic_sample(const logdiv_instance* inst, int frame, const double* from,
                           const double* to, double t, double* out) {
  if (!inst || !from || !to || !out) return precondition("null argument");
  if (frame != LOGDIV_FRAME_PRIMAL && frame != LOGDIV_FRAME_DUAL)
    return precondition("frame must be LOGDIV_FRAME_PRIMAL or LOGDIV_FRAME_DUAL");
  return guarded([&] {
    int d = inst->phi->dim();
    logdiv::Frame f =
        frame == LOGDIV_FRAME_PRIMAL ? logdiv::Frame::primal : logdiv::Frame::dual;
    logdiv::GeodesicSegment seg =
        logdiv::geodesic(*inst->phi, inst->alpha, {to_vec(from, d), f},
                         {to_vec(to, d), f}, f);
    from_vec(seg.sample(t), out);
  });
}

int logdiv_pythagorean(const logdiv_instance* inst, const double* theta_P,
                       const double* theta_Q, const double* theta_R, double* gap,
                       double* orth) {
  if (!inst || !theta_P || !theta_Q || !theta_R)
    return precondition("null argument");
  return guarded([&] {
    int d = inst->phi->dim();
    auto [g, o] = logdiv::pythagorean_gap(
        *inst->phi, inst->alpha, {to_vec(theta_P, d), logdiv::Frame::primal},
        {to_vec(theta_Q, d), logdiv::Frame::primal},
        {to_vec(theta_R, d), logdiv::Frame::primal});
    if (gap) *gap = g;
    if (orth) *orth = o;
  });
}

int logdiv_subspace_create(int frame, int dim, int k, const double* base,
                           const double* basis, logdiv_subspace** out) {
  if (!out || !base || (k > 0 && !basis)) return precondition("null argument");
  if (frame != LOGDIV_FRAME_PRIMAL && frame != LOGDIV_FRAME_DUAL)
    return precondition("frame must be LOGDIV_FRAME_PRIMAL or LOGDIV_FRAME_DUAL");
  if (dim < 1 || k < 0 || k > dim) return precondition("need 0 <= k <= dim, dim >= 1");
  return guarded([&] {
    Matrix B(dim, k);
    for (int j = 0; j < k; ++j) B.col(j) = to_vec(basis + j * dim, dim);
    logdiv::Frame f =
        frame == LOGDIV_FRAME_PRIMAL ? logdiv::Frame::primal : logdiv::Frame::dual;
    *out = new logdiv_subspace{
        logdiv::make_subspace(f, to_vec(base, dim), std::move(B))};
  });
}

void logdiv_subspace_free(logdiv_subspace* sub) { delete sub; }

int logdiv_subspace_info(const logdiv_subspace* sub, int* frame, int* dim, int* k) {
  if (!sub) return precondition("null argument");
  if (frame)
    *frame = sub->sub.frame == logdiv::Frame::primal ? LOGDIV_FRAME_PRIMAL
                                                     : LOGDIV_FRAME_DUAL;
  if (dim) *dim = sub->sub.dim();
  if (k) *k = sub->sub.k();
  return LOGDIV_OK;
}

int logdiv_subspace_base(const logdiv_subspace* sub, double* base) {
  if (!sub || !base) return precondition("null argument");
  from_vec(sub->sub.base, base);
  return LOGDIV_OK;
}

int logdiv_subspace_basis(const logdiv_subspace* sub, double* basis) {
  if (!sub || !basis) return precondition("null argument");
  for (int j = 0; j < sub->sub.k(); ++j)
    Eigen::Map<Vector>(basis + j * sub->sub.dim(), sub->sub.dim()) =
        sub->sub.basis.col(j);
  return LOGDIV_OK;
}

int logdiv_proj_config_default(logdiv_proj_config* out) {
  if (!out) return precondition("null argument");
  logdiv::ProjectionConfig pc;
  out->grad_tol = pc.grad_tol;
  out->orth_tol = pc.orth_tol;
  out->max_iters = pc.max_iters;
  out->multistarts = pc.multistarts;
  out->seed = pc.seed;
  out->strict = pc.strict ? 1 : 0;
  return LOGDIV_OK;
}

namespace {

void fill_projection(const logdiv::ProjectionResult& r, logdiv_proj_result* result,
                     double* theta_out, double* eta_out, double* t_out) {
  if (result) {
    result->divergence = r.divergence;
    result->orth_residual = r.orth_residual;
    result->iterations = r.iterations;
    result->converged = r.converged ? 1 : 0;
  }
  from_vec(r.theta, theta_out);
  from_vec(r.eta, eta_out);
  from_vec(r.t, t_out);
}

}  // namespace

int logdiv_dual_project(const logdiv_instance* inst, const logdiv_subspace* E,
                        const double* theta_P, const logdiv_proj_config* config,
                        logdiv_proj_result* result, double* theta_out,
                        double* eta_out, double* t_out) {
  if (!inst || !E || !theta_P) return precondition("null argument");
  return guarded([&] {
    logdiv::ProjectionResult r = logdiv::dual_project(
        *inst->phi, inst->alpha, E->sub,
        {to_vec(theta_P, inst->phi->dim()), logdiv::Frame::primal}, convert(config));
    fill_projection(r, result, theta_out, eta_out, t_out);
  });
}

int logdiv_primal_project(const logdiv_instance* inst, const logdiv_subspace* M,
                          const double* theta_P, const logdiv_proj_config* config,
                          logdiv_proj_result* result, double* theta_out,
                          double* eta_out, double* t_out) {
  if (!inst || !M || !theta_P) return precondition("null argument");
  return guarded([&] {
    logdiv::ProjectionResult r = logdiv::primal_project(
        *inst->phi, *inst->psi, inst->alpha, M->sub,
        {to_vec(theta_P, inst->phi->dim()), logdiv::Frame::primal}, convert(config));
    fill_projection(r, result, theta_out, eta_out, t_out);
  });
}

int logdiv_dual_complement(const logdiv_instance* inst, const logdiv_subspace* E,
                           const double* theta_P0, logdiv_subspace** M_out) {
  if (!inst || !E || !theta_P0 || !M_out) return precondition("null argument");
  return guarded([&] {
    *M_out = new logdiv_subspace{logdiv::dual_complement_at(
        *inst->phi, inst->alpha, E->sub,
        {to_vec(theta_P0, inst->phi->dim()), logdiv::Frame::primal})};
  });
}

int logdiv_leaf_assign(const logdiv_instance* inst, const logdiv_subspace* E,
                       int count, const double* thetas,
                       const logdiv_proj_config* config, double* bases_theta,
                       double* bases_eta, double* divergences,
                       double* orth_residuals, double* membership_residuals,
                       int* statuses) {
  if (!inst || !E || !thetas || count < 0) return precondition("null argument");
  return guarded([&] {
    int d = inst->phi->dim();
    std::vector<logdiv::Point> pts;
    pts.reserve(count);
    for (int i = 0; i < count; ++i)
      pts.push_back({to_vec(thetas + i * d, d), logdiv::Frame::primal});
    std::vector<logdiv::LeafAssignment> out =
        logdiv::leaf_assign(*inst->phi, inst->alpha, E->sub, pts, convert(config));
    for (int i = 0; i < count; ++i) {
      const logdiv::LeafAssignment& a = out[i];
      if (!a.ok) {
        if (statuses) {
          switch (a.failure) {
            case logdiv::FailureKind::domain:
              statuses[i] = LOGDIV_ERR_DOMAIN;
              break;
            case logdiv::FailureKind::boundary:
              statuses[i] = LOGDIV_ERR_BOUNDARY;
              break;
            case logdiv::FailureKind::convergence:
              statuses[i] = LOGDIV_ERR_CONVERGENCE;
              break;
            default:
              statuses[i] = LOGDIV_ERR_INTERNAL;
          }
        }
        continue;
      }
      if (statuses) statuses[i] = LOGDIV_OK;
      if (bases_theta) from_vec(a.projection.theta, bases_theta + i * d);
      if (bases_eta) from_vec(a.projection.eta, bases_eta + i * d);
      if (divergences) divergences[i] = a.projection.divergence;
      if (orth_residuals) orth_residuals[i] = a.projection.orth_residual;
      if (membership_residuals) membership_residuals[i] = a.membership_residual;
    }
  });
}

int logdiv_pca_config_default(logdiv_pca_config* out) {
  if (!out) return precondition("null argument");
  logdiv::PcaConfig pc;
  out->k = pc.k;
  out->max_outer = pc.max_outer;
  out->tol_inner = pc.inner_orth_tol;
  out->tol_outer = pc.outer_tol;
  out->n_restarts = pc.n_restarts;
  out->seed = pc.seed;
  return LOGDIV_OK;
}

int logdiv_pca_run(const logdiv_instance* inst, int count, const double* data,
                   const logdiv_pca_config* config, logdiv_pca_fit** out) {
  if (!inst || !data || !out || count < 1) return precondition("null argument");
  return guarded([&] {
    int d = inst->phi->dim();
    std::vector<Vector> ys;
    ys.reserve(count);
    for (int i = 0; i < count; ++i) ys.push_back(to_vec(data + i * d, d));
    logdiv::PcaConfig pc;
    if (config) {
      pc.k = config->k;
      pc.max_outer = config->max_outer;
      pc.inner_orth_tol = config->tol_inner;
      pc.outer_tol = config->tol_outer;
      pc.n_restarts = config->n_restarts;
      pc.seed = config->seed;
    }
    *out = new logdiv_pca_fit{logdiv::pca_fit(*inst->phi, inst->alpha, ys, pc)};
  });
}

void logdiv_pca_fit_free(logdiv_pca_fit* fit) { delete fit; }

int logdiv_pca_summary(const logdiv_pca_fit* fit, double* objective, int* converged,
                       int* trace_len, int* near_tie) {
  if (!fit) return precondition("null argument");
  if (objective) *objective = fit->fit.objective;
  if (converged) *converged = fit->fit.converged ? 1 : 0;
  if (trace_len) *trace_len = static_cast<int>(fit->fit.trace.size());
  if (near_tie) *near_tie = fit->fit.near_tie ? 1 : 0;
  return LOGDIV_OK;
}

int logdiv_pca_subspace(const logdiv_pca_fit* fit, logdiv_subspace** out) {
  if (!fit || !out) return precondition("null argument");
  *out = new logdiv_subspace{fit->fit.subspace};
  return LOGDIV_OK;
}

int logdiv_pca_trace(const logdiv_pca_fit* fit, int cap, double* out, int* len) {
  if (!fit || (cap > 0 && !out)) return precondition("null argument");
  int n = static_cast<int>(fit->fit.trace.size());
  if (len) *len = n;
  for (int i = 0; i < std::min(cap, n); ++i) out[i] = fit->fit.trace[i];
  return LOGDIV_OK;
}

int logdiv_pca_point(const logdiv_pca_fit* fit, int i, double* theta, double* eta,
                     double* t_out, double* divergence) {
  if (!fit) return precondition("null argument");
  if (i < 0 || i >= static_cast<int>(fit->fit.theta.size()))
    return precondition("point index out of range");
  from_vec(fit->fit.theta[i], theta);
  from_vec(fit->fit.eta[i], eta);
  from_vec(fit->fit.t[i], t_out);
  if (divergence) *divergence = fit->fit.divergences[i];
  return LOGDIV_OK;
}

int logdiv_objective_at(const logdiv_instance* inst, const logdiv_subspace* A,
                        int count, const double* data,
                        const logdiv_proj_config* config, double* out) {
  if (!inst || !A || !data || !out || count < 1) return precondition("null argument");
  return guarded([&] {
    int d = inst->phi->dim();
    std::vector<Vector> ys;
    ys.reserve(count);
    for (int i = 0; i < count; ++i) ys.push_back(to_vec(data + i * d, d));
    *out = logdiv::pca_objective(*inst->phi, inst->alpha, A->sub, ys, convert(config));
  });
}

int logdiv_simplex_to_data(int n, const double* p, double* y) {
  if (!p || !y || n < 2) return precondition("null argument or n < 2");
  return guarded([&] { from_vec(logdiv::simplex_to_data(to_vec(p, n)), y); });
}

int logdiv_data_to_simplex(int n, const double* y, double* p) {
  if (!p || !y || n < 2) return precondition("null argument or n < 2");
  return guarded([&] { from_vec(logdiv::data_to_simplex(to_vec(y, n - 1)), p); });
}

int logdiv_dirichlet_cost(int n, const double* p, const double* q, double* out) {
  if (!p || !q || !out || n < 2) return precondition("null argument or n < 2");
  return guarded(
      [&] { *out = logdiv::dirichlet_cost(to_vec(p, n), to_vec(q, n)); });
}

int logdiv_aitchison_perturb(int n, const double* p, const double* w, double* out) {
  if (!p || !w || !out || n < 2) return precondition("null argument or n < 2");
  return guarded(
      [&] { from_vec(logdiv::aitchison_perturb(to_vec(p, n), to_vec(w, n)), out); });
}

int logdiv_ilr(int n, const double* p, double* z) {
  if (!p || !z || n < 2) return precondition("null argument or n < 2");
  return guarded([&] { from_vec(logdiv::ilr(to_vec(p, n)), z); });
}

int logdiv_ilr_inverse(int n, const double* z, double* p) {
  if (!p || !z || n < 2) return precondition("null argument or n < 2");
  return guarded([&] { from_vec(logdiv::ilr_inverse(to_vec(z, n - 1)), p); });
}

int logdiv_sample_perturbation(int n, const double* p, const double* concentration,
                               int count, unsigned long long seed, double* out) {
  if (!p || !concentration || (count > 0 && !out) || n < 2 || count < 0)
    return precondition("null argument, n < 2, or negative count");
  return guarded([&] {
    std::vector<Vector> samples = logdiv::sample_perturbation(
        to_vec(p, n), to_vec(concentration, n), count, seed);
    for (int i = 0; i < count; ++i) from_vec(samples[i], out + i * n);
  });
}

int logdiv_aitchison_baseline(int n, int count, const double* simplex_data,
                              int curve_samples, double* curve, double* scores,
                              double* eigenvalues) {
  if (!simplex_data || n < 2 || count < 1 || curve_samples < 0)
    return precondition("null argument or bad sizes");
  return guarded([&] {
    std::vector<Vector> data;
    data.reserve(count);
    for (int i = 0; i < count; ++i) data.push_back(to_vec(simplex_data + i * n, n));
    logdiv::AitchisonPca fit = logdiv::aitchison_pca(data, 1, curve_samples);
    if (curve)
      for (int s = 0; s < curve_samples; ++s) from_vec(fit.curve[s], curve + s * n);
    if (scores)
      for (int i = 0; i < count; ++i) scores[i] = fit.scores(i, 0);
    if (eigenvalues) from_vec(fit.eigenvalues, eigenvalues);
  });
}

}  // extern "C"
