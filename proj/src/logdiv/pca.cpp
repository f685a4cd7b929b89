#include "logdiv/pca.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "logdiv/dirichlet.hpp"
#include "logdiv/parallel.hpp"
#include "logdiv/rng.hpp"
#include "logdiv/solver.hpp"

namespace logdiv {
namespace {

struct RestartOutcome {
  AffineSubspace subspace;
  std::vector<Vector> t;
  std::vector<double> divergences;
  std::vector<double> trace;
  double objective = std::numeric_limits<double>::infinity();
  bool converged = false;
  bool usable = false;
};

// One per-point inner projection, warm-started; never returns a value
// above the warm start's.
struct InnerState {
  Vector t;
  double divergence;
  int iterations;
  double orth_residual;
  bool converged;
};

class Alternator {
 public:
  Alternator(const Potential& phi, double alpha, const std::vector<Vector>& theta_P,
             const PcaConfig& cfg)
      : phi_(phi), alpha_(alpha), theta_P_(theta_P), cfg_(cfg) {
    grad_P_.resize(theta_P.size());
    val_P_.resize(theta_P.size());
    for (std::size_t i = 0; i < theta_P.size(); ++i) {
      grad_P_[i] = phi.gradient(theta_P[i]);
      val_P_[i] = phi.value(theta_P[i]);
    }
  }

  RestartOutcome run(AffineSubspace A) {
    const std::size_t N = theta_P_.size();
    RestartOutcome out;
    std::vector<InnerState> inner(N);
    bool first = true;

    double prev = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < cfg_.max_outer; ++iter) {
      if (!inner_step(A, inner, first)) return out;  // unusable start
      first = false;
      double obj = total(inner);
      out.trace.push_back(obj);

      outer_step(A, inner);
      double obj2 = total(inner);
      out.trace.push_back(obj2);

      if (std::abs(prev - obj2) <= cfg_.outer_tol * std::max(1.0, std::abs(prev)) &&
          iter > 0) {
        out.converged = true;
        prev = obj2;
        break;
      }
      prev = obj2;
    }
    // Final refresh so the reported per-point data matches the subspace.
    if (!inner_step(A, inner, false)) return out;
    double final_obj = total(inner);
    if (!out.trace.empty() && final_obj < out.trace.back() - 1e-15)
      out.trace.push_back(final_obj);

    out.subspace = std::move(A);
    out.objective = final_obj;
    out.t.resize(N);
    out.divergences.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
      out.t[i] = inner[i].t;
      out.divergences[i] = inner[i].divergence;
    }
    out.usable = true;
    return out;
  }

 private:
  double total(const std::vector<InnerState>& inner) const {
    double s = 0.0;
    for (const auto& st : inner) s += st.divergence;  // index order, deterministic
    return s;
  }

  double point_objective(const AffineSubspace& A, std::size_t i,
                         const Vector& t) const {
    Vector x = A.base + A.basis * t;
    if (!phi_.in_domain(x)) throw DomainError("pca: iterate left the domain");
    double u = 1.0 + alpha_ * grad_P_[i].dot(x - theta_P_[i]);
    if (!(u > 0.0)) throw DomainError("pca: log argument <= 0");
    return std::log(u) / alpha_ - (phi_.value(x) - val_P_[i]);
  }

  bool inner_step(const AffineSubspace& A, std::vector<InnerState>& inner,
                  bool first) {
    const std::size_t N = theta_P_.size();
    std::vector<int> failed(N, 0);
    parallel_for(N, [&](std::size_t i) {
      ProjectionConfig pc;
      pc.grad_tol = cfg_.inner_grad_tol;
      pc.orth_tol = cfg_.inner_orth_tol;
      pc.seed = derive_seed(cfg_.seed, i);
      pc.strict = false;
      pc.multistarts = first ? 3 : 1;
      try {
        ProjectionResult r = project_one(A, i, first ? nullptr : &inner[i].t, pc);
        // Warm starts make the inner step monotone: keep the old point if
        // the solver somehow came back worse.
        if (!first && r.divergence > inner[i].divergence) return;
        inner[i] = {r.t, r.divergence, r.iterations, r.orth_residual, r.converged};
      } catch (const Error&) {
        failed[i] = 1;
      }
    });
    for (std::size_t i = 0; i < N; ++i)
      if (failed[i]) return false;
    return true;
  }

  ProjectionResult project_one(const AffineSubspace& A, std::size_t i,
                               const Vector* warm, const ProjectionConfig& pc) {
    // Inline variant of dual_project against the cached gradient data, with
    // an optional warm start replacing the multistart sweep.
    SolveOptions opts;
    opts.max_iters = pc.max_iters;
    opts.grad_tol = pc.grad_tol;
    auto f = [&](const Vector& t) { return point_objective(A, i, t); };
    auto g = [&](const Vector& t) {
      Vector x = A.base + A.basis * t;
      double u = 1.0 + alpha_ * grad_P_[i].dot(x - theta_P_[i]);
      return (A.basis.transpose() * (grad_P_[i] / u - phi_.gradient(x)).eval()).eval();
    };
    auto feas = [&](const Vector& t) { return phi_.in_domain(A.base + A.basis * t); };

    std::vector<Vector> starts;
    if (warm) {
      starts.push_back(*warm);
    } else {
      starts.push_back(Vector::Zero(A.k()));
      starts.push_back(A.basis.transpose() * (theta_P_[i] - A.base));
      std::mt19937_64 rng(derive_seed(pc.seed, 0x696e6974ULL));
      std::normal_distribution<double> gauss(0.0, 1.0);
      for (int s = 2; s < pc.multistarts; ++s) {
        Vector t(A.k());
        for (int j = 0; j < A.k(); ++j) t[j] = (1.0 + starts[1].norm()) * gauss(rng);
        starts.push_back(t);
      }
    }

    bool found = false;
    SolveResult best;
    for (Vector t0 : starts) {
      int shrink = 0;
      while (shrink < 60) {
        try {
          if (feas(t0) && std::isfinite(f(t0))) break;
        } catch (const Error&) {
        }
        t0 *= 0.5;
        ++shrink;
      }
      if (shrink == 60) continue;
      SolveResult r = minimize(f, g, feas, t0, opts);
      if (!found || r.value < best.value) {
        best = r;
        found = true;
      }
    }
    if (!found) throw ConvergenceError("pca: no feasible projection start");

    ProjectionResult res;
    res.t = best.x;
    res.theta = A.base + A.basis * res.t;
    res.divergence = best.value;
    res.iterations = best.iterations;
    res.converged = best.converged;
    res.orth_residual = best.grad_norm;
    return res;
  }

  void outer_step(AffineSubspace& A, std::vector<InnerState>& inner) {
    const std::size_t N = theta_P_.size();
    const int d = A.dim();
    const int k = A.k();
    if (k == 0) return;

    // Variables: base followed by the basis columns, column-major.
    auto unpack = [&](const Vector& x, Vector& base, Matrix& basis) {
      base = x.head(d);
      basis = Eigen::Map<const Matrix>(x.data() + d, d, k);
    };
    auto pack = [&](const Vector& base, const Matrix& basis) {
      Vector x(d + d * k);
      x.head(d) = base;
      Eigen::Map<Matrix>(x.data() + d, d, k) = basis;
      return x;
    };

    auto f = [&](const Vector& x) {
      Vector base;
      Matrix basis;
      unpack(x, base, basis);
      double s = 0.0;
      for (std::size_t i = 0; i < N; ++i) {
        Vector xi = base + basis * inner[i].t;
        if (!phi_.in_domain(xi)) throw DomainError("pca: subspace step left the domain");
        double u = 1.0 + alpha_ * grad_P_[i].dot(xi - theta_P_[i]);
        if (!(u > 0.0)) throw DomainError("pca: log argument <= 0");
        s += std::log(u) / alpha_ - (phi_.value(xi) - val_P_[i]);
      }
      return s;
    };
    auto g = [&](const Vector& x) {
      Vector base;
      Matrix basis;
      unpack(x, base, basis);
      Vector gb = Vector::Zero(d);
      Matrix gB = Matrix::Zero(d, k);
      for (std::size_t i = 0; i < N; ++i) {
        Vector xi = base + basis * inner[i].t;
        double u = 1.0 + alpha_ * grad_P_[i].dot(xi - theta_P_[i]);
        Vector r = grad_P_[i] / u - phi_.gradient(xi);
        gb += r;
        gB += r * inner[i].t.transpose();
      }
      return pack(gb, gB);
    };
    auto feas = [&](const Vector& x) {
      Vector base;
      Matrix basis;
      unpack(x, base, basis);
      for (std::size_t i = 0; i < N; ++i)
        if (!phi_.in_domain(base + basis * inner[i].t)) return false;
      return true;
    };

    SolveOptions opts;
    opts.max_iters = cfg_.outer_step_iters;
    opts.grad_tol = cfg_.inner_grad_tol;
    SolveResult r = minimize(f, g, feas, pack(A.base, A.basis), opts);

    Vector base;
    Matrix basis;
    unpack(r.x, base, basis);
    // Restore orthonormal columns without moving any chosen point:
    // basis t = Q (R t) for the thin QR factors.
    Eigen::HouseholderQR<Matrix> qr(basis);
    Matrix Q = qr.householderQ() * Matrix::Identity(d, k);
    Matrix R = Q.transpose() * basis;
    for (std::size_t i = 0; i < N; ++i) {
      inner[i].t = R * inner[i].t;
      inner[i].divergence = point_objective({Frame::primal, base, Q}, i, inner[i].t);
    }
    A.base = std::move(base);
    A.basis = std::move(Q);
  }

  const Potential& phi_;
  double alpha_;
  const std::vector<Vector>& theta_P_;
  std::vector<Vector> grad_P_;
  std::vector<double> val_P_;
  const PcaConfig& cfg_;
};

}  // namespace

AffineSubspace init_subspace(const Potential& phi, double alpha,
                             const std::vector<Vector>& data, int k,
                             InitStrategy strategy, std::uint64_t seed) {
  require(!data.empty(), "init_subspace: no data");
  const int d = phi.dim();
  require(k >= 1 && k <= d, "init_subspace: k out of range");

  std::vector<Vector> theta(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    try {
      theta[i] = legendre_inverse(phi, alpha, data[i]);
    } catch (const Error& e) {
      throw DomainError("init_subspace: data point " + std::to_string(i) +
                        " has no primal representation (" + e.what() + ")");
    }
  }
  Vector mean = Vector::Zero(d);
  for (const auto& t : theta) mean += t;
  mean /= static_cast<double>(theta.size());
  if (!phi.in_domain(mean))
    throw DomainError("init_subspace: pulled-back mean outside the domain");

  Matrix basis(d, k);
  if (strategy == InitStrategy::euclidean_pca) {
    Matrix C = Matrix::Zero(d, d);
    for (const auto& t : theta) C += (t - mean) * (t - mean).transpose();
    C /= static_cast<double>(theta.size());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(C);
    for (int j = 0; j < k; ++j) basis.col(j) = eig.eigenvectors().col(d - 1 - j);
  } else {
    std::mt19937_64 rng(derive_seed(seed, 0x62617369ULL));
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix raw(d, k);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < k; ++j) raw(i, j) = gauss(rng);
    basis = orthonormalize(raw);
  }
  return make_subspace(Frame::primal, std::move(mean), std::move(basis));
}

double pca_objective(const Potential& phi, double alpha, const AffineSubspace& A,
                     const std::vector<Vector>& data,
                     const ProjectionConfig& config) {
  std::vector<double> div(data.size());
  parallel_for(data.size(), [&](std::size_t i) {
    Point P{data[i], Frame::dual};
    ProjectionConfig pc = config;
    pc.seed = derive_seed(config.seed, i);
    div[i] = dual_project(phi, alpha, A, P, pc).divergence;
  });
  double s = 0.0;
  for (double v : div) s += v;
  return s;
}

PcaFit pca_fit(const Potential& phi, double alpha, const std::vector<Vector>& data,
               const PcaConfig& config) {
  require(!data.empty(), "pca_fit: no data");
  require(config.k >= 1 && config.k <= phi.dim(), "pca_fit: k out of range");
  require(config.n_restarts >= 1, "pca_fit: need at least one restart");

  // Pull every data point back to primal coordinates once; this also
  // validates the data.
  std::vector<Vector> theta_P(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    try {
      theta_P[i] = legendre_inverse(phi, alpha, data[i]);
    } catch (const Error& e) {
      throw DomainError("pca_fit: data point " + std::to_string(i) +
                        " outside the dual domain (" + e.what() + ")");
    }
  }

  Alternator alt(phi, alpha, theta_P, config);

  std::vector<RestartOutcome> outcomes;
  for (int r = 0; r < config.n_restarts; ++r) {
    AffineSubspace A0;
    try {
      A0 = init_subspace(phi, alpha, data, config.k,
                         r == 0 ? InitStrategy::euclidean_pca : InitStrategy::random,
                         derive_seed(config.seed, static_cast<std::uint64_t>(r)));
    } catch (const Error&) {
      continue;
    }
    outcomes.push_back(alt.run(std::move(A0)));
  }

  int best = -1;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (!outcomes[i].usable) continue;
    if (best < 0 || outcomes[i].objective < outcomes[best].objective)
      best = static_cast<int>(i);
  }
  if (best < 0)
    throw ConvergenceError("pca_fit: every restart failed to produce a fit");

  RestartOutcome& win = outcomes[best];
  PcaFit fit;
  fit.subspace = std::move(win.subspace);
  fit.objective = win.objective;
  fit.trace = std::move(win.trace);
  fit.converged = win.converged;
  fit.winning_restart = best;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (static_cast<int>(i) == best || !outcomes[i].usable) continue;
    if (outcomes[i].objective - fit.objective <= 1e-8) fit.near_tie = true;
  }

  const std::size_t N = data.size();
  fit.theta.resize(N);
  fit.eta.resize(N);
  fit.t = std::move(win.t);
  fit.divergences = Eigen::Map<Vector>(win.divergences.data(),
                                       static_cast<Eigen::Index>(N));
  for (std::size_t i = 0; i < N; ++i) {
    fit.theta[i] = fit.subspace.base + fit.subspace.basis * fit.t[i];
    fit.eta[i] = legendre_forward(phi, alpha, fit.theta[i]);
  }
  return fit;
}

AitchisonPca aitchison_pca(const std::vector<Vector>& simplex_data, int k,
                           int curve_samples) {
  require(!simplex_data.empty(), "aitchison_pca: no data");
  const int n = static_cast<int>(simplex_data[0].size());
  require(k >= 1 && k <= n - 1, "aitchison_pca: k out of range");

  const std::size_t N = simplex_data.size();
  Matrix Z(N, n - 1);
  for (std::size_t i = 0; i < N; ++i) Z.row(i) = ilr(simplex_data[i]).transpose();

  AitchisonPca out;
  out.mean_ilr = Z.colwise().mean().transpose();
  Matrix centered = Z.rowwise() - out.mean_ilr.transpose();
  Matrix C = centered.transpose() * centered / static_cast<double>(N);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(C);

  out.eigenvalues = eig.eigenvalues().reverse();
  out.basis_ilr.resize(n - 1, k);
  for (int j = 0; j < k; ++j)
    out.basis_ilr.col(j) = eig.eigenvectors().col(n - 2 - j);
  out.scores = centered * out.basis_ilr;

  double lo = 0.0, hi = 0.0;
  if (out.scores.rows() > 0) {
    lo = out.scores.col(0).minCoeff();
    hi = out.scores.col(0).maxCoeff();
  }
  double margin = 0.1 * std::max(hi - lo, 1e-12);
  lo -= margin;
  hi += margin;
  out.curve.reserve(curve_samples);
  for (int s = 0; s < curve_samples; ++s) {
    double f = curve_samples > 1 ? static_cast<double>(s) / (curve_samples - 1) : 0.5;
    Vector z = out.mean_ilr + (lo + f * (hi - lo)) * out.basis_ilr.col(0);
    out.curve.push_back(ilr_inverse(z));
  }
  return out;
}

}  // namespace logdiv
