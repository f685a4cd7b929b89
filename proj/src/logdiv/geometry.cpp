#include "logdiv/geometry.hpp"

#include <cmath>

namespace logdiv {

MetricMatrix metric_matrix(const Potential& phi, double alpha, const Point& P) {
  Coords c = complete_point(phi, alpha, P);
  double Pi = 1.0 + alpha * c.theta.dot(c.eta);
  if (!(Pi > 1e-12)) throw GeometryError("metric_matrix: degenerate metric, Pi <= 0");
  Eigen::Index d = c.theta.size();
  Matrix G = (-1.0 / Pi) * Matrix::Identity(d, d) +
             (alpha / (Pi * Pi)) * c.eta * c.theta.transpose();
  Eigen::JacobiSVD<Matrix> svd(G);
  double smax = svd.singularValues()(0);
  double smin = svd.singularValues()(d - 1);
  if (!(smin > 1e-12 * smax))
    throw SingularError("metric_matrix: G numerically singular");
  return MetricMatrix{std::move(G), Pi, std::move(c.theta), std::move(c.eta)};
}

double mixed_inner_product(const MetricMatrix& Gm, const TangentVector& u,
                           const TangentVector& v) {
  if (u.frame != Frame::primal || v.frame != Frame::dual)
    throw FrameError("mixed_inner_product: expects (primal, dual); use convert_frame");
  require(u.components.size() == Gm.G.rows() && v.components.size() == Gm.G.cols(),
          "mixed_inner_product: dimension mismatch");
  return u.components.dot(Gm.G * v.components);
}

TangentVector convert_frame(const TangentVector& v, const Matrix& J) {
  require(v.components.size() == J.rows(), "convert_frame: dimension mismatch");
  if (v.frame == Frame::primal) return {J * v.components, Frame::dual};
  Eigen::FullPivLU<Matrix> lu(J);
  if (!lu.isInvertible())
    throw FrameError("convert_frame: transform Jacobian is singular");
  return {lu.solve(v.components), Frame::primal};
}

Matrix pullback_metric(const MetricMatrix& Gm, const Matrix& J) {
  Matrix M = Gm.G * J;
  double defect = (M - M.transpose()).cwiseAbs().maxCoeff();
  if (defect > 1e-8 * std::max(1.0, M.cwiseAbs().maxCoeff()))
    throw GeometryError("pullback_metric: G J not symmetric, defect " +
                        std::to_string(defect));
  Matrix g = 0.5 * (M + M.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(g);
  if (!(eig.eigenvalues().minCoeff() > 0.0))
    throw GeometryError("pullback_metric: result not positive definite "
                        "(invalid potential or point)");
  return g;
}

GeodesicSegment geodesic(const Potential& phi, double alpha, const Point& P,
                         const Point& Q, Frame kind) {
  GeodesicSegment seg{complete_point(phi, alpha, P), complete_point(phi, alpha, Q),
                      kind};
  require((seg.P.theta - seg.Q.theta).norm() > 0.0, "geodesic: endpoints coincide");
  // The endpoints are known to be on the manifold; sample the interior to
  // catch traces that leave the domain.
  const int probes = 33;
  for (int i = 1; i < probes; ++i) {
    double t = static_cast<double>(i) / probes;
    Vector x = seg.sample(t);
    try {
      if (kind == Frame::primal) {
        require_domain(phi, x, "geodesic");
      } else {
        legendre_inverse(phi, alpha, x);
      }
    } catch (const Error&) {
      throw DomainError("geodesic: trace exits the domain near t = " +
                        std::to_string(t));
    }
  }
  return seg;
}

std::pair<double, double> pythagorean_gap(const Potential& phi, double alpha,
                                          const Point& P, const Point& Q,
                                          const Point& R) {
  Coords cP = complete_point(phi, alpha, P);
  Coords cQ = complete_point(phi, alpha, Q);
  Coords cR = complete_point(phi, alpha, R);
  double gap = l_alpha_divergence(phi, alpha, cQ.theta, cP.theta) +
               l_alpha_divergence(phi, alpha, cR.theta, cQ.theta) -
               l_alpha_divergence(phi, alpha, cR.theta, cP.theta);
  MetricMatrix Gm = metric_matrix(phi, alpha, {cQ.theta, Frame::primal});
  double orth = (cR.theta - cQ.theta).dot(Gm.G * (cP.eta - cQ.eta));
  return {gap, orth};
}

Matrix dual_complement_basis(const Matrix& A0, const MetricMatrix& Gm) {
  Eigen::Index d = Gm.G.rows();
  Eigen::Index k = A0.cols();
  require(A0.rows() == d, "dual_complement_basis: basis dimension mismatch");
  require(k >= 0 && k <= d, "dual_complement_basis: k out of range");
  if (k == 0) return Matrix::Identity(d, d);
  {
    Eigen::JacobiSVD<Matrix> rank_check(A0);
    double smax = rank_check.singularValues()(0);
    if (!(rank_check.singularValues()(k - 1) > 1e-12 * smax))
      throw RankError("dual_complement_basis: A0 rank deficient");
  }
  if (k == d) return Matrix(d, 0);

  // Right nullspace of the k x d matrix A0' G; G invertible and A0 full
  // rank give it exactly d - k dimensions.
  Matrix M = A0.transpose() * Gm.G;
  Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(d - k);
}

}  // namespace logdiv
