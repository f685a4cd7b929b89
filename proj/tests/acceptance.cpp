// Shipped guarantees, one [PASS]/[FAIL] line each.  Numerical criteria go
// through the C++ core; the last two drive the installed binary (path in
// LOGDIV_CLI_BIN, scratch space in LOGDIV_TEST_TMP).  Exit code is the
// number of failed criteria.
#include <sys/wait.h>

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "logdiv/dirichlet.hpp"
#include "logdiv/divergence.hpp"
#include "logdiv/geometry.hpp"
#include "logdiv/pca.hpp"
#include "logdiv/potential.hpp"
#include "logdiv/projection.hpp"

namespace {

using logdiv::AffineSubspace;
using logdiv::DirichletInstance;
using logdiv::Frame;
using logdiv::Matrix;
using logdiv::Point;
using logdiv::Potential;
using logdiv::Vector;

void expect(bool cond, const std::string& msg) {
  if (!cond) throw std::runtime_error(msg);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

Vector random_interior(std::mt19937_64& gen, int d, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector v(d);
  for (int i = 0; i < d; ++i) v[i] = u(gen);
  return v;
}

Vector random_simplex(std::mt19937_64& gen, int n) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  Vector p(n);
  double s = 0;
  for (int i = 0; i < n; ++i) s += (p[i] = u(gen));
  return p / s;
}

Vector random_unit(std::mt19937_64& gen, int d) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector v(d);
  do {
    for (int i = 0; i < d; ++i) v[i] = g(gen);
  } while (v.norm() < 1e-8);
  return v / v.norm();
}

// ------------------------------------------------------------------
// 1. cost identity

void c01_cost_identity() {
  std::mt19937_64 gen(101);
  double worst = 0;
  for (int n = 3; n <= 5; ++n) {
    DirichletInstance inst(n, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
      Vector p = random_simplex(gen, n), q = random_simplex(gen, n);
      double cost = logdiv::dirichlet_cost(p, q);
      Vector yp = logdiv::simplex_to_data(p), yq = logdiv::simplex_to_data(q);
      double dual = logdiv::l_alpha_divergence(inst.psi(), 1.0, yq, yp);
      worst = std::max(worst, std::fabs(cost - dual));
    }
  }
  expect(worst <= 1e-10, "max identity gap " + fmt(worst));
}

// ------------------------------------------------------------------
// 2. transform round trips

void c02_round_trips() {
  std::mt19937_64 gen(202);
  DirichletInstance dm(3, 1.0);
  logdiv::PerturbedLogPotential pm(2);
  struct Case {
    const Potential* phi;
    double alpha;
    double lo, hi;
  } cases[] = {{&dm.phi(), 1.0, 0.15, 3.0}, {&pm, 0.8, 0.3, 3.0}};
  double worst = 0;
  for (const auto& c : cases) {
    for (int trial = 0; trial < 1000; ++trial) {
      Vector theta = random_interior(gen, 2, c.lo, c.hi);
      Vector eta = logdiv::legendre_forward(*c.phi, c.alpha, theta);
      Vector back = logdiv::legendre_inverse(*c.phi, c.alpha, eta);
      worst = std::max(worst, (back - theta).cwiseAbs().maxCoeff());
      // Other direction, from an independently drawn dual point.
      Vector eta2 =
          logdiv::legendre_forward(*c.phi, c.alpha,
                                   random_interior(gen, 2, c.lo, c.hi));
      Vector th2 = logdiv::legendre_inverse(*c.phi, c.alpha, eta2);
      Vector eta2b = logdiv::legendre_forward(*c.phi, c.alpha, th2);
      worst = std::max(worst, (eta2b - eta2).cwiseAbs().maxCoeff());
    }
  }
  expect(worst <= 1e-8, "max round-trip error " + fmt(worst));
}

// ------------------------------------------------------------------
// 3. self-dual expression

void c03_self_dual() {
  std::mt19937_64 gen(303);
  DirichletInstance inst(3, 1.0);
  double worst = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    Vector tP = random_interior(gen, 2, 0.2, 2.8);
    Vector tQ = random_interior(gen, 2, 0.2, 2.8);
    worst = std::max(
        worst, logdiv::self_dual_check(inst.phi(), inst.psi(), 1.0, tP, tQ));
  }
  expect(worst <= 1e-9, "max self-dual gap " + fmt(worst));
}

// ------------------------------------------------------------------
// 4. Bregman limit

void c04_bregman_limit() {
  std::mt19937_64 gen(404);
  DirichletInstance inst(3, 1.0);
  const double alphas[] = {1e-2, 1e-3, 1e-4};
  for (int pair = 0; pair < 20; ++pair) {
    Vector a = random_interior(gen, 2, 0.5, 2.0);
    Vector b = random_interior(gen, 2, 0.5, 2.0);
    double breg = logdiv::bregman_divergence(inst.phi(), a, b);
    double err[3];
    for (int i = 0; i < 3; ++i)
      err[i] = std::fabs(
          logdiv::l_alpha_divergence(inst.phi(), alphas[i], a, b) - breg);
    for (int i = 0; i + 1 < 3; ++i) {
      double ratio = err[i] / err[i + 1];
      expect(ratio >= 5.0 && ratio <= 20.0,
             "pair " + std::to_string(pair) + " ratio " + fmt(ratio));
    }
  }
}

// ------------------------------------------------------------------
// 5. Pythagorean identity

void c05_pythagorean() {
  std::mt19937_64 gen(505);
  DirichletInstance inst(3, 1.0);
  std::uniform_real_distribution<double> mag(0.05, 0.12);
  std::uniform_int_distribution<int> coin(0, 1);

  auto shrink_until = [](Vector& v, const Vector& base,
                         const std::function<bool(const Vector&)>& ok) {
    // Halve the displacement until base + v is feasible.
    for (int i = 0; i < 60 && !ok(base + v); ++i) v *= 0.5;
  };
  auto positive = [](const Vector& v) { return v.minCoeff() > 1e-4; };

  double worst_orth = 0, worst_gap = 0;
  for (int trial = 0; trial < 500; ++trial) {
    Vector tQ = random_interior(gen, 2, 0.7, 1.8);
    Point Q{tQ, Frame::primal};
    auto Gm = logdiv::metric_matrix(inst.phi(), 1.0, Q);
    Matrix A0 = random_unit(gen, 2);
    Matrix B0 = logdiv::dual_complement_basis(A0, Gm);

    double s = mag(gen) * (coin(gen) ? 1.0 : -1.0);
    Vector dP = s * B0.col(0);
    shrink_until(dP, Gm.eta, positive);
    double u = mag(gen) * (coin(gen) ? 1.0 : -1.0);
    Vector dR = u * A0.col(0);
    shrink_until(dR, tQ, positive);

    Point P{Gm.eta + dP, Frame::dual};
    Point R{tQ + dR, Frame::primal};
    auto [gap, orth] = logdiv::pythagorean_gap(inst.phi(), 1.0, P, Q, R);
    worst_orth = std::max(worst_orth, std::fabs(orth));
    worst_gap = std::max(worst_gap, std::fabs(gap));
  }
  expect(worst_orth <= 1e-10,
         "constructed triple orthogonality " + fmt(worst_orth));
  expect(worst_gap <= 1e-8, "constructed triple gap " + fmt(worst_gap));

  // Random triples: the gap must track the orthogonality defect.
  int eligible = 0, agree = 0;
  for (int trial = 0; trial < 500; ++trial) {
    Vector tQ = random_interior(gen, 2, 0.7, 1.8);
    Point Q{tQ, Frame::primal};
    auto Gm = logdiv::metric_matrix(inst.phi(), 1.0, Q);
    Vector dP = mag(gen) * random_unit(gen, 2);
    shrink_until(dP, Gm.eta, positive);
    Vector dR = mag(gen) * random_unit(gen, 2);
    shrink_until(dR, tQ, positive);
    Point P{Gm.eta + dP, Frame::dual};
    Point R{tQ + dR, Frame::primal};
    auto [gap, orth] = logdiv::pythagorean_gap(inst.phi(), 1.0, P, Q, R);
    if (std::fabs(orth) > 1e-3) {
      ++eligible;
      expect(std::fabs(gap) > 1e-6,
             "false zero: gap " + fmt(gap) + " at orthogonality " + fmt(orth));
      if ((gap > 0) == (orth > 0)) ++agree;
    }
  }
  expect(eligible >= 100, "only " + std::to_string(eligible) +
                              " triples exceed the orthogonality threshold");
  expect(agree == eligible, std::to_string(eligible - agree) +
                                " sign disagreements out of " +
                                std::to_string(eligible));
}

// ------------------------------------------------------------------
// 6. dual complement

void c06_dual_complement() {
  std::mt19937_64 gen(606);
  DirichletInstance inst(4, 1.0);
  const int d = 3;
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_int_distribution<int> pick_k(1, 2);
  for (int trial = 0; trial < 100; ++trial) {
    Vector theta = random_interior(gen, d, 0.4, 2.2);
    int k = pick_k(gen);
    Matrix raw(d, k);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < k; ++j) raw(i, j) = g(gen);
    Matrix A0 = logdiv::orthonormalize(raw);
    auto Gm = logdiv::metric_matrix(inst.phi(), 1.0, Point{theta, Frame::primal});
    Matrix B0 = logdiv::dual_complement_basis(A0, Gm);
    expect(B0.cols() == d - k, "complement has " + std::to_string(B0.cols()) +
                                   " columns, expected " + std::to_string(d - k));
    double pairing = (A0.transpose() * Gm.G * B0).cwiseAbs().maxCoeff();
    expect(pairing <= 1e-10, "pairing " + fmt(pairing));

    Matrix J = logdiv::transform_jacobian(inst.phi(), 1.0, theta);
    Matrix D(d, d);
    D.leftCols(k) = A0;
    D.rightCols(d - k) = J.inverse() * B0;
    Eigen::JacobiSVD<Matrix> svd(D);
    double cond = svd.singularValues()(0) /
                  svd.singularValues()(svd.singularValues().size() - 1);
    expect(cond < 1e8, "decomposition condition number " + fmt(cond));
  }
}

// ------------------------------------------------------------------
// 7. projection against grid search

void c07_projection_grid() {
  std::mt19937_64 gen(707);
  DirichletInstance inst(3, 1.0);
  std::uniform_real_distribution<double> ub(0.8, 1.3);
  Vector base(2);
  base << ub(gen), ub(gen) + 0.1;
  Vector dir = random_unit(gen, 2);
  AffineSubspace E = logdiv::make_subspace(Frame::primal, base, dir);

  const int grid_n = 100000;
  const double lo = -4.0, hi = 6.0;
  const double step = (hi - lo) / (grid_n - 1);
  for (int trial = 0; trial < 100; ++trial) {
    Vector tP = random_interior(gen, 2, 0.35, 2.4);
    Point P{tP, Frame::primal};

    double best_f = std::numeric_limits<double>::infinity(), best_t = 0;
    for (int i = 0; i < grid_n; ++i) {
      double t = lo + step * i;
      Vector q = base + t * dir;
      if (q.minCoeff() <= 1e-9) continue;
      double f = logdiv::l_alpha_divergence(inst.phi(), 1.0, q, tP);
      if (f < best_f) {
        best_f = f;
        best_t = t;
      }
    }

    auto res = logdiv::dual_project(inst.phi(), 1.0, E, P);
    expect(res.converged, "solver did not converge");
    expect(res.orth_residual <= 1e-8, "residual " + fmt(res.orth_residual));
    expect(std::fabs(res.t[0] - best_t) <= 1.5 * step,
           "solver t " + fmt(res.t[0]) + " vs grid " + fmt(best_t));

    logdiv::ProjectionConfig other;
    other.seed = 911;
    auto res2 = logdiv::dual_project(inst.phi(), 1.0, E, P, other);
    expect(std::fabs(res.t[0] - res2.t[0]) <= 1e-6,
           "multistart disagreement " + fmt(std::fabs(res.t[0] - res2.t[0])));
  }
}

// ------------------------------------------------------------------
// 8. foliation

void c08_foliation() {
  DirichletInstance inst(3, 1.0);
  Vector base(2), dir(2);
  base << 0.85, 1.1;
  dir << 2.0, 1.0;
  dir /= dir.norm();
  AffineSubspace E = logdiv::make_subspace(Frame::primal, base, dir);

  std::vector<Point> points;
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 10; ++j) {
      Vector th(2);
      th << 0.4 + 1.9 * i / 19.0, 0.45 + 1.65 * j / 9.0;
      points.push_back(Point{th, Frame::primal});
    }
  auto leaves = logdiv::leaf_assign(inst.phi(), 1.0, E, points);
  expect(leaves.size() == 200, "wrong result count");

  std::vector<Vector> reps;
  const double tol = 1e-8;
  for (const auto& a : leaves) {
    expect(a.ok, "leaf assignment failed: " + a.error);
    expect(a.membership_residual <= 1e-8,
           "membership residual " + fmt(a.membership_residual));
    // Exactly one representative base may claim this point.
    int claims = 0;
    for (const auto& r : reps)
      if ((r - a.projection.theta).cwiseAbs().maxCoeff() <= 2 * tol) ++claims;
    expect(claims <= 1, "leaf base claimed twice");
    if (claims == 0) reps.push_back(a.projection.theta);
  }
  expect(reps.size() >= 2, "degenerate foliation");
  for (size_t i = 0; i < reps.size(); ++i)
    for (size_t j = i + 1; j < reps.size(); ++j)
      expect((reps[i] - reps[j]).cwiseAbs().maxCoeff() > tol,
             "leaf bases not separated");
}

// ------------------------------------------------------------------
// 9. metric validity

// dL[u:v]/dv with analytic potential derivatives; only the outer
// u-derivative of the oracle is a finite difference.
Vector divergence_v_gradient(const Potential& phi, double alpha, const Vector& u,
                             const Vector& v) {
  Vector g = phi.gradient(v);
  Matrix H = phi.hessian(v);
  Vector diff = u - v;
  double S = 1.0 + alpha * g.dot(diff);
  return (H * diff - g) / S + g;
}

void c09_metric() {
  std::mt19937_64 gen(909);
  DirichletInstance inst(3, 1.0);
  const double h = 1e-5;
  for (int trial = 0; trial < 100; ++trial) {
    Vector theta = random_interior(gen, 2, 0.35, 2.4);
    auto Gm = logdiv::metric_matrix(inst.phi(), 1.0, Point{theta, Frame::primal});
    expect(std::fabs(Gm.Pi - 3.0) <= 1e-12, "Pi deviates: " + fmt(Gm.Pi - 3.0));
    Matrix J = logdiv::transform_jacobian(inst.phi(), 1.0, theta);
    Matrix g = logdiv::pullback_metric(Gm, J);
    expect((g - g.transpose()).cwiseAbs().maxCoeff() <= 1e-8,
           "pullback not symmetric");

    Matrix oracle(2, 2);
    for (int i = 0; i < 2; ++i) {
      Vector up = theta, um = theta;
      up[i] += h;
      um[i] -= h;
      Vector fp = divergence_v_gradient(inst.phi(), 1.0, up, theta);
      Vector fm = divergence_v_gradient(inst.phi(), 1.0, um, theta);
      for (int j = 0; j < 2; ++j) oracle(i, j) = -(fp[j] - fm[j]) / (2 * h);
    }
    double defect = (g - oracle).cwiseAbs().maxCoeff();
    expect(defect <= 1e-8, "oracle defect " + fmt(defect));

    Eigen::SelfAdjointEigenSolver<Matrix> eig(g);
    expect(eig.eigenvalues().minCoeff() > 0.0, "pullback not positive definite");
  }
}

// ------------------------------------------------------------------
// 10. principal subspace recovery

void c10_pca_recovery() {
  std::mt19937_64 gen(1010);
  DirichletInstance inst(3, 1.0);
  Vector base(2), dir(2);
  base << 0.9, 1.3;
  dir << 1.5, -0.4;
  dir /= dir.norm();

  std::uniform_real_distribution<double> ut(-0.7, 0.7);
  Vector conc = Vector::Constant(3, 250.0);
  std::vector<Vector> data;
  for (int i = 0; i < 100; ++i) {
    Vector theta = base + ut(gen) * dir;
    Vector eta = logdiv::legendre_forward(inst.phi(), 1.0, theta);
    Vector p = logdiv::data_to_simplex(eta);
    Vector q = logdiv::sample_perturbation(p, conc, 1, 5000 + i)[0];
    data.push_back(logdiv::simplex_to_data(q));
  }

  logdiv::PcaConfig cfg;
  cfg.k = 1;
  cfg.n_restarts = 2;
  cfg.seed = 7;
  auto fit = logdiv::pca_fit(inst.phi(), 1.0, data, cfg);
  expect(fit.converged, "fit did not converge");
  for (size_t i = 1; i < fit.trace.size(); ++i)
    expect(fit.trace[i] <= fit.trace[i - 1] + 1e-12,
           "trace increases at step " + std::to_string(i));

  double cosv = std::min(1.0, std::fabs(fit.subspace.basis.col(0).dot(dir)));
  double angle = std::acos(cosv) * 180.0 / std::acos(-1.0);
  expect(angle <= 5.0, "principal angle " + fmt(angle) + " degrees");

  AffineSubspace truth = logdiv::make_subspace(Frame::primal, base, dir);
  double truth_obj = logdiv::pca_objective(inst.phi(), 1.0, truth, data);
  expect(fit.objective <= truth_obj + 1e-10,
         "objective " + fmt(fit.objective) + " above truth " + fmt(truth_obj));
}

// ------------------------------------------------------------------
// CLI plumbing for 11 and 12

std::string cli_bin() {
  const char* p = std::getenv("LOGDIV_CLI_BIN");
  expect(p != nullptr, "LOGDIV_CLI_BIN is not set");
  return p;
}

std::string scratch_dir() {
  const char* p = std::getenv("LOGDIV_TEST_TMP");
  expect(p != nullptr, "LOGDIV_TEST_TMP is not set");
  std::filesystem::create_directories(p);
  return p;
}

void run_cli(const std::string& args) {
  std::string cmd = "\"" + cli_bin() + "\" " + args + " > \"" + scratch_dir() +
                    "/cli.log\" 2>&1";
  int st = std::system(cmd.c_str());
  expect(st != -1 && WIFEXITED(st) && WEXITSTATUS(st) == 0,
         "command failed: " + args);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  expect(in.good(), "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  int col(const std::string& name) const {
    for (size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    throw std::runtime_error("no column " + name);
  }
};

Table read_table(const std::string& path) {
  Table t;
  std::istringstream in(slurp(path));
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
      if (c == ',') {
        cells.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    cells.push_back(cur);
    if (!have_header) {
      t.header = cells;
      have_header = true;
    } else {
      std::vector<double> row;
      for (const auto& c : cells)
        row.push_back(c.empty() ? std::nan("") : std::stod(c));
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

struct Segment {
  double x1, y1, x2, y2;
};

double attr(const std::string& text, size_t& pos, const char* name) {
  std::string key = std::string(name) + "=\"";
  size_t a = text.find(key, pos);
  expect(a != std::string::npos, std::string("missing attribute ") + name);
  a += key.size();
  size_t b = text.find('"', a);
  pos = b;
  return std::stod(text.substr(a, b - a));
}

std::vector<Segment> geodesic_segments(const std::string& svg) {
  size_t g = svg.find("id=\"geodesics\"");
  expect(g != std::string::npos, "no geodesics group");
  size_t end = svg.find("</g>", g);
  std::vector<Segment> segs;
  size_t pos = g;
  while (true) {
    size_t l = svg.find("<line ", pos);
    if (l == std::string::npos || l > end) break;
    size_t p = l;
    Segment s{};
    s.x1 = attr(svg, p, "x1");
    s.y1 = attr(svg, p, "y1");
    s.x2 = attr(svg, p, "x2");
    s.y2 = attr(svg, p, "y2");
    segs.push_back(s);
    pos = p;
  }
  return segs;
}

std::array<double, 2> embed(const Vector& p) {
  return {p[1] + 0.5 * p[2], std::sqrt(3.0) / 2.0 * p[2]};
}

std::array<double, 2> pixel(const std::array<double, 2>& xy) {
  return {60.0 + 600.0 * xy[0], 630.0 - 600.0 * xy[1]};
}

struct CliRun {
  std::string sim, fol, svg_fol, fit_prefix, svg_fit, div_in, div_out;
  std::string sim_cmd, fol_cmd, pca_cmd, div_cmd;
};

CliRun cli_commands() {
  CliRun r;
  std::string dirp = scratch_dir();
  r.sim = dirp + "/acc_sim.csv";
  r.fol = dirp + "/acc_fol.csv";
  r.svg_fol = dirp + "/acc_fol.svg";
  r.fit_prefix = dirp + "/acc_fit";
  r.svg_fit = dirp + "/acc_fit.svg";
  r.div_in = dirp + "/acc_div_in.csv";
  r.div_out = dirp + "/acc_div_out.csv";
  r.sim_cmd =
      "simulate --count 30 --seed 21 --concentration 120 "
      "--theta0 0.85,1.1 --theta1 1.35,1.35 --output \"" +
      r.sim + "\"";
  r.fol_cmd = "foliate --input \"" + r.sim +
              "\" --theta0 0.85,1.1 --theta1 1.35,1.35 --svg \"" + r.svg_fol +
              "\" --output \"" + r.fol + "\"";
  r.pca_cmd = "pca --input \"" + r.sim + "\" --output \"" + r.fit_prefix +
              "\" --k 1 --restarts 2 --seed 6 --baseline aitchison --svg \"" +
              r.svg_fit + "\"";
  r.div_cmd = "divergence --input \"" + r.div_in + "\" --output \"" + r.div_out +
              "\"";
  return r;
}

// ------------------------------------------------------------------
// 11. figure geometry

void c11_figure_geometry() {
  CliRun r = cli_commands();
  run_cli(r.sim_cmd);
  run_cli(r.fol_cmd);
  run_cli(r.pca_cmd);

  Table fol = read_table(r.fol);
  expect(fol.rows.size() == 30, "foliate row count");
  for (const auto& row : fol.rows) {
    expect(row[fol.col("status")] == 0.0, "projection failed");
    expect(row[fol.col("orth_residual")] <= 1e-8, "orthogonality residual");
  }

  std::string svg = slurp(r.svg_fol);
  auto segs = geodesic_segments(svg);
  expect(segs.size() == 30, "expected 30 geodesic segments, found " +
                                std::to_string(segs.size()));

  for (size_t i = 0; i < segs.size(); ++i) {
    const auto& row = fol.rows[i];
    Vector p(3), q(3);
    p << row[fol.col("p1")], row[fol.col("p2")], row[fol.col("p3")];
    q << row[fol.col("proj_p1")], row[fol.col("proj_p2")],
        row[fol.col("proj_p3")];

    // Endpoints are the embedded data point and its projection.
    auto a = pixel(embed(p)), b = pixel(embed(q));
    expect(std::fabs(segs[i].x1 - a[0]) <= 1e-9 &&
               std::fabs(segs[i].y1 - a[1]) <= 1e-9,
           "segment " + std::to_string(i) + " start is not the data point");
    expect(std::fabs(segs[i].x2 - b[0]) <= 1e-9 &&
               std::fabs(segs[i].y2 - b[1]) <= 1e-9,
           "segment " + std::to_string(i) + " end is not the projection");

    // The segment coincides with the dual geodesic: its midpoint in dual
    // coordinates lands on the straight chord in simplex coordinates.
    Vector ep = logdiv::simplex_to_data(p), eq = logdiv::simplex_to_data(q);
    Vector mid = logdiv::data_to_simplex(0.5 * (ep + eq));
    auto A = embed(p), B = embed(q), C = embed(mid);
    double bx = B[0] - A[0], by = B[1] - A[1];
    double cx = C[0] - A[0], cy = C[1] - A[1];
    double len = std::sqrt(bx * bx + by * by);
    if (len > 1e-9) {
      double dist = std::fabs(bx * cy - by * cx) / len;
      expect(dist <= 1e-8, "segment " + std::to_string(i) +
                               " strays from the dual geodesic by " + fmt(dist));
    }
  }

  std::string fit_svg = slurp(r.svg_fit);
  expect(fit_svg.find("id=\"baseline\"") != std::string::npos,
         "no baseline group");
  size_t bg = fit_svg.find("id=\"baseline\"");
  size_t bend = fit_svg.find("</g>", bg);
  expect(fit_svg.find("#d62728", bg) < bend, "baseline curve missing");
}

// ------------------------------------------------------------------
// 12. determinism

void c12_determinism() {
  CliRun r = cli_commands();
  std::ofstream(r.div_in) << "p1,p2,p3,q1,q2,q3\n"
                             "0.5,0.25,0.25,0.2,0.5,0.3\n"
                             "0.1,0.6,0.3,0.3,0.3,0.4\n";

  std::vector<std::string> cmds = {r.sim_cmd, r.fol_cmd, r.pca_cmd, r.div_cmd};
  std::vector<std::string> files = {r.sim,
                                    r.sim + ".truth",
                                    r.fol,
                                    r.fit_prefix + "_points.csv",
                                    r.fit_prefix + "_trace.csv",
                                    r.fit_prefix + "_summary.csv",
                                    r.fit_prefix + "_baseline.csv",
                                    r.div_out};
  for (const auto& c : cmds) run_cli(c);
  std::vector<std::string> first;
  for (const auto& f : files) first.push_back(slurp(f));
  for (const auto& c : cmds) run_cli(c);
  for (size_t i = 0; i < files.size(); ++i)
    expect(slurp(files[i]) == first[i], files[i] + " changed between runs");
}

}  // namespace

int main() {
  struct Criterion {
    const char* label;
    std::function<void()> run;
  };
  const Criterion criteria[] = {
      {"01 cost identity across simplex dimensions", c01_cost_identity},
      {"02 coordinate transform round trips", c02_round_trips},
      {"03 self-dual divergence expression", c03_self_dual},
      {"04 Bregman limit scaling", c04_bregman_limit},
      {"05 Pythagorean identity and defect tracking", c05_pythagorean},
      {"06 dual complement construction", c06_dual_complement},
      {"07 dual projection against grid search", c07_projection_grid},
      {"08 foliation leaf assignment", c08_foliation},
      {"09 metric validity", c09_metric},
      {"10 principal subspace recovery", c10_pca_recovery},
      {"11 figure output geometry", c11_figure_geometry},
      {"12 byte-for-byte determinism", c12_determinism},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    try {
      c.run();
      std::printf("[PASS] %s\n", c.label);
    } catch (const std::exception& e) {
      ++failed;
      std::printf("[FAIL] %s: %s\n", c.label, e.what());
    }
    std::fflush(stdout);
  }
  if (failed) std::printf("%d of 12 criteria failed\n", failed);
  return failed;
}
