// logdiv command line: divergence tables, dual-foliation runs, PCA fits and
// synthetic data on the simplex.  Links the C API only.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "config.hpp"
#include "csv.hpp"
#include "logdiv/logdiv.h"
#include "svg.hpp"

namespace {

// Process exit codes; parse covers CLI/CSV/config problems.
constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitDomain = 3;
constexpr int kExitConvergence = 4;

struct CliError : std::runtime_error {
  int exit_code;
  CliError(int code, const std::string& msg)
      : std::runtime_error(msg), exit_code(code) {}
};

int exit_code_for(int rc) {
  switch (rc) {
    case LOGDIV_ERR_DOMAIN:
    case LOGDIV_ERR_SINGULAR:
    case LOGDIV_ERR_GEOMETRY:
      return kExitDomain;
    case LOGDIV_ERR_CONVERGENCE:
    case LOGDIV_ERR_BOUNDARY:
      return kExitConvergence;
    default:
      return kExitParse;
  }
}

void check(int rc, const std::string& what) {
  if (rc == LOGDIV_OK) return;
  throw CliError(exit_code_for(rc), what + ": " + logdiv_last_error());
}

struct InstanceDeleter {
  void operator()(logdiv_instance* p) const { logdiv_instance_free(p); }
};
using Instance = std::unique_ptr<logdiv_instance, InstanceDeleter>;

struct SubspaceDeleter {
  void operator()(logdiv_subspace* p) const { logdiv_subspace_free(p); }
};
using Subspace = std::unique_ptr<logdiv_subspace, SubspaceDeleter>;

struct FitDeleter {
  void operator()(logdiv_pca_fit* p) const { logdiv_pca_fit_free(p); }
};
using Fit = std::unique_ptr<logdiv_pca_fit, FitDeleter>;

bool is_dirichlet_spec(const std::string& spec) {
  return spec.rfind("dirichlet", 0) == 0;
}

Instance make_instance(const std::string& spec, double alpha) {
  size_t colon = spec.find(':');
  std::string name = spec.substr(0, colon);
  int arg = 0;
  if (colon != std::string::npos) {
    try {
      arg = std::stoi(spec.substr(colon + 1));
    } catch (const std::exception&) {
      throw CliError(kExitParse, "bad instance argument in '" + spec + "'");
    }
  }
  logdiv_instance* raw = nullptr;
  int rc;
  if (name == "dirichlet") {
    rc = logdiv_instance_create_dirichlet(colon == std::string::npos ? 3 : arg,
                                          alpha, &raw);
  } else if (name == "perturbed") {
    rc = logdiv_instance_create_perturbed(colon == std::string::npos ? 2 : arg,
                                          alpha, &raw);
  } else {
    throw CliError(kExitParse, "unknown instance '" + spec +
                                   "' (expected dirichlet:<n> or perturbed:<d>)");
  }
  check(rc, "instance '" + spec + "'");
  return Instance(raw);
}

std::vector<double> parse_vector(const std::string& text, const char* what) {
  std::vector<double> out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty())
      throw CliError(kExitParse, std::string(what) + ": empty component");
    try {
      size_t used = 0;
      out.push_back(std::stod(cur, &used));
      if (used != cur.size()) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      throw CliError(kExitParse,
                     std::string(what) + ": cannot parse '" + cur + "'");
    }
    cur.clear();
  };
  for (char c : text) {
    if (c == ',')
      flush();
    else if (!std::isspace(static_cast<unsigned char>(c)))
      cur.push_back(c);
  }
  flush();
  return out;
}

std::pair<double, double> parse_range(const std::string& text) {
  size_t colon = text.find(':');
  if (colon == std::string::npos)
    throw CliError(kExitParse, "--t-range expects lo:hi, got '" + text + "'");
  auto lo = parse_vector(text.substr(0, colon), "--t-range");
  auto hi = parse_vector(text.substr(colon + 1), "--t-range");
  if (lo.size() != 1 || hi.size() != 1 || lo[0] >= hi[0])
    throw CliError(kExitParse, "--t-range expects lo < hi");
  return {lo[0], hi[0]};
}

// Modified Gram-Schmidt; directions are rows, result is column-major d*k.
std::vector<double> orthonormal_columns(int d,
                                        std::vector<std::vector<double>> dirs) {
  std::vector<double> cols;
  for (auto& v : dirs) {
    if (static_cast<int>(v.size()) != d)
      throw CliError(kExitParse, "basis direction has wrong dimension");
    int k = static_cast<int>(cols.size()) / d;
    for (int j = 0; j < k; ++j) {
      double dot = 0;
      for (int i = 0; i < d; ++i) dot += cols[j * d + i] * v[i];
      for (int i = 0; i < d; ++i) v[i] -= dot * cols[j * d + i];
    }
    double norm = 0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm < 1e-10)
      throw CliError(kExitParse, "basis directions are linearly dependent");
    for (int i = 0; i < d; ++i) cols.push_back(v[i] / norm);
  }
  return cols;
}

struct SubspaceSpec {
  std::vector<double> base;
  std::vector<double> basis;  // column-major d*k
  int k = 0;
};

// File layout: header x1..xd, first row the base point, following rows the
// spanning directions.  Alternatively two primal points give a line.
SubspaceSpec load_subspace_spec(int d, const std::string& file,
                                const std::string& theta0,
                                const std::string& theta1) {
  SubspaceSpec s;
  if (!file.empty()) {
    cli::CsvTable t = cli::read_csv(file);
    if (t.series_length("x") != d)
      throw CliError(kExitParse, "subspace file '" + file + "' needs columns x1..x" +
                                     std::to_string(d));
    if (t.rows.size() < 2)
      throw CliError(kExitParse,
                     "subspace file '" + file + "' needs a base row and at least one direction row");
    s.base = t.rows[0];
    std::vector<std::vector<double>> dirs(t.rows.begin() + 1, t.rows.end());
    s.basis = orthonormal_columns(d, dirs);
    s.k = static_cast<int>(dirs.size());
    return s;
  }
  if (theta0.empty() || theta1.empty())
    throw CliError(kExitParse,
                   "need --subspace-file, or both --theta0 and --theta1");
  s.base = parse_vector(theta0, "--theta0");
  auto p1 = parse_vector(theta1, "--theta1");
  if (static_cast<int>(s.base.size()) != d || static_cast<int>(p1.size()) != d)
    throw CliError(kExitParse, "--theta0/--theta1 must have dimension " +
                                   std::to_string(d));
  std::vector<double> dir(d);
  for (int i = 0; i < d; ++i) dir[i] = p1[i] - s.base[i];
  s.basis = orthonormal_columns(d, {dir});
  s.k = 1;
  return s;
}

Subspace make_subspace(int frame, int d, const SubspaceSpec& s) {
  logdiv_subspace* raw = nullptr;
  check(logdiv_subspace_create(frame, d, s.k, s.base.data(), s.basis.data(), &raw),
        "subspace");
  return Subspace(raw);
}

// Eigenvalues of a small symmetric matrix (row-major k*k) by cyclic Jacobi.
std::vector<double> sym_eigenvalues(int k, std::vector<double> S) {
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (int p = 0; p < k; ++p)
      for (int q = p + 1; q < k; ++q) off = std::max(off, std::fabs(S[p * k + q]));
    if (off < 1e-14) break;
    for (int p = 0; p < k; ++p)
      for (int q = p + 1; q < k; ++q) {
        double apq = S[p * k + q];
        if (std::fabs(apq) < 1e-18) continue;
        double app = S[p * k + p], aqq = S[q * k + q];
        double phi = 0.5 * std::atan2(2 * apq, aqq - app);
        double c = std::cos(phi), s = std::sin(phi);
        for (int i = 0; i < k; ++i) {
          double aip = S[i * k + p], aiq = S[i * k + q];
          S[i * k + p] = c * aip - s * aiq;
          S[i * k + q] = s * aip + c * aiq;
        }
        for (int i = 0; i < k; ++i) {
          double api = S[p * k + i], aqi = S[q * k + i];
          S[p * k + i] = c * api - s * aqi;
          S[q * k + i] = s * api + c * aqi;
        }
      }
  }
  std::vector<double> eig(k);
  for (int i = 0; i < k; ++i) eig[i] = S[i * k + i];
  return eig;
}

// Largest principal angle between two orthonormal d*k column packs.
double principal_angle_deg(int d, int k, const std::vector<double>& B1,
                           const std::vector<double>& B2) {
  std::vector<double> M(k * k, 0.0);  // M = B1' B2
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      double dot = 0;
      for (int i = 0; i < d; ++i) dot += B1[a * d + i] * B2[b * d + i];
      M[a * k + b] = dot;
    }
  std::vector<double> S(k * k, 0.0);  // M' M
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      double dot = 0;
      for (int c = 0; c < k; ++c) dot += M[c * k + a] * M[c * k + b];
      S[a * k + b] = dot;
    }
  auto eig = sym_eigenvalues(k, S);
  double min_sq = 1.0;
  for (double e : eig) min_sq = std::min(min_sq, e);
  double cosv = std::sqrt(std::max(0.0, std::min(1.0, min_sq)));
  return std::acos(cosv) * 180.0 / M_PI;
}

std::vector<std::string> provenance(const cli::RunConfig& cfg) {
  std::vector<std::string> c;
  c.push_back(std::string("# logdiv_version ") + logdiv_version());
  c.push_back("# config_hash " + cfg.hash());
  for (const auto& kv : cfg.entries())
    c.push_back("# cfg " + kv.first + "=" + kv.second);
  return c;
}

void maybe_emit_config(const cli::RunConfig& cfg, const std::string& path) {
  if (!path.empty()) cfg.save(path);
}

// ------------------------------------------------------------------
// Data ingestion

struct Dataset {
  bool simplex = false;                   // rows were p1..pn
  std::vector<std::vector<double>> raw;   // original payload per row
  std::vector<std::vector<double>> etas;  // dual coordinates
  std::vector<std::vector<double>> thetas;
};

// Accepts simplex rows p1..pn (Dirichlet instances) or dual rows y1..yd.
Dataset load_points(const cli::CsvTable& t, logdiv_instance* inst,
                    const std::string& instance_spec, const std::string& format) {
  int d = 0;
  check(logdiv_instance_dim(inst, &d), "instance");
  int n = d + 1;
  Dataset ds;
  bool want_simplex;
  if (format == "simplex")
    want_simplex = true;
  else if (format == "dual")
    want_simplex = false;
  else if (t.has_column("p1"))
    want_simplex = true;
  else if (t.has_column("y1"))
    want_simplex = false;
  else
    throw CliError(kExitParse,
                   "input needs columns p1..pn (simplex) or y1..yd (dual)");
  ds.simplex = want_simplex;
  if (want_simplex && !is_dirichlet_spec(instance_spec))
    throw CliError(kExitParse, "simplex input requires a dirichlet instance");
  if (want_simplex && t.series_length("p") != n)
    throw CliError(kExitParse, "expected simplex columns p1..p" + std::to_string(n));
  if (!want_simplex && t.series_length("y") != d)
    throw CliError(kExitParse, "expected dual columns y1..y" + std::to_string(d));
  int p0 = want_simplex ? t.column("p1") : t.column("y1");
  for (size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    std::vector<double> y(d), theta(d);
    std::vector<double> payload;
    if (want_simplex) {
      payload.assign(row.begin() + p0, row.begin() + p0 + n);
      int rc = logdiv_simplex_to_data(n, payload.data(), y.data());
      if (rc != LOGDIV_OK)
        throw CliError(kExitDomain, "data row " + std::to_string(r + 1) + ": " +
                                        logdiv_last_error());
    } else {
      payload.assign(row.begin() + p0, row.begin() + p0 + d);
      y = payload;
    }
    int rc = logdiv_to_primal(inst, y.data(), nullptr, theta.data());
    if (rc != LOGDIV_OK)
      throw CliError(exit_code_for(rc), "data row " + std::to_string(r + 1) +
                                            ": " + logdiv_last_error());
    ds.raw.push_back(std::move(payload));
    ds.etas.push_back(std::move(y));
    ds.thetas.push_back(std::move(theta));
  }
  return ds;
}

std::vector<std::string> point_header(const std::string& prefix, int count) {
  std::vector<std::string> h;
  for (int i = 1; i <= count; ++i) h.push_back(prefix + std::to_string(i));
  return h;
}

std::array<double, 3> to_simplex3(logdiv_instance* inst, const double* eta) {
  (void)inst;
  std::array<double, 3> p;
  check(logdiv_data_to_simplex(3, eta, p.data()), "simplex conversion");
  return p;
}

// Samples the image of a primal line t -> T(base + t*dir) as 3-part
// compositions, skipping parameters that leave the domain.
std::vector<std::array<double, 3>> sample_curve3(logdiv_instance* inst,
                                                 const std::vector<double>& base,
                                                 const std::vector<double>& dir,
                                                 double tlo, double thi,
                                                 int samples) {
  std::vector<std::array<double, 3>> out;
  int d = static_cast<int>(base.size());
  std::vector<double> theta(d), eta(d);
  for (int s = 0; s < samples; ++s) {
    double t = tlo + (thi - tlo) * s / (samples - 1.0);
    for (int i = 0; i < d; ++i) theta[i] = base[i] + t * dir[i];
    if (logdiv_to_dual(inst, theta.data(), eta.data()) != LOGDIV_OK) continue;
    out.push_back(to_simplex3(inst, eta.data()));
  }
  return out;
}

// ------------------------------------------------------------------
// divergence

struct DivergenceOpts {
  std::string instance = "dirichlet:3";
  double alpha = 1.0;
  std::string input, output, emit_config;
};

void run_divergence(const DivergenceOpts& o) {
  Instance inst = make_instance(o.instance, o.alpha);
  int d = 0;
  check(logdiv_instance_dim(inst.get(), &d), "instance");
  int n = d + 1;
  cli::CsvTable t = cli::read_csv(o.input);

  bool simplex = t.has_column("p1");
  int width = simplex ? n : d;
  const char* first = simplex ? "p" : "a";
  const char* second = simplex ? "q" : "b";
  const char* third = simplex ? "r" : "c";
  if (simplex && !is_dirichlet_spec(o.instance))
    throw CliError(kExitParse, "simplex pair columns need a dirichlet instance");
  if (t.series_length(first) != width || t.series_length(second) != width)
    throw CliError(kExitParse,
                   std::string("expected pair columns ") + first + "1.." + first +
                       std::to_string(width) + " and " + second + "1..");
  bool have_triple = t.series_length(third) == width;
  int c0 = t.column(std::string(first) + "1");
  int c1 = t.column(std::string(second) + "1");
  int c2 = have_triple ? t.column(std::string(third) + "1") : -1;

  // A block of columns -> primal coordinates; returns a library code.
  auto to_theta = [&](const std::vector<double>& row, int start,
                      std::vector<double>& theta) -> int {
    std::vector<double> y(d);
    if (simplex) {
      int rc = logdiv_simplex_to_data(n, row.data() + start, y.data());
      if (rc != LOGDIV_OK) return rc;
      return logdiv_to_primal(inst.get(), y.data(), nullptr, theta.data());
    }
    theta.assign(row.begin() + start, row.begin() + start + d);
    return LOGDIV_OK;
  };

  std::vector<std::string> header = {"id", "D_forward", "D_backward"};
  if (have_triple) header.push_back("pythag_gap");
  header.push_back("status");
  std::vector<std::vector<double>> rows;
  const double nan = std::nan("");
  for (size_t r = 0; r < t.rows.size(); ++r) {
    std::vector<double> tp(d), tq(d), tr(d);
    double df = nan, db = nan, gap = nan;
    int rc = to_theta(t.rows[r], c0, tp);
    if (rc == LOGDIV_OK) rc = to_theta(t.rows[r], c1, tq);
    if (rc == LOGDIV_OK && have_triple) rc = to_theta(t.rows[r], c2, tr);
    if (rc == LOGDIV_OK)
      rc = logdiv_divergence(inst.get(), tp.data(), tq.data(), &df);
    if (rc == LOGDIV_OK)
      rc = logdiv_divergence(inst.get(), tq.data(), tp.data(), &db);
    if (rc == LOGDIV_OK && have_triple) {
      double orth = 0;
      rc = logdiv_pythagorean(inst.get(), tp.data(), tq.data(), tr.data(), &gap,
                              &orth);
    }
    std::vector<double> out = {static_cast<double>(r + 1), df, db};
    if (have_triple) out.push_back(gap);
    out.push_back(static_cast<double>(rc));
    rows.push_back(std::move(out));
  }

  cli::RunConfig cfg;
  cfg.set("instance", o.instance);
  cfg.set_double("alpha", o.alpha);
  cfg.set("input", o.input);
  cfg.set("output", o.output);
  cli::write_csv(o.output, provenance(cfg), header, rows);
  maybe_emit_config(cfg, o.emit_config);
}

// ------------------------------------------------------------------
// foliate

struct FoliateOpts {
  std::string instance = "dirichlet:3";
  double alpha = 1.0;
  std::string input, output, emit_config, svg;
  std::string subspace_file, theta0, theta1, format = "auto";
  unsigned long long seed = 0;
  double tol_inner = 1e-10;
};

void run_foliate(const FoliateOpts& o) {
  Instance inst = make_instance(o.instance, o.alpha);
  int d = 0;
  check(logdiv_instance_dim(inst.get(), &d), "instance");
  int n = d + 1;

  cli::CsvTable t = cli::read_csv(o.input);
  Dataset ds = load_points(t, inst.get(), o.instance, o.format);
  int count = static_cast<int>(ds.thetas.size());

  SubspaceSpec spec =
      load_subspace_spec(d, o.subspace_file, o.theta0, o.theta1);
  Subspace sub = make_subspace(LOGDIV_FRAME_PRIMAL, d, spec);
  int k = spec.k;

  logdiv_proj_config pc;
  check(logdiv_proj_config_default(&pc), "config");
  pc.grad_tol = o.tol_inner;
  pc.seed = o.seed;

  std::vector<double> thetas(static_cast<size_t>(count) * d);
  for (int i = 0; i < count; ++i)
    std::copy(ds.thetas[i].begin(), ds.thetas[i].end(), thetas.begin() + i * d);
  std::vector<double> bases_theta(thetas.size()), bases_eta(thetas.size());
  std::vector<double> div(count), orth(count), member(count);
  std::vector<int> status(count);
  check(logdiv_leaf_assign(inst.get(), sub.get(), count, thetas.data(), &pc,
                           bases_theta.data(), bases_eta.data(), div.data(),
                           orth.data(), member.data(), status.data()),
        "foliate");

  // Integer leaf labels: points whose projections coincide share a leaf.
  std::vector<int> leaf_id(count, -1);
  std::vector<std::vector<double>> leaders;
  for (int i = 0; i < count; ++i) {
    if (status[i] != LOGDIV_OK) continue;
    std::vector<double> b(bases_theta.begin() + i * d,
                          bases_theta.begin() + (i + 1) * d);
    int found = -1;
    for (size_t l = 0; l < leaders.size(); ++l) {
      double dist = 0, scale = 1;
      for (int j = 0; j < d; ++j) {
        dist = std::max(dist, std::fabs(leaders[l][j] - b[j]));
        scale = std::max(scale, std::fabs(leaders[l][j]));
      }
      if (dist <= 1e-8 * scale) {
        found = static_cast<int>(l);
        break;
      }
    }
    if (found < 0) {
      leaders.push_back(b);
      found = static_cast<int>(leaders.size()) - 1;
    }
    leaf_id[i] = found;
  }

  // Leaf coordinates t = B'(theta* - base) for reporting and curve range.
  std::vector<std::vector<double>> leaf_t(count, std::vector<double>(k, 0.0));
  for (int i = 0; i < count; ++i) {
    if (status[i] != LOGDIV_OK) continue;
    for (int j = 0; j < k; ++j) {
      double dot = 0;
      for (int a = 0; a < d; ++a)
        dot += spec.basis[j * d + a] * (bases_theta[i * d + a] - spec.base[a]);
      leaf_t[i][j] = dot;
    }
  }

  const double nan = std::nan("");
  std::vector<std::string> header = {"id"};
  auto in_cols = point_header(ds.simplex ? "p" : "y", ds.simplex ? n : d);
  header.insert(header.end(), in_cols.begin(), in_cols.end());
  auto proj_cols = point_header(ds.simplex ? "proj_p" : "proj_y",
                                ds.simplex ? n : d);
  header.insert(header.end(), proj_cols.begin(), proj_cols.end());
  header.push_back("leaf_id");
  for (int j = 1; j <= k; ++j) header.push_back("t" + std::to_string(j));
  header.push_back("divergence");
  header.push_back("orth_residual");
  header.push_back("membership_residual");
  header.push_back("status");

  std::vector<std::vector<double>> rows;
  std::vector<std::array<double, 3>> svg_data, svg_proj;
  for (int i = 0; i < count; ++i) {
    std::vector<double> row = {static_cast<double>(i + 1)};
    row.insert(row.end(), ds.raw[i].begin(), ds.raw[i].end());
    bool ok = status[i] == LOGDIV_OK;
    std::vector<double> proj(ds.simplex ? n : d, nan);
    if (ok) {
      if (ds.simplex)
        check(logdiv_data_to_simplex(n, bases_eta.data() + i * d, proj.data()),
              "projection output");
      else
        proj.assign(bases_eta.begin() + i * d, bases_eta.begin() + (i + 1) * d);
    }
    row.insert(row.end(), proj.begin(), proj.end());
    row.push_back(ok ? leaf_id[i] : nan);
    for (int j = 0; j < k; ++j) row.push_back(ok ? leaf_t[i][j] : nan);
    row.push_back(ok ? div[i] : nan);
    row.push_back(ok ? orth[i] : nan);
    row.push_back(ok ? member[i] : nan);
    row.push_back(static_cast<double>(status[i]));
    rows.push_back(std::move(row));
    if (ok && n == 3 && ds.simplex) {
      svg_data.push_back({ds.raw[i][0], ds.raw[i][1], ds.raw[i][2]});
      svg_proj.push_back({proj[0], proj[1], proj[2]});
    }
  }

  cli::RunConfig cfg;
  cfg.set("instance", o.instance);
  cfg.set_double("alpha", o.alpha);
  cfg.set("input", o.input);
  cfg.set("output", o.output);
  if (!o.subspace_file.empty()) cfg.set("subspace-file", o.subspace_file);
  if (!o.theta0.empty()) cfg.set("theta0", o.theta0);
  if (!o.theta1.empty()) cfg.set("theta1", o.theta1);
  cfg.set_int("seed", static_cast<long long>(o.seed));
  cfg.set_double("tol-inner", o.tol_inner);
  if (!o.svg.empty()) cfg.set("svg", o.svg);
  cli::write_csv(o.output, provenance(cfg), header, rows);

  if (!o.svg.empty()) {
    if (n != 3 || !ds.simplex || k != 1)
      throw CliError(kExitParse,
                     "--svg needs 3-part simplex input and a k=1 subspace");
    double tlo = 0, thi = 0;
    bool any = false;
    for (int i = 0; i < count; ++i) {
      if (status[i] != LOGDIV_OK) continue;
      tlo = any ? std::min(tlo, leaf_t[i][0]) : leaf_t[i][0];
      thi = any ? std::max(thi, leaf_t[i][0]) : leaf_t[i][0];
      any = true;
    }
    double pad = any && thi > tlo ? 0.1 * (thi - tlo) : 0.5;
    std::vector<double> dir(spec.basis.begin(), spec.basis.begin() + d);
    cli::SimplexPlot plot;
    plot.data = svg_data;
    plot.projections = svg_proj;
    plot.curve = sample_curve3(inst.get(), spec.base, dir, tlo - pad, thi + pad,
                               200);
    plot.comments = {std::string("logdiv_version ") + logdiv_version(),
                     "config_hash " + cfg.hash()};
    cli::write_simplex_plot(o.svg, plot);
  }
  maybe_emit_config(cfg, o.emit_config);
}

// ------------------------------------------------------------------
// pca

struct PcaOpts {
  std::string instance = "dirichlet:3";
  double alpha = 1.0;
  std::string input, output, emit_config, svg, baseline, truth;
  std::string format = "auto";
  int k = 1;
  int restarts = 5;
  int max_outer = 200;
  unsigned long long seed = 0;
  double tol_inner = 1e-8;
  double tol_outer = 1e-9;
};

void run_pca(const PcaOpts& o) {
  if (!o.baseline.empty() && o.baseline != "aitchison")
    throw CliError(kExitParse, "--baseline supports only 'aitchison'");
  Instance inst = make_instance(o.instance, o.alpha);
  int d = 0;
  check(logdiv_instance_dim(inst.get(), &d), "instance");
  int n = d + 1;

  cli::CsvTable t = cli::read_csv(o.input);
  Dataset ds = load_points(t, inst.get(), o.instance, o.format);
  int count = static_cast<int>(ds.etas.size());
  if (count == 0) throw CliError(kExitParse, "input has no data rows");

  std::vector<double> data(static_cast<size_t>(count) * d);
  for (int i = 0; i < count; ++i)
    std::copy(ds.etas[i].begin(), ds.etas[i].end(), data.begin() + i * d);

  logdiv_pca_config pcfg;
  check(logdiv_pca_config_default(&pcfg), "config");
  pcfg.k = o.k;
  pcfg.max_outer = o.max_outer;
  pcfg.tol_inner = o.tol_inner;
  pcfg.tol_outer = o.tol_outer;
  pcfg.n_restarts = o.restarts;
  pcfg.seed = o.seed;

  logdiv_pca_fit* raw_fit = nullptr;
  check(logdiv_pca_run(inst.get(), count, data.data(), &pcfg, &raw_fit), "pca");
  Fit fit(raw_fit);

  double objective = 0;
  int converged = 0, trace_len = 0, near_tie = 0;
  check(logdiv_pca_summary(fit.get(), &objective, &converged, &trace_len,
                           &near_tie),
        "pca summary");
  std::vector<double> trace(std::max(trace_len, 1));
  int full_len = 0;
  check(logdiv_pca_trace(fit.get(), trace_len, trace.data(), &full_len),
        "pca trace");
  trace.resize(full_len);

  logdiv_subspace* raw_sub = nullptr;
  check(logdiv_pca_subspace(fit.get(), &raw_sub), "pca subspace");
  Subspace sub(raw_sub);
  std::vector<double> base(d), basis(static_cast<size_t>(d) * o.k);
  check(logdiv_subspace_base(sub.get(), base.data()), "subspace base");
  check(logdiv_subspace_basis(sub.get(), basis.data()), "subspace basis");

  cli::RunConfig cfg;
  cfg.set("instance", o.instance);
  cfg.set_double("alpha", o.alpha);
  cfg.set("input", o.input);
  cfg.set("output", o.output);
  cfg.set_int("k", o.k);
  cfg.set_int("restarts", o.restarts);
  cfg.set_int("max-outer", o.max_outer);
  cfg.set_int("seed", static_cast<long long>(o.seed));
  cfg.set_double("tol-inner", o.tol_inner);
  cfg.set_double("tol-outer", o.tol_outer);
  if (!o.baseline.empty()) cfg.set("baseline", o.baseline);
  if (!o.truth.empty()) cfg.set("truth", o.truth);
  if (!o.svg.empty()) cfg.set("svg", o.svg);
  auto comments = provenance(cfg);

  // Per-point projections.
  std::vector<std::vector<double>> pts_rows;
  std::vector<double> theta(d), eta(d), tpar(o.k);
  std::vector<std::array<double, 3>> svg_data, svg_proj;
  std::vector<double> tmin(o.k, 0), tmax(o.k, 0);
  for (int i = 0; i < count; ++i) {
    double div = 0;
    check(logdiv_pca_point(fit.get(), i, theta.data(), eta.data(), tpar.data(),
                           &div),
          "pca point");
    std::vector<double> row = {static_cast<double>(i + 1)};
    row.insert(row.end(), ds.raw[i].begin(), ds.raw[i].end());
    std::vector<double> proj;
    if (ds.simplex) {
      proj.resize(n);
      check(logdiv_data_to_simplex(n, eta.data(), proj.data()),
            "projection output");
    } else {
      proj.assign(eta.begin(), eta.end());
    }
    row.insert(row.end(), proj.begin(), proj.end());
    for (int j = 0; j < o.k; ++j) {
      row.push_back(tpar[j]);
      tmin[j] = i ? std::min(tmin[j], tpar[j]) : tpar[j];
      tmax[j] = i ? std::max(tmax[j], tpar[j]) : tpar[j];
    }
    row.push_back(div);
    pts_rows.push_back(std::move(row));
    if (n == 3 && ds.simplex) {
      svg_data.push_back({ds.raw[i][0], ds.raw[i][1], ds.raw[i][2]});
      svg_proj.push_back({proj[0], proj[1], proj[2]});
    }
  }

  // Aitchison comparison (k = 1 principal curve in ilr coordinates).
  std::vector<std::array<double, 3>> baseline_curve3;
  std::vector<std::vector<double>> baseline_rows;
  std::vector<double> ait_scores, ait_eigs;
  if (!o.baseline.empty()) {
    if (!ds.simplex)
      throw CliError(kExitParse, "--baseline aitchison needs simplex input");
    const int curve_samples = 200;
    std::vector<double> simplex_data(static_cast<size_t>(count) * n);
    for (int i = 0; i < count; ++i)
      std::copy(ds.raw[i].begin(), ds.raw[i].end(),
                simplex_data.begin() + i * n);
    std::vector<double> curve(static_cast<size_t>(curve_samples) * n);
    ait_scores.resize(count);
    ait_eigs.resize(d);
    check(logdiv_aitchison_baseline(n, count, simplex_data.data(), curve_samples,
                                    curve.data(), ait_scores.data(),
                                    ait_eigs.data()),
          "aitchison baseline");
    for (int s = 0; s < curve_samples; ++s) {
      std::vector<double> row(curve.begin() + s * n, curve.begin() + (s + 1) * n);
      if (n == 3) baseline_curve3.push_back({row[0], row[1], row[2]});
      baseline_rows.push_back(std::move(row));
    }
    for (int i = 0; i < count; ++i) pts_rows[i].push_back(ait_scores[i]);
  }

  std::vector<std::string> pts_header = {"id"};
  auto in_cols = point_header(ds.simplex ? "p" : "y", ds.simplex ? n : d);
  pts_header.insert(pts_header.end(), in_cols.begin(), in_cols.end());
  auto proj_cols = point_header(ds.simplex ? "proj_p" : "proj_y",
                                ds.simplex ? n : d);
  pts_header.insert(pts_header.end(), proj_cols.begin(), proj_cols.end());
  for (int j = 1; j <= o.k; ++j) pts_header.push_back("t" + std::to_string(j));
  pts_header.push_back("divergence");
  if (!o.baseline.empty()) pts_header.push_back("ait_score");
  cli::write_csv(o.output + "_points.csv", comments, pts_header, pts_rows);

  // Objective trace.
  {
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < full_len; ++i)
      rows.push_back({static_cast<double>(i), trace[i]});
    cli::write_csv(o.output + "_trace.csv", comments, {"step", "objective"},
                   rows);
  }

  // Truth comparison.
  double truth_angle = std::nan(""), truth_objective = std::nan("");
  if (!o.truth.empty()) {
    SubspaceSpec ts = load_subspace_spec(d, o.truth, "", "");
    if (ts.k != o.k)
      throw CliError(kExitParse, "--truth subspace has k=" + std::to_string(ts.k) +
                                     ", fit has k=" + std::to_string(o.k));
    Subspace tsub = make_subspace(LOGDIV_FRAME_PRIMAL, d, ts);
    logdiv_proj_config pc;
    check(logdiv_proj_config_default(&pc), "config");
    pc.seed = o.seed;
    check(logdiv_objective_at(inst.get(), tsub.get(), count, data.data(), &pc,
                              &truth_objective),
          "objective at truth");
    truth_angle = principal_angle_deg(d, o.k, basis, ts.basis);
  }

  // Fit summary as key,value rows.
  {
    std::vector<std::vector<std::string>> rows;
    auto put = [&rows](const std::string& key, const std::string& v) {
      rows.push_back({key, v});
    };
    auto putd = [&put](const std::string& key, double v) {
      put(key, cli::format_double(v));
    };
    put("instance", o.instance);
    putd("alpha", o.alpha);
    put("k", std::to_string(o.k));
    put("dim", std::to_string(d));
    put("count", std::to_string(count));
    putd("objective", objective);
    put("converged", std::to_string(converged));
    put("near_tie", std::to_string(near_tie));
    put("trace_len", std::to_string(full_len));
    put("restarts", std::to_string(o.restarts));
    put("seed", std::to_string(o.seed));
    for (int i = 0; i < d; ++i)
      putd("base" + std::to_string(i + 1), base[i]);
    for (int j = 0; j < o.k; ++j)
      for (int i = 0; i < d; ++i)
        putd("basis" + std::to_string(j + 1) + "_" + std::to_string(i + 1),
             basis[j * d + i]);
    for (size_t e = 0; e < ait_eigs.size(); ++e)
      putd("ait_eig" + std::to_string(e + 1), ait_eigs[e]);
    if (!o.truth.empty()) {
      putd("truth_angle_deg", truth_angle);
      putd("truth_objective", truth_objective);
      put("objective_le_truth",
          objective <= truth_objective + 1e-12 ? "1" : "0");
    }
    cli::write_csv_strings(o.output + "_summary.csv", comments, {"key", "value"},
                           rows);
  }

  if (!baseline_rows.empty())
    cli::write_csv(o.output + "_baseline.csv", comments, point_header("p", n),
                   baseline_rows);

  if (!o.svg.empty()) {
    if (n != 3 || !ds.simplex || o.k != 1)
      throw CliError(kExitParse,
                     "--svg needs 3-part simplex input and k=1");
    double pad = tmax[0] > tmin[0] ? 0.1 * (tmax[0] - tmin[0]) : 0.5;
    std::vector<double> dir(basis.begin(), basis.begin() + d);
    cli::SimplexPlot plot;
    plot.data = svg_data;
    plot.projections = svg_proj;
    plot.curve = sample_curve3(inst.get(), base, dir, tmin[0] - pad,
                               tmax[0] + pad, 200);
    plot.baseline = baseline_curve3;
    plot.comments = {std::string("logdiv_version ") + logdiv_version(),
                     "config_hash " + cfg.hash()};
    cli::write_simplex_plot(o.svg, plot);
  }

  maybe_emit_config(cfg, o.emit_config);
  if (!converged)
    throw CliError(kExitConvergence,
                   "PCA did not converge in " + std::to_string(o.max_outer) +
                       " outer iterations (results written)");
}

// ------------------------------------------------------------------
// simulate

struct SimulateOpts {
  std::string instance = "dirichlet:3";
  double alpha = 1.0;
  std::string output, emit_config;
  std::string subspace_file, theta0, theta1;
  std::string concentration = "10";
  std::string t_range = "-0.8:0.8";
  int count = 100;
  int k = 1;
  unsigned long long seed = 0;
};

void run_simulate(const SimulateOpts& o) {
  if (!is_dirichlet_spec(o.instance))
    throw CliError(kExitParse, "simulate works on dirichlet instances");
  Instance inst = make_instance(o.instance, o.alpha);
  int d = 0;
  check(logdiv_instance_dim(inst.get(), &d), "instance");
  int n = d + 1;
  if (o.count < 0) throw CliError(kExitParse, "--count must be >= 0");

  auto conc_in = parse_vector(o.concentration, "--concentration");
  std::vector<double> conc(n);
  if (conc_in.size() == 1)
    std::fill(conc.begin(), conc.end(), conc_in[0]);
  else if (static_cast<int>(conc_in.size()) == n)
    conc = conc_in;
  else
    throw CliError(kExitParse, "--concentration needs 1 or " + std::to_string(n) +
                                   " values");
  for (double c : conc)
    if (!(c > 0))
      throw CliError(kExitParse, "--concentration values must be positive");
  auto range = parse_range(o.t_range);

  std::mt19937_64 gen(o.seed);
  SubspaceSpec spec;
  if (!o.subspace_file.empty() || !o.theta0.empty())
    spec = load_subspace_spec(d, o.subspace_file, o.theta0, o.theta1);
  else {
    // Random line/plane through a point near the center of the positive
    // orthant; scale keeps base + t*dir inside for |t| <= ~1.
    std::uniform_real_distribution<double> ub(0.8, 1.6);
    std::normal_distribution<double> gauss(0.0, 1.0);
    spec.base.resize(d);
    for (int i = 0; i < d; ++i) spec.base[i] = ub(gen);
    std::vector<std::vector<double>> dirs(o.k, std::vector<double>(d));
    for (auto& v : dirs)
      for (auto& x : v) x = gauss(gen);
    spec.basis = orthonormal_columns(d, dirs);
    spec.k = o.k;
  }
  if (spec.k != o.k && (o.subspace_file.empty() && o.theta0.empty()))
    throw CliError(kExitParse, "internal: subspace arity");

  cli::RunConfig cfg;
  cfg.set("instance", o.instance);
  cfg.set_double("alpha", o.alpha);
  cfg.set("output", o.output);
  cfg.set_int("count", o.count);
  cfg.set_int("k", spec.k);
  cfg.set_int("seed", static_cast<long long>(o.seed));
  cfg.set("concentration", o.concentration);
  cfg.set("t-range", o.t_range);
  if (!o.subspace_file.empty()) cfg.set("subspace-file", o.subspace_file);
  if (!o.theta0.empty()) cfg.set("theta0", o.theta0);
  if (!o.theta1.empty()) cfg.set("theta1", o.theta1);
  auto comments = provenance(cfg);

  std::string truth_path = o.output + ".truth";
  {
    std::vector<std::vector<double>> rows = {spec.base};
    for (int j = 0; j < spec.k; ++j)
      rows.emplace_back(spec.basis.begin() + j * d,
                        spec.basis.begin() + (j + 1) * d);
    auto truth_comments = comments;
    truth_comments.push_back("# role subspace");
    truth_comments.push_back("# frame primal");
    cli::write_csv(truth_path, truth_comments, point_header("x", d), rows);
  }

  std::uniform_real_distribution<double> ut(range.first, range.second);
  std::vector<std::vector<double>> rows;
  std::vector<double> theta(d), eta(d), p(n), q(n);
  for (int i = 0; i < o.count; ++i) {
    std::vector<double> tpar(spec.k);
    for (auto& tv : tpar) tv = ut(gen);
    for (int a = 0; a < d; ++a) {
      theta[a] = spec.base[a];
      for (int j = 0; j < spec.k; ++j)
        theta[a] += spec.basis[j * d + a] * tpar[j];
    }
    int rc = logdiv_to_dual(inst.get(), theta.data(), eta.data());
    if (rc != LOGDIV_OK)
      throw CliError(kExitDomain,
                     "sample " + std::to_string(i + 1) +
                         " leaves the domain; shrink --t-range (" +
                         logdiv_last_error() + ")");
    check(logdiv_data_to_simplex(n, eta.data(), p.data()), "simplex");
    unsigned long long si =
        o.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<unsigned long long>(i + 1));
    check(logdiv_sample_perturbation(n, p.data(), conc.data(), 1, si, q.data()),
          "perturbation");
    rows.emplace_back(q.begin(), q.end());
  }

  auto data_comments = comments;
  data_comments.push_back("# truth " + truth_path);
  cli::write_csv(o.output, data_comments, point_header("p", n), rows);
  maybe_emit_config(cfg, o.emit_config);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"logdiv: logarithmic divergence geometry on the simplex"};
  app.require_subcommand(1);
  std::string config_note;  // consumed before parsing; shown in help only

  DivergenceOpts dopt;
  auto* div = app.add_subcommand(
      "divergence", "divergence table for point pairs (optional triples)");
  div->add_option("--instance", dopt.instance,
                  "dirichlet:<n> or perturbed:<d>");
  div->add_option("--alpha", dopt.alpha, "divergence parameter");
  div->add_option("--input", dopt.input, "CSV of pairs p1..pn,q1..qn (or a/b)")
      ->required();
  div->add_option("--output", dopt.output, "output CSV")->required();
  div->add_option("--emit-config", dopt.emit_config, "write effective config");
  div->add_option("--config", config_note, "key=value config file");
  div->callback([&dopt] { run_divergence(dopt); });

  FoliateOpts fopt;
  auto* fol = app.add_subcommand(
      "foliate", "project data onto a primal subspace and label leaves");
  fol->add_option("--instance", fopt.instance, "dirichlet:<n> or perturbed:<d>");
  fol->add_option("--alpha", fopt.alpha, "divergence parameter");
  fol->add_option("--input", fopt.input, "data CSV (p1..pn or y1..yd)")
      ->required();
  fol->add_option("--output", fopt.output, "output CSV")->required();
  fol->add_option("--svg", fopt.svg, "triangle overlay SVG (n=3, k=1)");
  fol->add_option("--subspace-file", fopt.subspace_file,
                  "CSV x1..xd: base row then direction rows");
  fol->add_option("--theta0", fopt.theta0, "line through two primal points");
  fol->add_option("--theta1", fopt.theta1, "second primal point");
  fol->add_option("--format", fopt.format, "simplex|dual|auto");
  fol->add_option("--seed", fopt.seed, "multistart seed");
  fol->add_option("--tol-inner", fopt.tol_inner, "projection gradient tolerance");
  fol->add_option("--emit-config", fopt.emit_config, "write effective config");
  fol->add_option("--config", config_note, "key=value config file");
  fol->callback([&fopt] { run_foliate(fopt); });

  PcaOpts popt;
  auto* pca = app.add_subcommand("pca", "fit a principal subspace by projected divergence");
  pca->add_option("--instance", popt.instance, "dirichlet:<n> or perturbed:<d>");
  pca->add_option("--alpha", popt.alpha, "divergence parameter");
  pca->add_option("--input", popt.input, "data CSV (p1..pn or y1..yd)")
      ->required();
  pca->add_option("--output", popt.output,
                  "output prefix: writes <prefix>_summary.csv, _points.csv, "
                  "_trace.csv and optionally _baseline.csv")
      ->required();
  pca->add_option("--k", popt.k, "subspace dimension");
  pca->add_option("--seed", popt.seed, "restart/multistart seed");
  pca->add_option("--restarts", popt.restarts, "number of restarts");
  pca->add_option("--max-outer", popt.max_outer, "outer iteration cap");
  pca->add_option("--tol-inner", popt.tol_inner, "per-point projection tolerance");
  pca->add_option("--tol-outer", popt.tol_outer, "relative objective tolerance");
  pca->add_option("--baseline", popt.baseline, "comparison method: aitchison");
  pca->add_option("--truth", popt.truth, "subspace CSV for recovery comparison");
  pca->add_option("--svg", popt.svg, "triangle overlay SVG (n=3, k=1)");
  pca->add_option("--format", popt.format, "simplex|dual|auto");
  pca->add_option("--emit-config", popt.emit_config, "write effective config");
  pca->add_option("--config", config_note, "key=value config file");
  pca->callback([&popt] { run_pca(popt); });

  SimulateOpts sopt;
  auto* sim = app.add_subcommand(
      "simulate", "sample noisy compositions around a primal subspace");
  sim->add_option("--instance", sopt.instance, "dirichlet:<n>");
  sim->add_option("--alpha", sopt.alpha, "divergence parameter");
  sim->add_option("--output", sopt.output,
                  "data CSV; the generating subspace goes to <output>.truth")
      ->required();
  sim->add_option("--count", sopt.count, "number of samples");
  sim->add_option("--k", sopt.k, "subspace dimension when drawn at random");
  sim->add_option("--seed", sopt.seed, "sampling seed");
  sim->add_option("--concentration", sopt.concentration,
                  "Dirichlet concentration: scalar or n values");
  sim->add_option("--t-range", sopt.t_range, "parameter range lo:hi");
  sim->add_option("--subspace-file", sopt.subspace_file,
                  "CSV x1..xd: base row then direction rows");
  sim->add_option("--theta0", sopt.theta0, "line through two primal points");
  sim->add_option("--theta1", sopt.theta1, "second primal point");
  sim->add_option("--emit-config", sopt.emit_config, "write effective config");
  sim->add_option("--config", config_note, "key=value config file");
  sim->callback([&sopt] { run_simulate(sopt); });

  try {
    std::vector<std::string> args = cli::expand_config_args(argc, argv);
    std::vector<std::string> rev(args.begin() + 1, args.end());
    std::reverse(rev.begin(), rev.end());
    app.parse(std::move(rev));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code;
  } catch (const cli::CsvError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitOk;
}
