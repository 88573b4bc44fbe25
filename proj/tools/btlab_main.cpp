// Command-line front end: every module behind a subcommand with CSV/JSON
// output. Exit codes: 0 success (and all verdicts passing), 2 verdict
// failure, 1 usage or domain error.

#include "CLI11.hpp"
#include "btlab/acceptance.hpp"
#include "btlab/piii.hpp"
#include "btlab/reports.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace btlab;

constexpr const char* kVersion = "1.0.0";

template <class T>
std::string list_literal(const std::vector<T>& xs) {
  std::string out = "[";
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += format_double(static_cast<double>(xs[i]));
  }
  return out + "]";
}

struct Output {
  std::optional<std::string> dir;  // from --out-dir or BTLAB_OUT_DIR
  std::string subcommand;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::string> files;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void param(const std::string& k, double v) { params.emplace_back(k, format_double(v)); }
  void param(const std::string& k, const std::string& v) {
    // raw literal if it already looks like JSON, else quoted
    if (!v.empty() && (v[0] == '[' || v == "true" || v == "false"))
      params.emplace_back(k, v);
    else
      params.emplace_back(k, "\"" + v + "\"");
  }

  // CSV goes to stdout, or to <dir>/<subcommand>.csv when a directory is set
  void emit_csv(const std::string& text) {
    if (!dir) {
      std::fputs(text.c_str(), stdout);
      return;
    }
    std::string path = *dir + "/" + subcommand + ".csv";
    std::ofstream f(path, std::ios::binary);
    f << text;
    files.push_back(path);
  }

  void emit_json(const std::string& text) {
    if (!dir) {
      std::fputs(text.c_str(), stdout);
      return;
    }
    std::string path = *dir + "/" + subcommand + "_verdict.json";
    std::ofstream f(path, std::ios::binary);
    f << text;
    files.push_back(path);
  }

  // run manifest written only alongside file output
  void finish() {
    if (!dir) return;
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string j = "{\"subcommand\": \"" + subcommand + "\", \"parameters\": {";
    for (size_t i = 0; i < params.size(); ++i) {
      if (i) j += ", ";
      j += "\"" + params[i].first + "\": " + params[i].second;
    }
    j += "}, \"artifact_version\": \"" + std::string(kVersion) + "\", \"wall_time_s\": " +
         format_double(wall) + ", \"output_files\": [";
    for (size_t i = 0; i < files.size(); ++i) {
      if (i) j += ", ";
      j += "\"" + files[i] + "\"";
    }
    j += "]}\n";
    std::ofstream f(*dir + "/" + subcommand + "_manifest.json", std::ios::binary);
    f << j;
  }
};

int run_bessel(Output& out, const std::vector<double>& mus, const std::vector<double>& ts) {
  std::string csv = "mu,t,I_mu,I_mu_prime\n";
  for (double mu : mus)
    for (double t : ts) {
      auto d = bessel_i_derivs(DdReal(mu), DdReal(t), 1);
      csv += csv_row({format_double(mu), format_double(t), format_double(to_double(d[0])),
                      format_double(to_double(d[1]))});
    }
  out.emit_csv(csv);
  return 0;
}

int run_toeplitz(Output& out, double nu, double t, int n, bool derivs) {
  auto tab = build_moment_table<DdReal>(nu, t, n);
  auto f = factorize(tab, n);
  std::array<DdReal, 3> L{DdReal(0.0), DdReal(0.0), DdReal(0.0)};
  if (derivs) L = dlogdet(tab, n, 3);
  std::string csv = "n,nu,t,logdet,sign,L1,L2,L3\n";
  csv += csv_row({format_double(n), format_double(nu), format_double(t),
                  format_double(to_double(f.logdet_abs)), format_double(f.sign),
                  derivs ? format_double(to_double(L[0])) : "",
                  derivs ? format_double(to_double(L[1])) : "",
                  derivs ? format_double(to_double(L[2])) : ""});
  out.emit_csv(csv);
  return 0;
}

int run_op(Output& out, double nu, double t, int n, bool derivs) {
  auto tab = build_moment_table<DdReal>(nu, t, n + 1);
  auto s = op_snapshot(tab, n, derivs);
  std::string csv = "n,nu,t,pi0,h,gamma,a_sub,at_sub,dlog_pi0\n";
  std::string dlog;
  if (derivs) dlog = format_double(to_double(s.pi0_t() / s.pi0()));
  double gamma = s.h_sign > 0 ? to_double(s.gamma_abs) : -to_double(s.gamma_abs);
  csv += csv_row({format_double(n), format_double(nu), format_double(t),
                  format_double(to_double(s.pi0())), format_double(to_double(s.h)),
                  format_double(gamma),
                  n > 0 ? format_double(to_double(s.a_sub())) : "",
                  n > 0 ? format_double(to_double(s.at_sub())) : "", dlog});
  out.emit_csv(csv);
  return 0;
}

int run_pii(Output& out, double nu, double xl, double xr, int grid) {
  PiiProblem p;
  p.nu = nu;
  p.xl = xl;
  p.xr = xr;
  p.grid = grid;
  PiiSolution s = solve_hastings_mcleod(p);
  out.emit_csv(pii_csv(s));
  JsonVerdict v;
  v.name = "pii";
  v.pass = s.converged;
  v.add("nu", nu);
  v.add("newton_iters", static_cast<double>(s.newton_iters));
  v.add("final_residual", s.final_residual);
  v.add("u0", s.interp_u(0.0));
  v.add("H0", s.interp_H(0.0));
  v.add("pole_flag", std::string(s.pole_flag ? "true" : "false"));
  if (!s.poles.empty()) v.add("pole_x", s.pole_x);
  out.emit_json(v.str());
  return v.pass ? 0 : 2;
}

int run_piii_check(Output& out, double nu, int n, const std::vector<double>& xs,
                   double tol_piii, double tol_sigma) {
  std::string csv = "x,alpha,residual_PIII,sigma,residual_sigmaform\n";
  double worst_p = 0.0, worst_s = 0.0;
  for (double x : xs) {
    auto a = alpha_and_derivs<DdReal>(nu, n, x);
    auto rp = piii_residual<DdReal>(nu, n, x);
    auto sd = sigma_and_derivs<DdReal>(nu, n, x);
    auto rs = sigma_form_residual_from(sd, nu, n, x);
    double relp = std::fabs(to_double(rp.residual)) / std::max(to_double(rp.scale), 1e-300);
    double rels = std::fabs(to_double(rs.residual)) / std::max(to_double(rs.scale), 1e-300);
    worst_p = std::max(worst_p, relp);
    worst_s = std::max(worst_s, rels);
    csv += csv_row({format_double(x), format_double(to_double(a.alpha)),
                    format_double(to_double(rp.residual)), format_double(to_double(sd.sigma)),
                    format_double(to_double(rs.residual))});
  }
  out.emit_csv(csv);
  JsonVerdict v;
  v.name = "piii-check";
  v.pass = worst_p <= tol_piii && worst_s <= tol_sigma;
  v.add("nu", nu);
  v.add("n", static_cast<double>(n));
  v.add("worst_piii_rel", worst_p);
  v.add("worst_sigma_rel", worst_s);
  v.add("tol_piii", tol_piii);
  v.add("tol_sigma", tol_sigma);
  out.emit_json(v.str());
  return v.pass ? 0 : 2;
}

int run_scaling(Output& out, double nu, double xi, const std::vector<int>& ladder,
                double slope_bound) {
  ScalingConfig cfg;
  cfg.nu = nu;
  cfg.xi = xi;
  cfg.ns = ladder;
  ScalingReport rep = run_ladder(cfg);
  out.emit_csv(scaling_csv(rep));
  JsonVerdict v;
  v.name = "scaling";
  v.pass = rep.fit_D.slope <= slope_bound && rep.fit_g.slope <= slope_bound &&
           rep.fit_R.slope <= slope_bound;
  v.add("nu", nu);
  v.add("xi", xi);
  v.add("x_target", rep.x_target);
  v.add("u_at_target", rep.u_at_target);
  v.add("H_at_target", rep.H_at_target);
  v.add("slope_D", rep.fit_D.slope);
  v.add("slope_gamma", rep.fit_g.slope);
  v.add("slope_R", rep.fit_R.slope);
  v.add("slope_bound", slope_bound);
  out.emit_json(v.str());
  return v.pass ? 0 : 2;
}

int run_verify_all(Output& out) {
  bool all = true;
  std::string lines;
  JsonVerdict v;
  v.name = "verify-all";
  for (const auto& r : run_acceptance()) {
    lines += criterion_line(r, false) + "\n";
    all = all && r.pass;
    v.add("criterion_" + std::to_string(r.id) + "_" + r.name,
          std::string(r.pass ? "true" : "false"));
  }
  v.pass = all;
  std::fputs(lines.c_str(), stdout);
  out.emit_json(v.str());
  return all ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bessel-kernel Toeplitz determinant laboratory"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  int jobs = 1;
  app.add_option("--jobs", jobs, "worker count (output order is deterministic regardless)");
  std::string out_dir;
  app.add_option("--out-dir", out_dir, "write CSV/JSON/manifest files here instead of stdout");

  auto* c_bessel = app.add_subcommand("bessel", "modified Bessel values and derivatives");
  std::vector<double> mus{0.0}, ts{1.0};
  c_bessel->add_option("--mu", mus, "orders")->expected(-1);
  c_bessel->add_option("--t", ts, "arguments (> 0)")->expected(-1);

  auto* c_toe = app.add_subcommand("toeplitz", "Toeplitz determinant and log-derivatives");
  double nu = 0.0, t = 1.0;
  int n = 1;
  bool derivs = false;
  c_toe->add_option("--nu", nu, "order parameter");
  c_toe->add_option("--t", t, "argument (> 0)");
  c_toe->add_option("--n", n, "matrix size");
  c_toe->add_flag("--derivs", derivs, "include L', L'', L'''");

  auto* c_op = app.add_subcommand("op", "bi-orthogonal polynomial scalars");
  double op_nu = 0.0, op_t = 1.0;
  int op_n = 1;
  bool op_derivs = false;
  c_op->add_option("--nu", op_nu, "order parameter");
  c_op->add_option("--t", op_t, "argument (> 0)");
  c_op->add_option("--n", op_n, "degree");
  c_op->add_flag("--derivs", op_derivs, "include d/dt log pi_n(0)");

  auto* c_pii = app.add_subcommand("pii", "Hastings-McLeod Painleve II profile");
  double pii_nu = 0.0, xl = -12.0, xr = 12.0;
  int grid = 4000;
  c_pii->add_option("--nu", pii_nu, "parameter");
  c_pii->add_option("--xl", xl, "left endpoint (<= -8)");
  c_pii->add_option("--xr", xr, "right endpoint (>= 8)");
  c_pii->add_option("--grid", grid, "base grid size");

  auto* c_piii = app.add_subcommand("piii-check", "Painleve III and sigma-form residuals");
  double p3_nu = 0.0;
  int p3_n = 1;
  std::vector<double> p3_xs{0.5, 1.0, 2.0};
  double tol_piii = 1e-15, tol_sigma = 1e-12;
  c_piii->add_option("--nu", p3_nu, "order parameter");
  c_piii->add_option("--n", p3_n, "degree");
  c_piii->add_option("--x-grid", p3_xs, "evaluation points x = t/2")->expected(-1);
  c_piii->add_option("--tol-piii", tol_piii, "relative residual budget, PIII");
  c_piii->add_option("--tol-sigma", tol_sigma, "relative residual budget, sigma form");

  auto* c_scal = app.add_subcommand("scaling", "double-scaling asymptotics ladder");
  double s_nu = 0.0, s_xi = 0.0, slope_bound = -2.0 / 3.0 + 0.15;
  std::vector<int> ladder{8, 16, 32, 64};
  c_scal->add_option("--nu", s_nu, "order parameter");
  c_scal->add_option("--xi", s_xi, "scaled parameter");
  c_scal->add_option("--ladder", ladder, "n values")->expected(-1);
  c_scal->add_option("--slope-bound", slope_bound, "verdict bound on fitted slopes");

  auto* c_all = app.add_subcommand("verify-all", "run the full acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  Output out;
  if (!out_dir.empty())
    out.dir = out_dir;
  else if (const char* env = std::getenv("BTLAB_OUT_DIR"); env && *env)
    out.dir = env;

  try {
    int code = 0;
    if (c_bessel->parsed()) {
      out.subcommand = "bessel";
      out.param("mu", list_literal(mus));
      out.param("t", list_literal(ts));
      code = run_bessel(out, mus, ts);
    } else if (c_toe->parsed()) {
      out.subcommand = "toeplitz";
      out.param("nu", nu);
      out.param("t", t);
      out.param("n", static_cast<double>(n));
      out.param("derivs", std::string(derivs ? "true" : "false"));
      code = run_toeplitz(out, nu, t, n, derivs);
    } else if (c_op->parsed()) {
      out.subcommand = "op";
      out.param("nu", op_nu);
      out.param("t", op_t);
      out.param("n", static_cast<double>(op_n));
      out.param("derivs", std::string(op_derivs ? "true" : "false"));
      code = run_op(out, op_nu, op_t, op_n, op_derivs);
    } else if (c_pii->parsed()) {
      out.subcommand = "pii";
      out.param("nu", pii_nu);
      out.param("xl", xl);
      out.param("xr", xr);
      out.param("grid", static_cast<double>(grid));
      code = run_pii(out, pii_nu, xl, xr, grid);
    } else if (c_piii->parsed()) {
      out.subcommand = "piii-check";
      out.param("nu", p3_nu);
      out.param("n", static_cast<double>(p3_n));
      out.param("x_grid", list_literal(p3_xs));
      code = run_piii_check(out, p3_nu, p3_n, p3_xs, tol_piii, tol_sigma);
    } else if (c_scal->parsed()) {
      out.subcommand = "scaling";
      out.param("nu", s_nu);
      out.param("xi", s_xi);
      out.param("ladder", list_literal(ladder));
      code = run_scaling(out, s_nu, s_xi, ladder, slope_bound);
    } else if (c_all->parsed()) {
      out.subcommand = "verify-all";
      code = run_verify_all(out);
    }
    out.finish();
    return code;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::runtime_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
