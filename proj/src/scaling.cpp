#include "btlab/scaling.hpp"

#include "btlab/mp_real.hpp"
#include "btlab/orthopoly.hpp"

#include <cmath>

namespace btlab {

namespace {
constexpr double kCbrt4 = 1.5874010519681994;   // 2^{2/3}
constexpr double kInvCbrt2 = 0.7937005259840998;  // 2^{-1/3}

int digits_for(double t) { return 40 + static_cast<int>(std::ceil(t * 0.4342944819032518)); }
}  // namespace

ScalingRung scaling_rung(double nu, double xi, int n, double u_target, double H_target) {
  ScalingRung r;
  r.n = n;
  double tau = 1.0 + xi * std::pow(n, -2.0 / 3.0);
  r.t = n * tau;
  if (!(r.t > 0.0)) {
    r.skipped = true;
    r.skip_reason = "t <= 0";
    return r;
  }
  int save = MpReal::working_digits();
  MpReal::set_working_digits(digits_for(r.t));
  try {
    auto tab = build_moment_table<MpReal>(nu, r.t, n + 1);
    auto L = dlogdet(tab, n, 1);
    auto snap = op_snapshot(tab, n, true);
    MpReal lhs_ident = dlogD_via_identity(snap);
    r.lhs_D = to_double(L[0]);
    double denom = std::max(std::fabs(to_double(L[0])), 1e-300);
    r.crosscheck_rel = std::fabs(to_double(L[0] - lhs_ident)) / denom;
    double ninv3 = std::pow(n, -1.0 / 3.0);
    r.rhs_D = r.t / 2.0 + kCbrt4 * ninv3 * H_target;
    r.err_D = std::fabs(r.lhs_D - r.rhs_D);
    if (snap.h_sign < 0) {
      r.skipped = true;
      r.skip_reason = "h_n < 0";
    }
    r.lhs_g = to_double(snap.gamma_abs);
    r.rhs_g = 1.0 + kInvCbrt2 * ninv3 * H_target;
    r.err_g = std::fabs(r.lhs_g - r.rhs_g);
    r.lhs_R = to_double(snap.pi0_t() / snap.pi0());
    r.rhs_R = -kCbrt4 * ninv3 * u_target;
    r.err_R = std::fabs(r.lhs_R - r.rhs_R);
  } catch (const SingularMatrixError& e) {
    r.skipped = true;
    r.skip_reason = e.what();
  }
  MpReal::set_working_digits(save);
  return r;
}

ScalingReport run_ladder(const ScalingConfig& cfg) {
  ScalingReport rep;
  rep.nu = cfg.nu;
  rep.xi = cfg.xi;
  rep.x_target = kCbrt4 * cfg.xi;

  PiiProblem pp = cfg.pii;
  pp.nu = cfg.nu;
  PiiSolution pii = solve_hastings_mcleod(pp);
  if (!pii.converged)
    throw std::runtime_error("run_ladder: PII solve did not converge; configuration rejected");
  for (double xp : pii.poles)
    if (std::fabs(rep.x_target - xp) < 0.25)
      throw std::runtime_error("run_ladder: scaling point lies on a PII pole");
  rep.u_at_target = pii.interp_u(rep.x_target);
  rep.H_at_target = pii.interp_H(rep.x_target);

  std::vector<double> ns, eD, eg, eR;
  for (int n : cfg.ns) {
    ScalingRung r = scaling_rung(cfg.nu, cfg.xi, n, rep.u_at_target, rep.H_at_target);
    rep.rungs.push_back(r);
    if (!r.skipped) {
      ns.push_back(n);
      eD.push_back(r.err_D);
      eg.push_back(r.err_g);
      eR.push_back(r.err_R);
    }
  }
  rep.fit_D = fit_loglog_slope(ns, eD);
  rep.fit_g = fit_loglog_slope(ns, eg);
  rep.fit_R = fit_loglog_slope(ns, eR);
  return rep;
}

std::vector<XiRow> sweep_xi(double nu, const std::vector<double>& xis, int n,
                            const PiiProblem& pii_opts) {
  PiiProblem pp = pii_opts;
  pp.nu = nu;
  PiiSolution pii = solve_hastings_mcleod(pp);
  if (!pii.converged) throw std::runtime_error("sweep_xi: PII solve did not converge");
  std::vector<XiRow> rows;
  for (double xi : xis) {
    XiRow row;
    row.xi = xi;
    row.x_target = kCbrt4 * xi;
    bool on_pole = false;
    for (double xp : pii.poles)
      if (std::fabs(row.x_target - xp) < 0.25) on_pole = true;
    if (on_pole) {
      row.rung.n = n;
      row.rung.skipped = true;
      row.rung.skip_reason = "scaling point lies on a PII pole";
    } else {
      row.rung = scaling_rung(nu, xi, n, pii.interp_u(row.x_target), pii.interp_H(row.x_target));
    }
    rows.push_back(row);
  }
  return rows;
}

SlopeFit fit_loglog_slope(const std::vector<double>& ns, const std::vector<double>& errs) {
  SlopeFit fit;
  size_t m = ns.size();
  if (m < 2) return fit;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<double> lx(m), ly(m);
  for (size_t i = 0; i < m; ++i) {
    lx[i] = std::log(ns[i]);
    ly[i] = std::log(std::max(errs[i], 1e-300));
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  double dm = m * sxx - sx * sx;
  fit.slope = (m * sxy - sx * sy) / dm;
  double intercept = (sy - fit.slope * sx) / m;
  if (m > 2) {
    double ss = 0;
    for (size_t i = 0; i < m; ++i) {
      double resid = ly[i] - (intercept + fit.slope * lx[i]);
      ss += resid * resid;
    }
    fit.stderr_slope = std::sqrt(ss / (m - 2) * m / dm);
  }
  return fit;
}

}  // namespace btlab
