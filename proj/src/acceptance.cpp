#include "btlab/acceptance.hpp"

#include "btlab/piii.hpp"
#include "btlab/reports.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

namespace btlab {

namespace {

struct Worst {
  double value = 0.0;
  void feed(double v) {
    if (v > value) value = v;
  }
};

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

double rel_diff(const DdReal& a, const DdReal& b) {
  double scale = std::max(std::fabs(to_double(a)), std::fabs(to_double(b)));
  if (scale == 0.0) return 0.0;
  return std::fabs(to_double(a - b)) / scale;
}

// 1. Bessel layer: closed forms, recurrence, oscillatory oracle.
CriterionResult criterion_bessel() {
  CriterionResult r{1, "bessel-layer", true, "", 0.0};
  Worst closed, recur, oracle;
  for (double t : {2.0, 10.0}) {
    DdReal td(t);
    DdReal pref = sqrt(DdReal(2.0) / (ScalarOps<DdReal>::pi() * td));
    DdReal et = exp(td), emt = exp(-td);
    closed.feed(rel_diff(bessel_i(DdReal(0.5), td), pref * (et - emt) / DdReal(2.0)));
    closed.feed(rel_diff(bessel_i(DdReal(-0.5), td), pref * (et + emt) / DdReal(2.0)));
    DdReal khalf = sqrt(ScalarOps<DdReal>::pi() / (DdReal(2.0) * td)) * emt;
    closed.feed(rel_diff(bessel_k_integral(DdReal(0.5), td), khalf));
  }
  if (closed.value > 1e-28) r.pass = false;

  for (double mu : {-40.0, -33.5, -20.25, -10.0, -0.7, 0.0, 0.3, 7.5, 16.0, 27.25, 40.0})
    for (double t : {1.0, 5.5, 20.0, 80.0}) {
      DdReal m(mu), td(t);
      DdReal im1 = bessel_i(m - DdReal(1.0), td);
      DdReal ip1 = bessel_i(m + DdReal(1.0), td);
      DdReal mid = DdReal(2.0) * m / td * bessel_i(m, td);
      double scale = std::max({std::fabs(to_double(im1)), std::fabs(to_double(ip1)),
                               std::fabs(to_double(mid)), 1e-300});
      recur.feed(std::fabs(to_double(im1 - ip1 - mid)) / scale);
    }
  if (recur.value > 1e-26) r.pass = false;

  struct Pt {
    double mu, t;
  };
  for (Pt p : {Pt{0.3, 2.0}, Pt{-2.7, 5.0}, Pt{7.5, 10.0}, Pt{1.0, 20.0}}) {
    IOracleResult o = bessel_i_oracle(p.mu, p.t);
    if (o.certified_digits < 15) continue;  // oracle declines to certify
    oracle.feed(rel_diff(bessel_i(DdReal(p.mu), DdReal(p.t)), o.value));
  }
  if (oracle.value > 1e-15) r.pass = false;

  r.detail = "closed " + short_num(closed.value) + "/1e-28, recurrence " +
             short_num(recur.value) + "/1e-26, oracle " + short_num(oracle.value) + "/1e-15";
  return r;
}

// 2. Differential identity: trace-formula L' vs -(a + a~)/2.
CriterionResult criterion_identity() {
  CriterionResult r{2, "differential-identity", true, "", 0.0};
  Worst w;
  for (double nu : {-0.7, 0.0, 0.3})
    for (int n : {2, 6, 12}) {
      double t = n;
      auto tab = build_moment_table<DdReal>(nu, t, n + 1);
      auto L = dlogdet(tab, n, 1);
      auto s = op_snapshot(tab, n, true);
      DdReal ident = dlogD_via_identity(s);
      w.feed(std::fabs(to_double(L[0] - ident)) /
             std::max(std::fabs(to_double(L[0])), 1e-300));
    }
  if (w.value > 1e-20) r.pass = false;
  r.detail = "worst rel " + short_num(w.value) + "/1e-20 over 9 configs";
  return r;
}

// 3 and 4 share the verification lattice.
template <class Fn>
double lattice_worst(Fn&& residual_of) {
  Worst w;
  for (double nu : {-0.7, 0.0, 0.3, 1.0})
    for (int n : {1, 3, 6})
      for (double x : {0.5, 2.0}) {
        ResidualReport<DdReal> rep = residual_of(nu, n, x);
        w.feed(std::fabs(to_double(rep.residual)) / std::max(to_double(rep.scale), 1e-300));
      }
  return w.value;
}

CriterionResult criterion_piii() {
  CriterionResult r{3, "piii-residual", true, "", 0.0};
  double w = lattice_worst([](double nu, int n, double x) {
    return piii_residual<DdReal>(nu, n, x);
  });
  if (w > 1e-15) r.pass = false;
  r.detail = "worst " + short_num(w) + "/1e-15 of term scale";
  return r;
}

CriterionResult criterion_sigma() {
  CriterionResult r{4, "sigma-form-residual", true, "", 0.0};
  double w = lattice_worst([](double nu, int n, double x) {
    return sigma_form_residual<DdReal>(nu, n, x);
  });
  if (w > 1e-12) r.pass = false;
  r.detail = "worst " + short_num(w) + "/1e-12 of term scale";
  return r;
}

// 5. PII solver: residual, shooting oracle, reflection symmetry, far field.
CriterionResult criterion_pii() {
  CriterionResult r{5, "pii-solver", true, "", 0.0};
  PiiProblem ph;
  ph.nu = -0.5;
  PiiSolution hm = solve_hastings_mcleod(ph);
  double resid = hm.final_residual;
  if (!hm.converged || resid > 1e-8) r.pass = false;

  double shoot_diff = std::fabs(hm.interp_u(0.0) - shooting_u0_homogeneous());
  if (shoot_diff > 1e-6) r.pass = false;

  PiiProblem p0;
  p0.nu = 0.0;
  PiiSolution s0 = solve_hastings_mcleod(p0);
  PiiProblem pm;
  pm.nu = -1.0;
  PiiSolution sm = solve_hastings_mcleod(pm);
  Worst sym;
  for (size_t i = 0; i < s0.x.size(); ++i) sym.feed(std::fabs(s0.u[i] + sm.u[i]));
  if (sym.value > 1e-8) r.pass = false;

  Worst fitc;
  for (double nu : {-0.5, 0.0, 0.2}) {
    PiiProblem p;
    p.nu = nu;
    PiiSolution s = solve_hastings_mcleod(p);
    for (size_t i = 0; i < s.x.size(); ++i) {
      double x = s.x[i];
      if (x < 8.0 || x > 12.0) continue;
      fitc.feed(std::fabs(s.u[i] + (nu + 0.5) / x) * std::pow(x, 2.5));
      fitc.feed(std::fabs(s.H[i] + x * x / 8.0 - (nu * nu - 0.25) / (2.0 * x)) *
                std::pow(x, 3.0));
    }
  }
  if (fitc.value > 10.0) r.pass = false;

  r.detail = "residual " + short_num(resid) + "/1e-8, shooting " + short_num(shoot_diff) +
             "/1e-6, symmetry " + short_num(sym.value) + "/1e-8, far-field C " +
             short_num(fitc.value) + "/10";
  return r;
}

// 6. Double-scaling error-decay rates at xi = 0 for nu in {0, 0.5}.
CriterionResult criterion_rates() {
  CriterionResult r{6, "scaling-rates", true, "", 0.0};
  std::string det;
  for (double nu : {0.0, 0.5}) {
    ScalingConfig cfg;
    cfg.nu = nu;
    ScalingReport rep = run_ladder(cfg);
    const double bound = -2.0 / 3.0 + 0.15;
    bool ok = rep.fit_D.slope <= bound && rep.fit_g.slope <= bound &&
              rep.fit_R.slope <= bound;
    const ScalingRung& first = rep.rungs.front();
    const ScalingRung& last = rep.rungs.back();
    ok = ok && !first.skipped && !last.skipped && last.err_D <= first.err_D &&
         last.err_g <= first.err_g && last.err_R <= first.err_R;
    if (!ok) r.pass = false;
    char buf[96];
    std::snprintf(buf, sizeof buf, "nu=%g slopes %.2f/%.2f/%.2f; ", nu, rep.fit_D.slope,
                  rep.fit_g.slope, rep.fit_R.slope);
    det += buf;
  }
  r.detail = det + "bound -0.52";
  return r;
}

// 7. Integer-order reflection symmetry of log D at escalated precision.
CriterionResult criterion_symmetry() {
  CriterionResult r{7, "reflection-symmetry", true, "", 0.0};
  int save = MpReal::working_digits();
  MpReal::set_working_digits(50);
  Worst w;
  for (int n : {4, 16})
    for (double t : {4.0, 16.0}) {
      auto fp = factorize(build_moment_table<MpReal>(1.0, t, n), n);
      auto fm = factorize(build_moment_table<MpReal>(-1.0, t, n), n);
      if (fp.sign != fm.sign) r.pass = false;
      w.feed(std::fabs(to_double(fp.logdet_abs - fm.logdet_abs)));
    }
  MpReal::set_working_digits(save);
  if (w.value > 1e-24) r.pass = false;
  r.detail = "worst |dlogD| " + short_num(w.value) + "/1e-24";
  return r;
}

// 8. Determinism: identical reruns serialize byte-identically.
CriterionResult criterion_determinism() {
  CriterionResult r{8, "determinism", true, "", 0.0};
  auto ladder_text = [] {
    ScalingConfig cfg;
    cfg.nu = 0.0;
    return scaling_csv(run_ladder(cfg));
  };
  auto pii_text = [] {
    PiiProblem p;
    p.nu = -0.5;
    return pii_csv(solve_hastings_mcleod(p));
  };
  std::string a1 = ladder_text(), a2 = ladder_text();
  std::string b1 = pii_text(), b2 = pii_text();
  if (a1 != a2 || b1 != b2) r.pass = false;
  r.detail = "scaling csv " + std::to_string(a1.size()) + " B, pii csv " +
             std::to_string(b1.size()) + " B, reruns identical";
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance() {
  std::vector<std::function<CriterionResult()>> checks = {
      criterion_bessel,   criterion_identity, criterion_piii,     criterion_sigma,
      criterion_pii,      criterion_rates,    criterion_symmetry, criterion_determinism};
  std::vector<CriterionResult> out;
  for (auto& check : checks) {
    auto t0 = std::chrono::steady_clock::now();
    CriterionResult r = check();
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(r));
  }
  return out;
}

std::string criterion_line(const CriterionResult& r, bool with_time) {
  std::string out = std::string(r.pass ? "[PASS]" : "[FAIL]") + " criterion " +
                    std::to_string(r.id) + " (" + r.name + "): " + r.detail;
  if (with_time) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " [%.1f s]", r.seconds);
    out += buf;
  }
  return out;
}

}  // namespace btlab
