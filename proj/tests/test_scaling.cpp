#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "btlab/scaling.hpp"

#include <cmath>

using namespace btlab;

TEST_CASE("fit_loglog_slope recovers synthetic power laws") {
  std::vector<double> ns = {8, 16, 32, 64};
  std::vector<double> errs;
  for (double n : ns) errs.push_back(3.7 * std::pow(n, -2.0 / 3.0));
  SlopeFit f = fit_loglog_slope(ns, errs);
  CHECK(std::fabs(f.slope + 2.0 / 3.0) < 1e-12);
  CHECK(f.stderr_slope < 1e-12);
  // mild multiplicative noise must not move the slope materially
  std::vector<double> noisy = errs;
  noisy[1] *= 1.3;
  noisy[2] *= 0.8;
  SlopeFit g = fit_loglog_slope(ns, noisy);
  CHECK(std::fabs(g.slope + 2.0 / 3.0) < 0.15);
  CHECK(g.stderr_slope > 0.0);
  CHECK(fit_loglog_slope({8.0}, {1.0}).slope == 0.0);
}

TEST_CASE("single rung: exact t, internal cross-check, finite errors") {
  ScalingRung r = scaling_rung(0.0, 0.0, 8, -0.6386857857, -0.0548378652);
  CHECK(!r.skipped);
  CHECK(r.t == 8.0);  // xi = 0 keeps t = n exactly
  CHECK(r.crosscheck_rel <= 1e-20);
  CHECK(r.err_D > 0.0);
  CHECK(r.err_D < 1e-1);
  CHECK(std::isfinite(r.err_g));
  CHECK(std::isfinite(r.err_R));
}

TEST_CASE("rung with t <= 0 is skipped with a reason") {
  ScalingRung r = scaling_rung(0.0, -5.0, 8, 0.0, 0.0);
  CHECK(r.skipped);
  CHECK(r.skip_reason == "t <= 0");
}

TEST_CASE("ladders: slopes and monotone error decay across branches") {
  for (double nu : {-0.5, 0.0, 0.5, 1.0}) {
    CAPTURE(nu);
    ScalingConfig cfg;
    cfg.nu = nu;
    ScalingReport rep = run_ladder(cfg);
    REQUIRE(rep.rungs.size() == 4);
    CHECK(rep.fit_D.slope <= -2.0 / 3.0 + 0.15);
    CHECK(rep.fit_g.slope <= -2.0 / 3.0 + 0.15);
    CHECK(rep.fit_R.slope <= -2.0 / 3.0 + 0.15);
    for (size_t i = 1; i < rep.rungs.size(); ++i) {
      CHECK(rep.rungs[i].err_D < rep.rungs[i - 1].err_D);
      CHECK(rep.rungs[i].err_g < rep.rungs[i - 1].err_g);
      CHECK(rep.rungs[i].err_R < rep.rungs[i - 1].err_R);
    }
    for (const auto& r : rep.rungs) CHECK(r.crosscheck_rel <= 1e-20);
  }
}

TEST_CASE("ladder at nu = 0.5 uses the lifted-branch values") {
  ScalingConfig cfg;
  cfg.nu = 0.5;
  ScalingReport rep = run_ladder(cfg);
  // frozen values from the independent integration + Backlund oracle
  CHECK(std::fabs(rep.u_at_target - 2.74552849701746) < 1e-7);
  CHECK(std::fabs(rep.H_at_target - (-0.14898508541955)) < 1e-7);
}

TEST_CASE("scaling point on a PII pole is rejected") {
  ScalingConfig cfg;
  cfg.nu = 0.5;                  // pole near x = 0.36
  cfg.xi = 0.36 / 1.5874010519681994;  // x_target lands on it
  CHECK_THROWS_AS(run_ladder(cfg), std::runtime_error);
}

TEST_CASE("xi sweep: bounded constant, continuity, ladder consistency") {
  PiiProblem opts;
  std::vector<double> xis = {-2.0, -1.0, 0.0, 1.0, 2.0};
  auto rows = sweep_xi(-0.5, xis, 32, opts);
  REQUIRE(rows.size() == xis.size());
  double n23 = std::pow(32.0, -2.0 / 3.0);
  for (const auto& row : rows) {
    CHECK(!row.rung.skipped);
    // single error constant across the compact xi window (frozen regression)
    CHECK(row.rung.err_D <= 0.5 * n23 * 3.0);
    CHECK(row.rung.err_g <= 0.5 * n23 * 3.0);
    CHECK(row.rung.err_R <= 0.5 * n23 * 3.0);
  }
  // continuity: no > 10x jump between adjacent xi, with a floor masking the
  // accidental zero crossings of the error curves
  auto smooth = [&](auto pick) {
    for (size_t i = 1; i < rows.size(); ++i) {
      double a = pick(rows[i - 1].rung) + 5e-3;
      double b = pick(rows[i].rung) + 5e-3;
      CHECK(std::max(a, b) / std::min(a, b) <= 10.0);
    }
  };
  smooth([](const ScalingRung& r) { return r.err_D; });
  smooth([](const ScalingRung& r) { return r.err_g; });
  smooth([](const ScalingRung& r) { return r.err_R; });

  // the xi = 0 column is the same computation as a ladder rung at n = 32
  ScalingConfig cfg;
  cfg.nu = -0.5;
  ScalingReport rep = run_ladder(cfg);
  const ScalingRung& lad = rep.rungs[2];
  const ScalingRung& col = rows[2].rung;
  CHECK(col.err_D == lad.err_D);
  CHECK(col.err_g == lad.err_g);
  CHECK(col.err_R == lad.err_R);
}
