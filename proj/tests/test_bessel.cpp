#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "btlab/bessel.hpp"

#include <cmath>
#include <random>

using namespace btlab;

namespace {

double rel_err(const DdReal& got, const DdReal& want) {
  if (want.is_zero()) return std::fabs(to_double(got));
  return std::fabs(to_double((got - want) / want));
}

// Independent series oracle for I_0: direct (t/2)^{2k}/(k!)^2 products with
// no logarithm guard; usable for moderate t only.
DdReal i0_direct(double t) {
  DdReal q = DdReal(t / 2.0) * DdReal(t / 2.0);
  DdReal term(1.0), sum(1.0);
  for (int k = 1; k < 200; ++k) {
    term = term * q / (DdReal(static_cast<double>(k)) * DdReal(static_cast<double>(k)));
    sum += term;
    if (to_double(term) < 1e-36 * to_double(sum)) break;
  }
  return sum;
}

// frozen 40-digit references
const char* kI0_1 = "1.266065877752008335598244625214717537608";
const char* kIhalf_2 = "2.046236863089055036605183612020732319268";
const char* kImhalf_2 = "2.122591620177637193816120295731577941119";
const char* kKhalf_2 = "0.1199377719680614473680365016367935162195";
const char* kK325_10 = "0.00002933532735571176758035032027221649685447";
const char* kIm25_6 = "38.32881290244059240282126508299515294961";
const char* kIm73_12 = "2010.602804559420950191425779905720842627";

}  // namespace

TEST_CASE("half-integer closed forms to 1e-28") {
  DdReal pi = dd_pi();
  DdReal t(2.0);
  DdReal pref = sqrt(DdReal(2.0) / (pi * t));
  CHECK(rel_err(bessel_i_series(DdReal(0.5), t), pref * sinh(t)) < 1e-28);
  CHECK(rel_err(bessel_i(DdReal(-0.5), t), pref * cosh(t)) < 1e-28);
  CHECK(rel_err(bessel_k_integral(DdReal(0.5), t), sqrt(pi / (DdReal(2.0) * t)) * exp(-t)) < 1e-28);
  CHECK(rel_err(bessel_k_integral(DdReal(0.5), t), from_string(kKhalf_2)) < 1e-28);
}

TEST_CASE("series against direct-product oracle and frozen references") {
  CHECK(rel_err(bessel_i_series(DdReal(0.0), DdReal(1.0)), i0_direct(1.0)) < 1e-30);
  CHECK(rel_err(bessel_i_series(DdReal(0.0), DdReal(1.0)), from_string(kI0_1)) < 1e-29);
  CHECK(rel_err(bessel_i_series(DdReal(0.5), DdReal(2.0)), from_string(kIhalf_2)) < 1e-29);
  CHECK(rel_err(bessel_i(DdReal(-0.5), DdReal(2.0)), from_string(kImhalf_2)) < 1e-28);
}

TEST_CASE("series positivity for random (a, t)") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ad(0.0, 30.0), td(0.5, 60.0);
  for (int i = 0; i < 50; ++i) CHECK(bessel_i_series(DdReal(ad(rng)), DdReal(td(rng))) > DdReal(0.0));
}

TEST_CASE("K evenness in the order") {
  for (double a : {0.3, 1.7, 4.25}) {
    DdReal k1 = bessel_k_integral(DdReal(a), DdReal(3.0));
    DdReal k2 = bessel_k_integral(DdReal(-a), DdReal(3.0));
    CHECK(rel_err(k1, k2) < 1e-29);
  }
}

TEST_CASE("K order recurrence seeded at 0.25/1.25 reaches 3.25") {
  DdReal t(10.0);
  DdReal k025 = bessel_k_integral(DdReal(0.25), t);
  DdReal k125 = bessel_k_integral(DdReal(1.25), t);
  DdReal k225 = k025 + DdReal(2.0 * 1.25) / t * k125;
  DdReal k325 = k125 + DdReal(2.0 * 2.25) / t * k225;
  CHECK(rel_err(bessel_k_integral(DdReal(3.25), t), k325) < 1e-27);
  CHECK(rel_err(k325, from_string(kK325_10)) < 1e-27);
}

TEST_CASE("connection formula cases") {
  DdReal pi = dd_pi();
  DdReal t(2.0);
  // I_{-1/2} - I_{1/2} = sqrt(2/(pi t)) e^{-t}
  DdReal diff = bessel_i(DdReal(-0.5), t) - bessel_i(DdReal(0.5), t);
  CHECK(rel_err(diff, sqrt(DdReal(2.0) / (pi * t)) * exp(-t)) < 1e-27);
  // integer order: I_{-3} = I_3 with no K contribution
  CHECK(rel_err(bessel_i(DdReal(-3.0), DdReal(5.0)), bessel_i_series(DdReal(3.0), DdReal(5.0))) == 0.0);
  CHECK(rel_err(bessel_i(DdReal(-2.5), DdReal(6.0)), from_string(kIm25_6)) < 1e-28);
  CHECK(rel_err(bessel_i(DdReal(-7.3), DdReal(12.0)), from_string(kIm73_12)) < 1e-28);
}

TEST_CASE("oracle agreement where certified") {
  auto o1 = bessel_i_oracle(0.0, 1.0);
  CHECK(o1.certified_digits >= 25);
  CHECK(rel_err(o1.value, bessel_i_series(DdReal(0.0), DdReal(1.0))) < 1e-25);
  auto o2 = bessel_i_oracle(0.5, 2.0);
  CHECK(rel_err(o2.value, from_string(kIhalf_2)) < 1e-25);
  auto o3 = bessel_i_oracle(-2.5, 6.0);
  CHECK(o3.certified_digits >= 18);
  CHECK(rel_err(o3.value, bessel_i(DdReal(-2.5), DdReal(6.0))) < 1e-18);
  auto o4 = bessel_i_oracle(-7.3, 12.0);
  CHECK(rel_err(o4.value, bessel_i(DdReal(-7.3), DdReal(12.0))) < 1e-18);
}

TEST_CASE("derivatives: closed form, finite differences, recurrence") {
  DdReal t(2.0);
  auto d = bessel_i_derivs(DdReal(0.5), t, 3);
  // I'_{1/2} = (I_{-1/2} + I_{3/2})/2, frozen reference
  CHECK(rel_err(d[1], from_string("1.611032404405373434664824392726394861302")) < 1e-28);

  // order-2 value vs central finite difference, step 1e-6 carried in
  // double-double so the cancellation stays below the truncation error
  DdReal h(1e-6), base(3.0), nu07(0.7);
  DdReal fd2 = (bessel_i(nu07, base + h) - DdReal(2.0) * bessel_i(nu07, base) +
                bessel_i(nu07, base - h)) /
               (h * h);
  auto d2 = bessel_i_derivs(nu07, base, 2);
  CHECK(rel_err(d2[2], fd2) < 1e-11);

  // three-term recurrence on a (mu, t) grid; the order offsets are formed in
  // double-double so the three orders are spaced exactly one apart
  for (double mu = -40.0; mu <= 40.0; mu += 8.7) {
    for (double tt : {1.0, 7.0, 23.0, 48.0, 80.0}) {
      DdReal m(mu);
      DdReal im1 = bessel_i(m - DdReal(1.0), DdReal(tt));
      DdReal ip1 = bessel_i(m + DdReal(1.0), DdReal(tt));
      DdReal mid = DdReal(2.0) * m / DdReal(tt) * bessel_i(m, DdReal(tt));
      double scale = std::max({std::fabs(to_double(im1)), std::fabs(to_double(ip1)),
                               std::fabs(to_double(mid))});
      CHECK(std::fabs(to_double(im1 - ip1 - mid)) < 1e-26 * scale);
    }
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(bessel_i_series(DdReal(-1.0), DdReal(2.0)), DomainError);
  CHECK_THROWS_AS(bessel_i_series(DdReal(1.0), DdReal(0.0)), DomainError);
  CHECK_THROWS_AS(bessel_k_integral(DdReal(1.0), DdReal(-1.0)), DomainError);
  CHECK_THROWS_AS(bessel_i_derivs(DdReal(0.0), DdReal(1.0), 4), DomainError);
}

TEST_CASE("escalated-precision scalar matches double-double route") {
  MpReal::set_working_digits(45);
  MpReal v = bessel_i(MpReal(-2.5), MpReal(6.0));
  CHECK(std::fabs(to_double(v) - to_double(from_string(kIm25_6))) < 1e-13 * 38.0);
  MpReal s = bessel_i_series(MpReal(0.0), MpReal(1.0));
  CHECK(std::fabs(to_double(s) - 1.2660658777520083) < 1e-15);
}
