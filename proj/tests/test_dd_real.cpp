#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "btlab/dd_real.hpp"

#include <cmath>
#include <random>

using namespace btlab;

namespace {

double rel_err(const DdReal& got, const DdReal& want) {
  if (want.is_zero()) return std::fabs(to_double(got));
  return std::fabs(to_double((got - want) / want));
}

// 40-digit reference values (independent long-division / series oracles,
// frozen):
const char* kOneThird = "0.3333333333333333333333333333333333333333";
const char* kE = "2.718281828459045235360287471352662497757";
const char* kLnSqrtPi = "0.5723649429247000870717136756765293558236";

}  // namespace

TEST_CASE("two-sum is exact for representable pairs") {
  DdReal s = DdReal(1.0) + DdReal(std::ldexp(1.0, -60));
  CHECK(s.hi == 1.0);
  CHECK(s.lo == std::ldexp(1.0, -60));
}

TEST_CASE("multiplication annihilator and identities") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> dist(-1e10, 1e10);
  for (int i = 0; i < 100; ++i) {
    DdReal x(dist(rng));
    CHECK(to_double(x * DdReal(0.0)) == 0.0);
    CHECK(to_double(x * DdReal(1.0) - x) == 0.0);
  }
}

TEST_CASE("division against 40-digit long-division oracle") {
  DdReal third = DdReal(1.0) / DdReal(3.0);
  CHECK(rel_err(third, from_string(kOneThird)) < 1e-30);
}

TEST_CASE("division errors") {
  CHECK_THROWS_AS(DdReal(1.0) / DdReal(0.0), DomainError);
  CHECK_THROWS_AS(sqrt(DdReal(-2.0)), DomainError);
}

TEST_CASE("add/sub round-trip within 2 ulps of the extended format") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-40, 40);
  for (int i = 0; i < 2000; ++i) {
    DdReal a(std::ldexp(mant(rng), expo(rng)));
    DdReal b(std::ldexp(mant(rng), expo(rng)));
    DdReal back = (a + b) - b;
    double scale = std::max(std::fabs(to_double(a)), std::fabs(to_double(b)));
    CHECK(std::fabs(to_double(back - a)) <= 4.0 * std::ldexp(scale, -104));
  }
}

TEST_CASE("sqrt") {
  CHECK(rel_err(sqrt(DdReal(2.0)) * sqrt(DdReal(2.0)), DdReal(2.0)) < 1e-31);
  CHECK(to_double(sqrt(DdReal(0.0))) == 0.0);
}

TEST_CASE("exp basics") {
  CHECK(to_double(exp(DdReal(0.0))) == 1.0);
  CHECK(rel_err(exp(DdReal(1.0)), from_string(kE)) < 1e-30);
  CHECK_THROWS_AS(exp(DdReal(1e6)), RangeError);
}

TEST_CASE("sin at pi and basic trig symmetry") {
  CHECK(std::fabs(to_double(sin(dd_pi()))) < 1e-30);
  CHECK(std::fabs(to_double(cos(dd_half_pi()))) < 1e-30);
  DdReal x(0.7);
  CHECK(rel_err(sin(x) * sin(x) + cos(x) * cos(x), DdReal(1.0)) < 1e-30);
}

TEST_CASE("log/exp round trip on [-200, 200]") {
  for (double a = -200.0; a <= 200.0; a += 12.7) {
    DdReal back = log(exp(DdReal(a)));
    if (a == 0.0)
      CHECK(std::fabs(to_double(back)) < 1e-29);
    else
      CHECK(std::fabs(to_double(back) - a) < 1e-29 * std::fabs(a));
  }
}

TEST_CASE("exp and log are monotone on sampled grids") {
  DdReal prev_e = exp(DdReal(-5.0));
  DdReal prev_l = log(DdReal(0.01));
  for (double a = -4.9; a < 5.0; a += 0.1) {
    DdReal e = exp(DdReal(a));
    CHECK(e > prev_e);
    prev_e = e;
  }
  for (double a = 0.02; a < 50.0; a += 0.37) {
    DdReal l = log(DdReal(a));
    CHECK(l > prev_l);
    prev_l = l;
  }
}

TEST_CASE("sinh/cosh consistency") {
  for (double a : {1e-8, 0.1, 0.49, 0.51, 3.0, 20.0}) {
    DdReal x(a);
    CHECK(rel_err(cosh(x) * cosh(x) - sinh(x) * sinh(x), DdReal(1.0)) < 1e-29);
    CHECK(rel_err(sinh(x) + cosh(x), exp(x)) < 1e-30);
  }
}

TEST_CASE("lgamma_pos reference points") {
  CHECK(std::fabs(to_double(lgamma_pos(DdReal(1.0)))) < 1e-29);
  CHECK(std::fabs(to_double(lgamma_pos(DdReal(2.0)))) < 1e-29);
  CHECK(rel_err(lgamma_pos(DdReal(0.5)), from_string(kLnSqrtPi)) < 1e-28);
  DdReal diff = lgamma_pos(DdReal(21.0)) - lgamma_pos(DdReal(20.0));
  CHECK(rel_err(diff, log(DdReal(20.0))) < 1e-28);
  CHECK_THROWS_AS(lgamma_pos(DdReal(0.0)), DomainError);
}

TEST_CASE("lgamma recurrence over [0.1, 100]") {
  for (double x = 0.1; x <= 100.0; x += 0.83) {
    DdReal xs(x);
    DdReal lhs = lgamma_pos(xs + DdReal(1.0)) - lgamma_pos(xs) - log(xs);
    double scale = std::max(1.0, std::fabs(to_double(lgamma_pos(xs + DdReal(1.0)))));
    CHECK(std::fabs(to_double(lhs)) < 1e-27 * scale);
  }
}

TEST_CASE("decimal round trip at 32 digits") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-200, 200);
  for (int i = 0; i < 500; ++i) {
    DdReal x = DdReal(mant(rng)) * exp(DdReal(0.01 * expo(rng)));
    DdReal y = from_string(to_string(x));
    CHECK(rel_err(y, x) < 1e-31);
  }
  CHECK(to_string(DdReal(0.0)) == "0");
}

TEST_CASE("known decimal rendering") {
  // value chosen to exercise the guard-digit rounding path
  CHECK(to_string(DdReal(1.0) / DdReal(3.0)).substr(0, 10) == "3.33333333");
  CHECK(from_string("-1.5e2").hi == -150.0);
  CHECK_THROWS_AS(from_string("abc"), DomainError);
}

TEST_CASE("hex dump exposes both components") {
  std::string d = hex_dump(DdReal(1.0, std::ldexp(1.0, -60)));
  CHECK(d.find("0x1p+0") != std::string::npos);
  CHECK(d.find("p-60") != std::string::npos);
}

TEST_CASE("sin_pi integer zeros and half-integer values") {
  CHECK(std::fabs(to_double(sin_pi(DdReal(3.0)))) < 1e-31);
  CHECK(rel_err(sin_pi(DdReal(0.5)), DdReal(1.0)) < 1e-31);
  CHECK(rel_err(sin_pi(DdReal(2.5)), DdReal(1.0)) < 1e-31);
  CHECK(rel_err(sin_pi(DdReal(1.5)), DdReal(-1.0)) < 1e-31);
  CHECK(rel_err(sin_pi(DdReal(-0.5)), DdReal(-1.0)) < 1e-31);
}

TEST_CASE("floor and round on exact-integer hi") {
  CHECK(to_double(floor(DdReal(3.0, -1e-30))) == 2.0);
  CHECK(to_double(floor(DdReal(3.0, 1e-30))) == 3.0);
  CHECK(to_double(round_nearest(DdReal(2.4999))) == 2.0);
}
