#include "btlab/mp_real.hpp"

#include "btlab/dd_real.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

namespace btlab {

namespace {
thread_local int g_digits = 40;
thread_local mpfr_prec_t g_prec = 150;
}  // namespace

void MpReal::set_working_digits(int digits) {
  if (digits < 20) digits = 20;
  g_digits = digits;
  g_prec = static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 16;
}

int MpReal::working_digits() { return g_digits; }

mpfr_prec_t MpReal::working_prec() { return g_prec; }

MpReal lgamma_pos(const MpReal& x) {
  if (!(mpfr_sgn(x.raw()) > 0)) throw DomainError("MpReal: lgamma_pos requires x > 0");
  MpReal r;
  int sign = 0;
  mpfr_lgamma(r.raw(), &sign, x.raw(), MPFR_RNDN);
  return r;
}

MpReal sin_pi(const MpReal& a) {
  MpReal f = a - floor(a);
  MpReal r;
  mpfr_mul(r.raw(), f.raw(), mp_pi().raw(), MPFR_RNDN);
  mpfr_sin(r.raw(), r.raw(), MPFR_RNDN);
  long m = mpfr_get_si(floor(a).raw(), MPFR_RNDN);
  return (m & 1) ? -r : r;
}

MpReal powi(const MpReal& a, long n) {
  MpReal r;
  mpfr_pow_si(r.raw(), a.raw(), n, MPFR_RNDN);
  return r;
}

MpReal mp_pi() {
  MpReal r;
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}

std::string to_string(const MpReal& a, int digits) {
  char fmt[32];
  std::snprintf(fmt, sizeof fmt, "%%.%dRe", digits - 1);
  std::vector<char> buf(static_cast<size_t>(digits) + 32);
  mpfr_snprintf(buf.data(), buf.size(), fmt, a.raw());
  return buf.data();
}

}  // namespace btlab
