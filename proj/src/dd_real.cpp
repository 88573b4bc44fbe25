#include "btlab/dd_real.hpp"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <vector>

namespace btlab {

namespace {
constexpr DdReal kPi{0x1.921fb54442d18p+1, 0x1.1a62633145c07p-53};
constexpr DdReal kTwoPi{0x1.921fb54442d18p+2, 0x1.1a62633145c07p-52};
constexpr DdReal kHalfPi{0x1.921fb54442d18p+0, 0x1.1a62633145c07p-54};
constexpr DdReal kLn2{0x1.62e42fefa39efp-1, 0x1.abc9e3b39803fp-56};
constexpr DdReal kLn10{0x1.26bb1bbb55516p+1, -0x1.f48ad494ea3e9p-53};
constexpr DdReal kHalfLn2Pi{0x1.d67f1c864beb5p-1, -0x1.65b5a1b7ff5dfp-55};

constexpr double kTaylorCut = 1e-35;  // relative truncation for kernel series
}  // namespace

DdReal dd_pi() { return kPi; }
DdReal dd_two_pi() { return kTwoPi; }
DdReal dd_half_pi() { return kHalfPi; }
DdReal dd_ln2() { return kLn2; }
DdReal dd_ln10() { return kLn10; }

DdReal sqrt(const DdReal& a) {
  if (a.is_zero()) return DdReal(0.0);
  if (a.is_negative()) throw DomainError("DdReal: sqrt of negative");
  double x0 = std::sqrt(a.hi);
  // one Newton correction in double-double
  DdReal x(x0);
  DdReal r = (a - x * x) / DdReal(2.0 * x0);
  return x + r;
}

DdReal floor(const DdReal& a) {
  double fh = std::floor(a.hi);
  if (fh != a.hi) return DdReal(fh);
  // hi is an integer; the fractional part lives in lo
  return quick_two_sum(fh, std::floor(a.lo));
}

DdReal round_nearest(const DdReal& a) { return floor(a + DdReal(0.5)); }

DdReal exp(const DdReal& a) {
  if (a.is_zero()) return DdReal(1.0);
  double k = std::round(a.hi / kLn2.hi);
  if (k > 1020.0) throw RangeError("DdReal: exp overflow");
  if (k < -1020.0) throw RangeError("DdReal: exp underflow");
  DdReal r = a - DdReal(k) * kLn2;       // |r| <= ln2/2
  DdReal s = ldexp(r, -9);               // |s| <= ln2/1024
  // e = expm1(s) by Taylor, all terms added to full precision
  DdReal term = s;
  DdReal e = s;
  for (int i = 2; i < 24; ++i) {
    term = term * s / DdReal(static_cast<double>(i));
    e += term;
    if (std::fabs(term.hi) < kTaylorCut * std::fabs(e.hi) + 1e-300) break;
  }
  // square up: (1+e)^2 = 1 + (2e + e^2)
  for (int i = 0; i < 9; ++i) e = ldexp(e, 1) + e * e;
  return ldexp(DdReal(1.0) + e, static_cast<int>(k));
}

DdReal log(const DdReal& a) {
  if (a.hi <= 0.0) throw DomainError("DdReal: log of non-positive");
  DdReal x(std::log(a.hi));
  // Newton on exp(x) = a
  for (int i = 0; i < 3; ++i) x += a * exp(-x) - DdReal(1.0);
  return x;
}

namespace {

DdReal sin_taylor(const DdReal& r) {
  DdReal r2 = r * r;
  DdReal term = r;
  DdReal s = r;
  for (int i = 3; i < 40; i += 2) {
    term = -(term * r2) / DdReal(static_cast<double>(i * (i - 1)));
    s += term;
    if (std::fabs(term.hi) < kTaylorCut * std::fabs(s.hi) + 1e-300) break;
  }
  return s;
}

DdReal cos_taylor(const DdReal& r) {
  DdReal r2 = r * r;
  DdReal term(1.0);
  DdReal s(1.0);
  for (int i = 2; i < 40; i += 2) {
    term = -(term * r2) / DdReal(static_cast<double>(i * (i - 1)));
    s += term;
    if (std::fabs(term.hi) < kTaylorCut) break;
  }
  return s;
}

// Reduce a = q*(pi/2) + r with |r| <= pi/4; returns q mod 4.
int trig_reduce(const DdReal& a, DdReal& r) {
  double q = std::round(a.hi / kHalfPi.hi);
  r = a - DdReal(q) * kHalfPi;
  long long qi = static_cast<long long>(q) % 4;
  if (qi < 0) qi += 4;
  return static_cast<int>(qi);
}

}  // namespace

DdReal sin(const DdReal& a) {
  DdReal r;
  switch (trig_reduce(a, r)) {
    case 0: return sin_taylor(r);
    case 1: return cos_taylor(r);
    case 2: return -sin_taylor(r);
    default: return -cos_taylor(r);
  }
}

DdReal cos(const DdReal& a) {
  DdReal r;
  switch (trig_reduce(a, r)) {
    case 0: return cos_taylor(r);
    case 1: return -sin_taylor(r);
    case 2: return -cos_taylor(r);
    default: return sin_taylor(r);
  }
}

DdReal sinh(const DdReal& a) {
  if (std::fabs(a.hi) < 0.5) {
    // Taylor to avoid cancellation of (e^a - e^-a)/2 near zero
    DdReal a2 = a * a;
    DdReal term = a;
    DdReal s = a;
    for (int i = 3; i < 30; i += 2) {
      term = term * a2 / DdReal(static_cast<double>(i * (i - 1)));
      s += term;
      if (std::fabs(term.hi) < kTaylorCut * std::fabs(s.hi) + 1e-300) break;
    }
    return s;
  }
  DdReal e = exp(a);
  return ldexp(e - DdReal(1.0) / e, -1);
}

DdReal cosh(const DdReal& a) {
  DdReal e = exp(abs(a));
  return ldexp(e + DdReal(1.0) / e, -1);
}

DdReal tanh(const DdReal& a) {
  if (a.hi > 30.0) return DdReal(1.0);
  if (a.hi < -30.0) return DdReal(-1.0);
  DdReal e2 = exp(ldexp(a, 1));
  return (e2 - DdReal(1.0)) / (e2 + DdReal(1.0));
}

DdReal powi(const DdReal& a, long n) {
  if (n == 0) return DdReal(1.0);
  bool inv = n < 0;
  unsigned long m = inv ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
  DdReal base = a;
  DdReal acc(1.0);
  while (m) {
    if (m & 1ul) acc *= base;
    m >>= 1;
    if (m) base *= base;
  }
  return inv ? DdReal(1.0) / acc : acc;
}

DdReal pow(const DdReal& a, const DdReal& p) {
  if (a.hi <= 0.0) {
    if (a.is_zero() && p.hi > 0.0) return DdReal(0.0);
    throw DomainError("DdReal: pow requires positive base");
  }
  return exp(p * log(a));
}

DdReal sin_pi(const DdReal& a) {
  DdReal m = floor(a);
  DdReal f = a - m;
  DdReal s = sin(f * kPi);
  long long mi = static_cast<long long>(m.hi);
  return (mi & 1) ? -s : s;
}

namespace {

// B_{2k}/(2k(2k-1)), k = 1..17, from the exact Bernoulli rationals.
const std::vector<DdReal>& stirling_coeffs() {
  static const std::vector<DdReal> c = [] {
    static const double num[] = {1.0,     -1.0,      1.0,          -1.0,
                                 5.0,     -691.0,    7.0,          -3617.0,
                                 43867.0, -174611.0, 854513.0,     -236364091.0,
                                 8553103.0, -23749461029.0, 8615841276005.0,
                                 -7709321041217.0, 2577687858367.0};
    static const double den[] = {6.0,   30.0,  42.0, 30.0, 66.0,  2730.0,
                                 6.0,   510.0, 798.0, 330.0, 138.0, 2730.0,
                                 6.0,   870.0, 14322.0, 510.0, 6.0};
    std::vector<DdReal> v;
    for (int k = 1; k <= 17; ++k) {
      double f = static_cast<double>(2 * k) * (2 * k - 1);
      v.push_back(DdReal(num[k - 1]) / (DdReal(den[k - 1]) * DdReal(f)));
    }
    return v;
  }();
  return c;
}

}  // namespace

DdReal lgamma_pos(const DdReal& x) {
  if (x.hi <= 0.0) throw DomainError("DdReal: lgamma_pos requires x > 0");
  DdReal y = x;
  DdReal shift(0.0);
  while (y.hi < 40.0) {
    shift += log(y);
    y += DdReal(1.0);
  }
  DdReal ly = log(y);
  DdReal inv = DdReal(1.0) / y;
  DdReal inv2 = inv * inv;
  DdReal ser(0.0);
  DdReal p = inv;
  for (const DdReal& ck : stirling_coeffs()) {
    ser += ck * p;
    p *= inv2;
  }
  return (y - DdReal(0.5)) * ly - y + kHalfLn2Pi + ser - shift;
}

// ---- decimal I/O ----

std::string to_string(const DdReal& a, int digits) {
  if (!a.is_finite()) return "nan";
  if (a.is_zero()) return "0";
  std::string out;
  DdReal x = a;
  if (x.is_negative()) {
    out.push_back('-');
    x = -x;
  }
  int e10 = static_cast<int>(std::floor(std::log10(x.hi)));
  x = x * powi(DdReal(10.0), -static_cast<long>(e10));
  if (x.hi >= 10.0) {
    x /= DdReal(10.0);
    ++e10;
  } else if (x.hi < 1.0) {
    x *= DdReal(10.0);
    --e10;
  }
  std::vector<int> d(static_cast<size_t>(digits) + 1);
  for (int i = 0; i <= digits; ++i) {
    int di = static_cast<int>(x.hi);
    if (di < 0) di = 0;
    if (di > 9) di = 9;
    d[static_cast<size_t>(i)] = di;
    x = (x - DdReal(static_cast<double>(di))) * DdReal(10.0);
  }
  if (d[static_cast<size_t>(digits)] >= 5) {  // round half up on the guard digit
    int i = digits - 1;
    while (i >= 0 && ++d[static_cast<size_t>(i)] == 10) {
      d[static_cast<size_t>(i)] = 0;
      --i;
    }
    if (i < 0) {
      d.insert(d.begin(), 1);
      ++e10;
    }
  }
  out.push_back(static_cast<char>('0' + d[0]));
  out.push_back('.');
  for (int i = 1; i < digits; ++i) out.push_back(static_cast<char>('0' + d[static_cast<size_t>(i)]));
  out += "e";
  out += std::to_string(e10);
  return out;
}

DdReal from_string(const std::string& s) {
  size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
  DdReal val(0.0);
  long frac = 0;
  bool seen_dot = false, seen_digit = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c >= '0' && c <= '9') {
      val = val * DdReal(10.0) + DdReal(static_cast<double>(c - '0'));
      if (seen_dot) ++frac;
      seen_digit = true;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw DomainError("DdReal: unparsable number '" + s + "'");
  long ex = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ex = std::strtol(s.c_str() + i + 1, nullptr, 10);
  } else if (i < s.size()) {
    throw DomainError("DdReal: trailing junk in '" + s + "'");
  }
  val *= powi(DdReal(10.0), ex - frac);
  return neg ? -val : val;
}

std::string hex_dump(const DdReal& a) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "(%a, %a)", a.hi, a.lo);
  return buf;
}

}  // namespace btlab
