#pragma once

// Double-double arithmetic: a real number stored as an unevaluated sum of
// two IEEE doubles (hi + lo), giving ~31-32 significant decimal digits.
// hi is the correctly rounded double nearest hi+lo and |lo| <= ulp(hi)/2.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace btlab {

struct DdReal {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DdReal() = default;
  constexpr DdReal(double h) : hi(h), lo(0.0) {}
  constexpr DdReal(double h, double l) : hi(h), lo(l) {}
  explicit DdReal(int v) : hi(static_cast<double>(v)), lo(0.0) {}
  explicit DdReal(long v) : hi(static_cast<double>(v)), lo(0.0) {}

  bool is_zero() const { return hi == 0.0; }
  bool is_negative() const { return hi < 0.0; }
  bool is_finite() const { return std::isfinite(hi) && std::isfinite(lo); }

  DdReal operator-() const { return DdReal(-hi, -lo); }

  DdReal& operator+=(const DdReal& b);
  DdReal& operator-=(const DdReal& b);
  DdReal& operator*=(const DdReal& b);
  DdReal& operator/=(const DdReal& b);
};

struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};
struct RangeError : std::runtime_error {
  explicit RangeError(const std::string& what) : std::runtime_error(what) {}
};

// ---- error-free transforms ----

inline DdReal two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return DdReal(s, err);
}

inline DdReal quick_two_sum(double a, double b) {
  double s = a + b;
  double err = b - (s - a);
  return DdReal(s, err);
}

inline DdReal two_prod(double a, double b) {
  double p = a * b;
  double err = std::fma(a, b, -p);
  return DdReal(p, err);
}

// ---- basic arithmetic ----

inline DdReal operator+(const DdReal& a, const DdReal& b) {
  DdReal s = two_sum(a.hi, b.hi);
  DdReal t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline DdReal operator-(const DdReal& a, const DdReal& b) { return a + (-b); }

inline DdReal operator*(const DdReal& a, const DdReal& b) {
  DdReal p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline DdReal operator/(const DdReal& a, const DdReal& b) {
  if (b.hi == 0.0) throw DomainError("DdReal: division by zero");
  double q1 = a.hi / b.hi;
  DdReal r = a - DdReal(q1) * b;
  double q2 = r.hi / b.hi;
  r = r - DdReal(q2) * b;
  double q3 = r.hi / b.hi;
  DdReal q = quick_two_sum(q1, q2);
  return q + DdReal(q3);
}

inline DdReal& DdReal::operator+=(const DdReal& b) { return *this = *this + b; }
inline DdReal& DdReal::operator-=(const DdReal& b) { return *this = *this - b; }
inline DdReal& DdReal::operator*=(const DdReal& b) { return *this = *this * b; }
inline DdReal& DdReal::operator/=(const DdReal& b) { return *this = *this / b; }

// Comparison on the exact value hi + lo.
inline int compare(const DdReal& a, const DdReal& b) {
  if (a.hi < b.hi) return -1;
  if (a.hi > b.hi) return 1;
  if (a.lo < b.lo) return -1;
  if (a.lo > b.lo) return 1;
  return 0;
}

inline bool operator<(const DdReal& a, const DdReal& b) { return compare(a, b) < 0; }
inline bool operator>(const DdReal& a, const DdReal& b) { return compare(a, b) > 0; }
inline bool operator<=(const DdReal& a, const DdReal& b) { return compare(a, b) <= 0; }
inline bool operator>=(const DdReal& a, const DdReal& b) { return compare(a, b) >= 0; }
inline bool operator==(const DdReal& a, const DdReal& b) { return compare(a, b) == 0; }
inline bool operator!=(const DdReal& a, const DdReal& b) { return compare(a, b) != 0; }

inline DdReal abs(const DdReal& a) { return a.hi < 0.0 ? -a : a; }
inline double to_double(const DdReal& a) { return a.hi + a.lo; }

DdReal sqrt(const DdReal& a);

// Multiply by an exact power of two.
inline DdReal ldexp(const DdReal& a, int k) {
  return DdReal(std::ldexp(a.hi, k), std::ldexp(a.lo, k));
}

// ---- elementary functions ----

DdReal exp(const DdReal& a);
DdReal log(const DdReal& a);
DdReal sin(const DdReal& a);
DdReal cos(const DdReal& a);
DdReal sinh(const DdReal& a);
DdReal cosh(const DdReal& a);
DdReal tanh(const DdReal& a);
DdReal pow(const DdReal& a, const DdReal& p);
DdReal powi(const DdReal& a, long n);

// ln Gamma(x) for x > 0; upward shift plus Stirling series.
DdReal lgamma_pos(const DdReal& x);

DdReal dd_pi();
DdReal dd_two_pi();
DdReal dd_half_pi();
DdReal dd_ln2();
DdReal dd_ln10();

// sin(pi*a) with the integer part of a reduced exactly.
DdReal sin_pi(const DdReal& a);

DdReal floor(const DdReal& a);
DdReal round_nearest(const DdReal& a);

// ---- decimal I/O (32 significant digits) and debug dump ----

std::string to_string(const DdReal& a, int digits = 32);
DdReal from_string(const std::string& s);
std::string hex_dump(const DdReal& a);

}  // namespace btlab
