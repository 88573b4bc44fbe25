#pragma once

// Thin RAII wrapper over MPFR used as an escalated-precision scalar by the
// determinant layer at large t, where the Toeplitz conditioning (~e^t)
// exceeds the double-double budget. Precision is a thread-local setting
// applied to values at construction.

#include <mpfr.h>

#include <string>

namespace btlab {

class MpReal {
 public:
  MpReal() { mpfr_init2(v_, working_prec()); mpfr_set_zero(v_, 1); }
  MpReal(double d) { mpfr_init2(v_, working_prec()); mpfr_set_d(v_, d, MPFR_RNDN); }
  explicit MpReal(int d) : MpReal(static_cast<double>(d)) {}
  MpReal(const MpReal& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  MpReal(MpReal&& o) noexcept {
    mpfr_init2(v_, 2);
    mpfr_swap(v_, o.v_);
  }
  MpReal& operator=(const MpReal& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  MpReal& operator=(MpReal&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~MpReal() { mpfr_clear(v_); }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  // Decimal digits of the thread's working precision; applied at construction.
  static void set_working_digits(int digits);
  static int working_digits();
  static mpfr_prec_t working_prec();

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_negative() const { return mpfr_sgn(v_) < 0; }

  MpReal operator-() const {
    MpReal r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
  }

  MpReal& operator+=(const MpReal& b) { mpfr_add(v_, v_, b.v_, MPFR_RNDN); return *this; }
  MpReal& operator-=(const MpReal& b) { mpfr_sub(v_, v_, b.v_, MPFR_RNDN); return *this; }
  MpReal& operator*=(const MpReal& b) { mpfr_mul(v_, v_, b.v_, MPFR_RNDN); return *this; }
  MpReal& operator/=(const MpReal& b) { mpfr_div(v_, v_, b.v_, MPFR_RNDN); return *this; }

 private:
  mpfr_t v_;
};

inline MpReal operator+(MpReal a, const MpReal& b) { return a += b; }
inline MpReal operator-(MpReal a, const MpReal& b) { return a -= b; }
inline MpReal operator*(MpReal a, const MpReal& b) { return a *= b; }
inline MpReal operator/(MpReal a, const MpReal& b) { return a /= b; }

inline int compare(const MpReal& a, const MpReal& b) { return mpfr_cmp(a.raw(), b.raw()); }
inline bool operator<(const MpReal& a, const MpReal& b) { return compare(a, b) < 0; }
inline bool operator>(const MpReal& a, const MpReal& b) { return compare(a, b) > 0; }
inline bool operator<=(const MpReal& a, const MpReal& b) { return compare(a, b) <= 0; }
inline bool operator>=(const MpReal& a, const MpReal& b) { return compare(a, b) >= 0; }
inline bool operator==(const MpReal& a, const MpReal& b) { return compare(a, b) == 0; }
inline bool operator!=(const MpReal& a, const MpReal& b) { return compare(a, b) != 0; }

#define BTLAB_MP_UNARY(name, fn)              \
  inline MpReal name(const MpReal& a) {       \
    MpReal r;                                 \
    fn(r.raw(), a.raw(), MPFR_RNDN);          \
    return r;                                 \
  }
BTLAB_MP_UNARY(abs, mpfr_abs)
BTLAB_MP_UNARY(sqrt, mpfr_sqrt)
BTLAB_MP_UNARY(exp, mpfr_exp)
BTLAB_MP_UNARY(log, mpfr_log)
BTLAB_MP_UNARY(sin, mpfr_sin)
BTLAB_MP_UNARY(cos, mpfr_cos)
BTLAB_MP_UNARY(sinh, mpfr_sinh)
BTLAB_MP_UNARY(cosh, mpfr_cosh)
BTLAB_MP_UNARY(tanh, mpfr_tanh)
BTLAB_MP_UNARY(floor, mpfr_rint_floor)
#undef BTLAB_MP_UNARY

inline double to_double(const MpReal& a) { return mpfr_get_d(a.raw(), MPFR_RNDN); }

MpReal lgamma_pos(const MpReal& x);
MpReal sin_pi(const MpReal& a);
MpReal powi(const MpReal& a, long n);
MpReal mp_pi();
std::string to_string(const MpReal& a, int digits);

}  // namespace btlab
