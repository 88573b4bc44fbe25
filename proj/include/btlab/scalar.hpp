#pragma once

#include "btlab/dd_real.hpp"
#include "btlab/mp_real.hpp"

namespace btlab {

// Per-scalar constants the templated numerics need.
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<DdReal> {
  static DdReal pi() { return dd_pi(); }
  static int digits() { return 31; }
};

template <>
struct ScalarOps<MpReal> {
  static MpReal pi() { return mp_pi(); }
  static int digits() { return MpReal::working_digits(); }
};

}  // namespace btlab
