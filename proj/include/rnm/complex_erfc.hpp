#pragma once

#include "rnm/types.hpp"

namespace rnm {

// Faddeeva function w(z) = e^{-z^2} erfc(-iz) on the closed upper half plane.
Complex faddeeva_w(Complex z);

// Complementary error function of a complex argument. The value can exceed
// the double range when |Im zeta| is large; use erfc_c_log there.
Complex erfc_c(Complex zeta);

// erfc in log-polar form: value = exp(log_abs) * (cos(arg) + i sin(arg)).
// The -zeta^2 phase is carried unreduced, so |arg| can far exceed pi, but
// method switchovers may shift it by whole turns: arg is only meaningful
// mod 2*pi.
struct LogPolar {
  double log_abs;
  double arg;
  Complex value() const;
};
LogPolar erfc_c_log(Complex zeta);

}  // namespace rnm
