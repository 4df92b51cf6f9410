#pragma once

namespace rnm {

// Regularized lower incomplete gamma function P(a,x) = gamma(a,x)/Gamma(a).
// Series expansion for x < a+1, continued fraction otherwise.
double gamma_p(double a, double x);

// Regularized upper incomplete gamma function Q(a,x) = 1 - P(a,x).
double gamma_q(double a, double x);

}  // namespace rnm
