#pragma once

namespace molcoop {

/// Upper tail of the standard normal, Q(x) = P(Z > x). Throws DomainError on NaN.
double q_function(double x);

/// ln Q(x), finite for every finite x. Uses the asymptotic expansion of the
/// Mills ratio above x = 8 so that arguments far past the double underflow
/// point of Q itself (x ~ 38.5) still produce usable log-probabilities.
double log_q_function(double x);

/// ln of the standard normal density.
double log_normal_pdf(double z);

}  // namespace molcoop
