#include "molcoop/qfunction.hpp"

#include <cmath>
#include <numbers>

#include "molcoop/error.hpp"

namespace molcoop {
namespace {

constexpr double kLogSqrtTwoPi = 0.91893853320467274178;  // ln sqrt(2 pi)
constexpr double kAsymptoticCutoff = 8.0;

// ln of the Mills-ratio correction 1 - 1/x^2 + 3/x^4 - 15/x^6 + ...
// truncated at the smallest term. For x >= 8 the truncation error is far
// below double precision.
double log_mills_series(double x) {
  const double inv_x2 = 1.0 / (x * x);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double next = -term * (2.0 * k - 1.0) * inv_x2;
    if (std::abs(next) >= std::abs(term)) break;
    term = next;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return std::log(sum);
}

}  // namespace

double q_function(double x) {
  if (std::isnan(x)) throw DomainError("q_function: NaN argument");
  return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double log_q_function(double x) {
  if (std::isnan(x)) throw DomainError("log_q_function: NaN argument");
  if (x > kAsymptoticCutoff) {
    return -0.5 * x * x - std::log(x) - kLogSqrtTwoPi + log_mills_series(x);
  }
  if (x < 0.0) {
    return std::log1p(-q_function(-x));
  }
  return std::log(q_function(x));
}

double log_normal_pdf(double z) { return -0.5 * z * z - kLogSqrtTwoPi; }

}  // namespace molcoop
