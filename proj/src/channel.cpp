#include "molcoop/channel.hpp"

#include <cmath>
#include <numbers>

#include "molcoop/error.hpp"

namespace molcoop {
namespace {

// (3 / (2 pi e))^{3/2}
const double kPeakConstant = std::pow(3.0 / (2.0 * std::numbers::pi * std::numbers::e), 1.5);

}  // namespace

double um_to_cm(double micrometres) { return micrometres / 1e4; }

double cm_to_um(double centimetres) {
  const double um = centimetres * 1e4;
  const double snapped = std::round(um * 1e3) / 1e3;
  if (std::abs(um - snapped) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(um)) {
    return snapped;
  }
  return um;
}

Medium::Medium(double diffusion_coefficient) : diffusion_coefficient_(diffusion_coefficient) {
  if (!(diffusion_coefficient > 0.0) || !std::isfinite(diffusion_coefficient)) {
    throw DomainError("diffusion coefficient must be positive and finite");
  }
}

Link::Link(double distance_cm) : distance_cm_(distance_cm) {
  if (!(distance_cm > 0.0) || !std::isfinite(distance_cm)) {
    throw DomainError("link distance must be positive and finite");
  }
}

Link Link::from_micrometres(double micrometres) { return Link(um_to_cm(micrometres)); }

MuiModel::MuiModel(double mean, double stddev) : mean_(mean), stddev_(stddev) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw DomainError("interference mean must be non-negative and finite");
  }
  if (!(stddev > 0.0) || !std::isfinite(stddev)) {
    throw DomainError("interference standard deviation must be positive and finite");
  }
}

Emission::Emission(double molecules) : molecules_(molecules) {
  if (!(molecules >= 0.0) || !std::isfinite(molecules)) {
    throw DomainError("molecule count must be non-negative and finite");
  }
}

double impulse_response(double t, const Link& link, const Medium& medium) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw DomainError("impulse_response: time must be positive and finite");
  }
  const double d = link.distance_cm();
  const double dt = medium.diffusion_coefficient() * t;
  const double spread = std::pow(4.0 * std::numbers::pi * dt, -1.5);
  return spread * std::exp(-(d * d) / (4.0 * dt));
}

double peak_time(const Link& link, const Medium& medium) {
  const double d = link.distance_cm();
  return d * d / (6.0 * medium.diffusion_coefficient());
}

double peak_gain(const Link& link) {
  const double d = link.distance_cm();
  return kPeakConstant / (d * d * d);
}

MuiModel mui_from_interferers(int count, const Emission& per_interferer, const Link& distance,
                              double coefficient_of_variation) {
  if (count < 1) {
    throw DomainError("mui_from_interferers: need at least one interferer");
  }
  if (!(coefficient_of_variation > 0.0) || !std::isfinite(coefficient_of_variation)) {
    throw DomainError("mui_from_interferers: coefficient of variation must be positive");
  }
  const double mean = count * peak_concentration(per_interferer, distance);
  return MuiModel(mean, coefficient_of_variation * mean);
}

}  // namespace molcoop
