#pragma once

// Free-space diffusion channel between point-source emitters and receivers.
// All lengths are centimetres, time in seconds, concentrations in
// molecules/cm^3. Micrometre helpers exist for the configuration layer.

namespace molcoop {

inline constexpr double kCentimetresPerMicrometre = 1e-4;

double um_to_cm(double micrometres);

/// Inverse of um_to_cm. Values that originated on the 1e-3 um grid come back
/// bit-exact; anything else is returned at full precision.
double cm_to_um(double centimetres);

class Medium {
 public:
  /// D in cm^2/s, must be positive and finite.
  explicit Medium(double diffusion_coefficient);

  double diffusion_coefficient() const noexcept { return diffusion_coefficient_; }

 private:
  double diffusion_coefficient_;
};

class Link {
 public:
  explicit Link(double distance_cm);
  static Link from_micrometres(double micrometres);

  double distance_cm() const noexcept { return distance_cm_; }
  double distance_um() const { return cm_to_um(distance_cm_); }

 private:
  double distance_cm_;
};

/// Gaussian multi-user interference seen by one receiving surface.
class MuiModel {
 public:
  MuiModel(double mean, double stddev);

  double mean() const noexcept { return mean_; }
  double stddev() const noexcept { return stddev_; }
  double variance() const noexcept { return stddev_ * stddev_; }

 private:
  double mean_;
  double stddev_;
};

/// Number of molecules released for symbol 1. Real-valued on purpose.
class Emission {
 public:
  explicit Emission(double molecules);

  double molecules() const noexcept { return molecules_; }

 private:
  double molecules_;
};

/// Green's function of 3-D free diffusion from an impulsive point source,
/// per released molecule. Returns exactly 0 when the exponential underflows.
double impulse_response(double t, const Link& link, const Medium& medium);

/// Time at which impulse_response peaks: d^2 / (6D).
double peak_time(const Link& link, const Medium& medium);

/// Peak concentration per molecule, d^-3 (3 / (2 pi e))^{3/2}. Independent of D.
double peak_gain(const Link& link);

/// Peak concentration contributed by `emission` over `link`.
inline double peak_concentration(const Emission& emission, const Link& link) {
  return emission.molecules() * peak_gain(link);
}

/// Gaussian interference equivalent to `count` identical interferers each
/// releasing `per_interferer` molecules at `distance`; stddev = cov * mean.
MuiModel mui_from_interferers(int count, const Emission& per_interferer, const Link& distance,
                              double coefficient_of_variation);

}  // namespace molcoop
