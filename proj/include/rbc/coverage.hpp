#pragma once

// Resonant-beam power attenuation and the planar coverage footprint of one
// transmitter.  Optical lengths (a, lambda, l, d) are millimeters; the
// covering radius and transmitter height are meters.

namespace rbc {

/// Optical and fit constants of a transmitter/receiver pair.
struct RbcParams {
  double a{1.5};            // retro-reflector radius, mm
  double lambda{1.064e-3};  // beam wavelength, mm
  double m{0.8};            // gain-medium diameter to aperture ratio
  double eta_t{0.2849};     // input to intra-cavity beam efficiency
  double R{0.88};           // output mirror reflectivity
  double C{-5.64};          // beam-power offset, W
  double alpha{0.3487};     // output fit slope
  double beta{-1.535};      // output fit offset, W
  double l{0.0};            // gain medium to reflector 1, mm

  void validate() const;

  friend bool operator==(const RbcParams&, const RbcParams&) = default;
};

/// Composite constants of the closed-form distance inverse. Always recomputed from RbcParams.
struct DerivedConstants {
  double M;  // -2 pi a^2 / lambda, mm
  double K;  // 2 m (1 - R) alpha eta_t
  double Z;  // 1 + R
  double U;  // -(1 + R)(beta + alpha C)
  double N;  // ln R

  static DerivedConstants from(const RbcParams& p);
};

struct TransmitterConfig {
  double p_in{200.0};  // electrical input power, W
  double h{3.0};       // mounting height above the receiver plane, m
  double p_min{5.0};   // minimum acceptable received power, W

  void validate() const;

  friend bool operator==(const TransmitterConfig&, const TransmitterConfig&) = default;
};

/// Cavity diffraction loss exp(-2 pi a^2 / (lambda (l + d))). Throws DomainError for d <= 0.
double diffraction_loss(double distance_mm, const RbcParams& params);

/// Distance attenuation factor f(d); strictly decreasing in d.
double attenuation(double distance_mm, const RbcParams& params);

/// Received electrical power. Not clamped: large distances give negative values.
double output_power(double p_in, double distance_mm, const RbcParams& params);

/// Slant distance (mm) at which output_power(p_in, d) == p_out.
/// Throws UnreachablePowerError when no positive distance delivers p_out.
double max_distance(double p_in, double p_out, const RbcParams& params);

/// Planar radius (m) around the transmitter's ground point where received power >= p_min.
double covering_radius(const TransmitterConfig& cfg, const RbcParams& params);

}  // namespace rbc
