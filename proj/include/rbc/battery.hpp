#pragma once

#include <array>
#include <string>
#include <vector>

#include "rbc/rng.hpp"

namespace rbc {

/// Receiver battery capacity. Energies everywhere share the unit of e_total.
struct BatterySpec {
  double e_total{6.3865};
  std::string nominal{"4.2 V / 1 A, 1000 mAh"};

  void validate() const;

  friend bool operator==(const BatterySpec&, const BatterySpec&) = default;
};

/// Rational charging-profile fit
///   P_c(x) = (b1 x^4 + b2 x^3 + b3 x^2 + b4 x + b5) / (x^5 + a1 x^4 + a2 x^3 + a3 x^2 + a4 x + a5)
/// numerator holds b1..b5 and denominator a1..a5 (leading x^5 coefficient is 1).
struct ChargeFitCoefficients {
  std::array<double, 5> numerator{-21.65, 141.2, -11.5, 0.1526, 0.008358};
  std::array<double, 5> denominator{-10.7, 41.01, -1.509, -0.3997, 0.0362};

  friend bool operator==(const ChargeFitCoefficients&, const ChargeFitCoefficients&) = default;
};

/// Categorical discharge: status i draws powers[i] watts with probability probs[i].
/// Defaults are standby, video, social, game, music.
struct DischargeModel {
  std::vector<double> powers{0.0076, 0.4289, 0.4348, 0.6766, 0.1706};
  std::vector<double> probs{0.2839, 0.1235, 0.2469, 0.1235, 0.2222};

  void validate() const;
  double mean() const;
  double max_power() const;

  friend bool operator==(const DischargeModel&, const DischargeModel&) = default;
};

/// Everything a receiver needs to charge and discharge.
struct BatteryModel {
  BatterySpec spec;
  ChargeFitCoefficients fit;
  DischargeModel discharge;

  void validate() const;

  friend bool operator==(const BatteryModel&, const BatteryModel&) = default;
};

struct ReceiverState {
  double e_r{0.0};
};

/// Preferred charging power (W) at residual energy x in [0, e_total], clamped at zero.
/// Throws DomainError outside the domain and FitSingularityError where the denominator vanishes.
double preferred_power(double x, const ChargeFitCoefficients& coeffs, double e_total);

/// Largest preferred_power over a dense sample of [0, e_total].
double max_preferred_power(const ChargeFitCoefficients& coeffs, double e_total);

double sample_discharge(const DischargeModel& model, Rng& rng);

/// State of charge in percent.
double soc(const ReceiverState& state, const BatterySpec& spec);

}  // namespace rbc
