#include "rbc/battery.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rbc/error.hpp"

namespace rbc {

void BatterySpec::validate() const {
  if (!(e_total > 0.0) || !std::isfinite(e_total)) throw ValidationError("battery.e_total must be positive");
}

void DischargeModel::validate() const {
  if (powers.empty() || powers.size() != probs.size())
    throw ValidationError("discharge powers and probabilities must be non-empty and equally sized");
  for (double p : probs)
    if (!(p >= 0.0)) throw ValidationError("discharge probabilities must be non-negative");
  for (double w : powers)
    if (!(w >= 0.0) || !std::isfinite(w)) throw ValidationError("discharge powers must be non-negative");
  const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-6)
    throw ValidationError("discharge probabilities sum to " + std::to_string(total) + ", expected 1");
}

double DischargeModel::mean() const {
  return std::inner_product(powers.begin(), powers.end(), probs.begin(), 0.0);
}

double DischargeModel::max_power() const { return *std::max_element(powers.begin(), powers.end()); }

void BatteryModel::validate() const {
  spec.validate();
  discharge.validate();
}

double preferred_power(double x, const ChargeFitCoefficients& coeffs, double e_total) {
  if (!(x >= 0.0 && x <= e_total))
    throw DomainError("preferred_power: energy " + std::to_string(x) + " outside [0, " +
                      std::to_string(e_total) + "]");
  double num = 0.0;
  for (double c : coeffs.numerator) num = num * x + c;
  double den = 1.0;
  for (double c : coeffs.denominator) den = den * x + c;
  if (std::abs(den) < 1e-12)
    throw FitSingularityError("preferred_power: fit singularity at energy " + std::to_string(x));
  return std::max(0.0, num / den);
}

double max_preferred_power(const ChargeFitCoefficients& coeffs, double e_total) {
  constexpr int kSamples = 4096;
  double best = 0.0;
  for (int i = 0; i <= kSamples; ++i)
    best = std::max(best, preferred_power(e_total * i / kSamples, coeffs, e_total));
  return best;
}

double sample_discharge(const DischargeModel& model, Rng& rng) {
  const double u = unit_uniform(rng);
  double cumulative = 0.0;
  for (std::size_t i = 0; i < model.probs.size(); ++i) {
    cumulative += model.probs[i];
    if (u < cumulative) return model.powers[i];
  }
  // u fell into the rounding gap above the last cumulative sum
  for (std::size_t i = model.probs.size(); i-- > 0;)
    if (model.probs[i] > 0.0) return model.powers[i];
  return model.powers.back();
}

double soc(const ReceiverState& state, const BatterySpec& spec) { return 100.0 * state.e_r / spec.e_total; }

}  // namespace rbc
