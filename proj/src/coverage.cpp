#include "rbc/coverage.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rbc/error.hpp"

namespace rbc {

namespace {
constexpr double kMillimetersPerMeter = 1000.0;
}

void RbcParams::validate() const {
  if (!(R > 0.0 && R < 1.0)) throw ValidationError("rbc.R must lie in (0, 1)");
  if (!(eta_t > 0.0 && eta_t <= 1.0)) throw ValidationError("rbc.eta_t must lie in (0, 1]");
  if (!(m > 0.0 && m <= 1.0)) throw ValidationError("rbc.m must lie in (0, 1]");
  if (!(a > 0.0)) throw ValidationError("rbc.a must be positive");
  if (!(lambda > 0.0)) throw ValidationError("rbc.lambda must be positive");
  if (!(l >= 0.0)) throw ValidationError("rbc.l must be non-negative");
  if (!std::isfinite(C) || !std::isfinite(alpha) || !std::isfinite(beta))
    throw ValidationError("rbc fit constants must be finite");
}

DerivedConstants DerivedConstants::from(const RbcParams& p) {
  return DerivedConstants{
      .M = -2.0 * std::numbers::pi * p.a * p.a / p.lambda,
      .K = 2.0 * p.m * (1.0 - p.R) * p.alpha * p.eta_t,
      .Z = 1.0 + p.R,
      .U = -(1.0 + p.R) * (p.beta + p.alpha * p.C),
      .N = std::log(p.R),
  };
}

void TransmitterConfig::validate() const {
  if (!(p_in > 0.0)) throw ValidationError("transmitter input power must be positive");
  if (!(h > 0.0)) throw ValidationError("transmitter height must be positive");
  if (!(p_min > 0.0)) throw ValidationError("minimum received power must be positive");
}

double diffraction_loss(double distance_mm, const RbcParams& params) {
  if (!(distance_mm > 0.0))
    throw DomainError("diffraction_loss: distance must be positive, got " + std::to_string(distance_mm));
  const double scale = DerivedConstants::from(params).M;
  return std::exp(scale / (params.l + distance_mm));
}

double attenuation(double distance_mm, const RbcParams& params) {
  const double delta = diffraction_loss(distance_mm, params);
  return 2.0 * (1.0 - params.R) * params.m / ((1.0 + params.R) * (delta - std::log(params.R)));
}

double output_power(double p_in, double distance_mm, const RbcParams& params) {
  if (!(p_in > 0.0)) throw DomainError("output_power: input power must be positive");
  const double f = attenuation(distance_mm, params);
  return params.alpha * (f * params.eta_t * p_in + params.C) + params.beta;
}

double max_distance(double p_in, double p_out, const RbcParams& params) {
  if (!(p_in > 0.0)) throw DomainError("max_distance: input power must be positive");
  const auto k = DerivedConstants::from(params);
  const double denom = k.Z * p_out + k.U;
  const double arg = k.K * p_in / denom + k.N;
  // ln(arg) must be negative for a positive distance.
  if (!(denom > 0.0) || !(arg > 0.0 && arg < 1.0))
    throw UnreachablePowerError("unreachable power level: " + std::to_string(p_out) + " W from " +
                                std::to_string(p_in) + " W input");
  const double d = k.M / std::log(arg) - params.l;
  if (!(d > 0.0))
    throw UnreachablePowerError("unreachable power level: distance collapses below the cavity offset");
  return d;
}

double covering_radius(const TransmitterConfig& cfg, const RbcParams& params) {
  cfg.validate();
  const double reach_m = max_distance(cfg.p_in, cfg.p_min, params) / kMillimetersPerMeter;
  if (reach_m < cfg.h)
    throw HeightExceedsReachError("height " + std::to_string(cfg.h) + " m exceeds slant reach " +
                                  std::to_string(reach_m) + " m");
  return std::sqrt(reach_m * reach_m - cfg.h * cfg.h);
}

}  // namespace rbc
