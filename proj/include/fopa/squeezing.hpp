#pragma once

#include <memory>

#include "fopa/noise.hpp"

namespace fopa {

/// Two-frequency local oscillator: anti-Stokes intensity fraction and sum phase.
struct LocalOscillator {
  double y_a = 0.5;
  double theta_sum = 0.0;
};

struct SqueezingResult {
  double s = 1.0;
  double s_db = 0.0;
  LocalOscillator lo;
};

/// Homodyne variance with the pump on relative to vacuum. Lossless fibers only.
double squeezing_parameter(const TransferMatrix& tm, const NoiseIntegrals& ni, double n_th,
                           const LocalOscillator& lo);

LocalOscillator optimal_lo(const TransferMatrix& tm, const NoiseIntegrals& ni, double n_th);

/// Minimum of squeezing_parameter over all LOs. When every LO gives the same
/// variance (pump off) the reported LO is the balanced one at zero phase.
SqueezingResult optimal_squeezing(const TransferMatrix& tm, const NoiseIntegrals& ni, double n_th);

/// Full-pipeline optimal squeezing at detuning omega for a lossless fiber.
///
/// The homodyne variance is assembled as a sum of positive semidefinite
/// contributions (vacuum inputs plus the quadrature-weighted Raman noise) and
/// its minimum eigenvalue is taken in 60-digit arithmetic. This stays accurate
/// when the gain is so large that the double-precision form above cancels
/// catastrophically (e.g. phase-matched operation at phi_NL ~ 40).
SqueezingResult optimal_squeezing(const Amplifier& amp, double omega,
                                  const QuadratureControl& quad = {});

/// Extended-precision homodyne variance of a lossless amplifier at one
/// detuning. Building it does the quadrature; the minimizations are cheap.
class HomodyneVariance {
 public:
  HomodyneVariance(const Amplifier& amp, double omega, const QuadratureControl& quad = {});
  SqueezingResult optimal() const;
  /// Minimum over the LO phase at anti-Stokes fraction y_a.
  SqueezingResult fixed_split(double y_a) const;

 private:
  struct Form;
  std::shared_ptr<const Form> form_;
};

/// Same extended-precision form, minimized over the LO phase only at a fixed
/// anti-Stokes fraction (y_a = 0.5 is the equal-split LO).
SqueezingResult squeezing_fixed_split(const Amplifier& amp, double omega, double y_a,
                                      const QuadratureControl& quad = {});
/// Optimal squeezing in the Omega -> 0, dk = 0 limit; c = raman_slope_constant.
double squeezing_degenerate_limit(double phi_nl, double raman_slope_const);

}  // namespace fopa
