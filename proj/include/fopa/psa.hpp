#pragma once

#include "fopa/mean_field.hpp"

namespace fopa {

/// Coherent anti-Stokes/Stokes inputs in photon-flux units.
struct SignalInput {
  Complex zeta_a;
  Complex zeta_s;

  /// Unit total power split as x = |zeta_a|^2 / total, sum phase on zeta_a.
  static SignalInput from_split(double x, double theta_sum, double total = 1.0);

  double total_power() const { return std::norm(zeta_a) + std::norm(zeta_s); }
  double fraction_a() const { return std::norm(zeta_a) / total_power(); }
  double sum_phase() const { return std::arg(zeta_a) + std::arg(zeta_s); }
};

enum class PsaMode { Amplify, Deamplify };

/// Total output power over total input power.
double phase_sensitive_gain(const TransferMatrix& tm, const SignalInput& sig);

/// Sum phase theta_a + theta_s extremizing the gain, wrapped to (-pi, pi].
double optimal_sum_phase(const TransferMatrix& tm, PsaMode mode);

/// Anti-Stokes input fraction extremizing the gain at the optimal sum phase.
double optimal_power_split(const TransferMatrix& tm, PsaMode mode);

double max_psa_gain(const TransferMatrix& tm);
double min_psd_gain(const TransferMatrix& tm);

/// Unit-power input at the optimal phase and split.
SignalInput optimal_input(const TransferMatrix& tm, PsaMode mode);

/// Wraps an angle to (-pi, pi].
double wrap_angle(double theta);

}  // namespace fopa
