#pragma once

#include "fopa/fiber.hpp"
#include "fopa/raman.hpp"

namespace fopa {

/// How the linear phase mismatch is obtained at a given detuning.
struct PhaseMismatch {
  enum class Kind {
    Dispersion,    // beta2 * Omega^2 from the fiber
    Fixed,         // constant value (1/m), e.g. 0 for a dispersionless model
    InputMatched,  // -2 * fraction * Re{gamma_Omega} * I_p(0)
  };
  Kind kind = Kind::Dispersion;
  double value = 0.0;  // Fixed: dk in 1/m; InputMatched: fraction

  static PhaseMismatch dispersion() { return {Kind::Dispersion, 0.0}; }
  static PhaseMismatch fixed(double dk) { return {Kind::Fixed, dk}; }
  static PhaseMismatch input_matched(double fraction = 1.0) { return {Kind::InputMatched, fraction}; }
};

/// Complete physical description of one amplifier configuration.
struct Amplifier {
  FiberSpec fiber;
  PumpSpec pump;
  RamanProfile raman;
  Environment env;
  PhaseMismatch mismatch;
};

void validate(const Amplifier& amp);

/// Everything the mean-field and noise solvers need at one detuning, in
/// Watt units (gamma in 1/(W m), pump power in W).
struct Coupling {
  double gamma0 = 0.0;
  Complex gamma_pos;  // gamma_{+Omega}
  Complex gamma_neg;  // gamma_{-Omega}
  double delta_k = 0.0;
  double pump_power = 0.0;  // I_p(0)
  double alpha_p = 0.0, alpha_a = 0.0, alpha_s = 0.0;
  double length = 0.0;  // fiber length bounding z

  bool lossless() const { return alpha_p == 0.0 && alpha_a == 0.0 && alpha_s == 0.0; }
};

double resolve_delta_k(const Amplifier& amp, double omega);
Coupling couple(const Amplifier& amp, double omega);

/// Nonlinear phase shift gamma0 * I_p(0) * L_eff.
double nonlinear_phase(const Amplifier& amp);

}  // namespace fopa
