#pragma once

#include <optional>

#include "fopa/constants.hpp"

namespace fopa {

/// Geometry, attenuation, dispersion and nonlinearity of one fiber span.
/// All members are SI; conversions from lab units live in `units`.
struct FiberSpec {
  double length_m = 0.0;
  double alpha_p = 0.0;  // power attenuation, 1/m
  double alpha_a = 0.0;
  double alpha_s = 0.0;
  double zero_dispersion_wavelength_m = 0.0;
  double dispersion_slope = 0.0;  // s/m^3
  std::optional<double> effective_area_m2;

  bool lossless() const { return alpha_p == 0.0 && alpha_a == 0.0 && alpha_s == 0.0; }
};

/// CW pump. The input pump phase is the phase reference and is fixed to 0.
struct PumpSpec {
  double power_w = 0.0;
  double wavelength_m = 0.0;
};

struct Environment {
  double temperature_k = 300.0;
};

// Throw ValidationError naming the violated invariant.
void validate(const FiberSpec& fiber);
void validate(const PumpSpec& pump);
void validate(const Environment& env);

namespace units {

double db_per_km_to_per_m(double db_per_km);
double per_m_to_db_per_km(double per_m);

/// ps/(nm^2 km) -> s/m^3
inline constexpr double ps_per_nm2_km = 1e-12 / (1e-18 * 1e3);

inline double hz_to_angular(double hz) { return constants::two_pi * hz; }
inline double angular_to_hz(double omega) { return omega / constants::two_pi; }

}  // namespace units

/// Group-velocity dispersion at the pump from D(lambda) = S0 (lambda - lambda0).
double beta2(const FiberSpec& fiber, const PumpSpec& pump);

/// Linear phase mismatch to second order, beta2 * omega^2 (1/m).
double delta_k(const FiberSpec& fiber, const PumpSpec& pump, double omega);

/// Bose-Einstein occupation of the phonon mode at angular detuning `omega`.
double thermal_occupation(double omega, const Environment& env);

/// [1 - exp(-alpha_p z)] / alpha_p, with the lossless limit z.
double effective_length(double alpha_p, double z);

/// gamma * hbar * omega_pump: rescale to photon-flux units.
Complex to_photon_flux_units(Complex gamma, double pump_wavelength_m);
Complex from_photon_flux_units(Complex gamma_bar, double pump_wavelength_m);

/// Photon energy hbar * omega at vacuum wavelength `wavelength_m` (J).
double photon_energy(double wavelength_m);

}  // namespace fopa
