#include "fopa/fiber.hpp"

#include <cmath>
#include <numbers>

#include "fopa/errors.hpp"

namespace fopa {

void validate(const FiberSpec& fiber) {
  if (!(fiber.length_m > 0.0) || !std::isfinite(fiber.length_m))
    throw ValidationError("fiber length must be > 0");
  if (!(fiber.alpha_p >= 0.0) || !(fiber.alpha_a >= 0.0) || !(fiber.alpha_s >= 0.0))
    throw ValidationError("fiber attenuation coefficients must be >= 0");
  if (!(fiber.zero_dispersion_wavelength_m >= 0.0))
    throw ValidationError("zero-dispersion wavelength must be >= 0");
  if (!std::isfinite(fiber.dispersion_slope))
    throw ValidationError("dispersion slope must be finite");
  if (fiber.effective_area_m2 && !(*fiber.effective_area_m2 > 0.0))
    throw ValidationError("effective area must be > 0");
}

void validate(const PumpSpec& pump) {
  if (!(pump.power_w >= 0.0) || !std::isfinite(pump.power_w))
    throw ValidationError("pump power must be >= 0");
  if (!(pump.wavelength_m > 0.0))
    throw ValidationError("pump wavelength must be > 0");
}

void validate(const Environment& env) {
  if (!(env.temperature_k > 0.0))
    throw ValidationError("temperature must be > 0");
}

namespace units {

double db_per_km_to_per_m(double db_per_km) {
  return db_per_km * std::numbers::ln10 / (10.0 * 1000.0);
}

double per_m_to_db_per_km(double per_m) {
  return per_m * (10.0 * 1000.0) / std::numbers::ln10;
}

}  // namespace units

double beta2(const FiberSpec& fiber, const PumpSpec& pump) {
  const double lp = pump.wavelength_m;
  const double dispersion = fiber.dispersion_slope * (lp - fiber.zero_dispersion_wavelength_m);
  return -lp * lp * dispersion / (constants::two_pi * constants::speed_of_light);
}

double delta_k(const FiberSpec& fiber, const PumpSpec& pump, double omega) {
  return beta2(fiber, pump) * omega * omega;
}

double thermal_occupation(double omega, const Environment& env) {
  if (!(omega > 0.0)) throw NonPositiveDetuning("thermal occupation needs omega > 0");
  const double x = constants::hbar * omega / (constants::boltzmann * env.temperature_k);
  if (x < 1e-6) return 1.0 / x - 0.5 + x / 12.0;
  return 1.0 / std::expm1(x);
}

double effective_length(double alpha_p, double z) {
  if (alpha_p == 0.0) return z;
  return -std::expm1(-alpha_p * z) / alpha_p;
}

double photon_energy(double wavelength_m) {
  return constants::hbar * constants::two_pi * constants::speed_of_light / wavelength_m;
}

Complex to_photon_flux_units(Complex gamma, double pump_wavelength_m) {
  return gamma * photon_energy(pump_wavelength_m);
}

Complex from_photon_flux_units(Complex gamma_bar, double pump_wavelength_m) {
  return gamma_bar / photon_energy(pump_wavelength_m);
}

}  // namespace fopa
