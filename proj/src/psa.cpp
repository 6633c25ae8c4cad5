#include "fopa/psa.hpp"

#include <cmath>

#include "fopa/errors.hpp"

namespace fopa {

namespace {

// The gain is the Rayleigh quotient of T^H T on (zeta_a, zeta_s*):
// [[a, K*], [K, b]] with K the phase-sensitive cross coefficient.
struct GainForm {
  double a, b;
  Complex K;
  double radical() const { return std::sqrt((a - b) * (a - b) + 4.0 * std::norm(K)); }
};

GainForm gain_form(const TransferMatrix& tm) {
  return {std::norm(tm.mu_a) + std::norm(tm.nu_s), std::norm(tm.nu_a) + std::norm(tm.mu_s),
          tm.mu_s * std::conj(tm.nu_s) + tm.mu_a * std::conj(tm.nu_a)};
}

}  // namespace

double wrap_angle(double theta) {
  double w = std::remainder(theta, constants::two_pi);
  if (w <= -constants::pi) w += constants::two_pi;
  return w;
}

SignalInput SignalInput::from_split(double x, double theta_sum, double total) {
  if (!(x >= 0.0 && x <= 1.0)) throw OutOfRange("power split must lie in [0, 1]");
  return {std::polar(std::sqrt(x * total), theta_sum), Complex(std::sqrt((1.0 - x) * total), 0.0)};
}

double phase_sensitive_gain(const TransferMatrix& tm, const SignalInput& sig) {
  const double pa = std::norm(sig.zeta_a), ps = std::norm(sig.zeta_s);
  if (!(pa + ps > 0.0)) throw ZeroInput("gain needs a nonzero input");
  const GainForm g = gain_form(tm);
  const double cross = 2.0 * (g.K * sig.zeta_a * sig.zeta_s).real();
  return (g.a * pa + g.b * ps + cross) / (pa + ps);
}

double optimal_sum_phase(const TransferMatrix& tm, PsaMode mode) {
  const Complex K = gain_form(tm).K;
  if (std::abs(K) < 1e-300) throw DegenerateExtremum("gain has no phase sensitivity");
  const double theta = -std::arg(K);
  return wrap_angle(mode == PsaMode::Amplify ? theta : theta + constants::pi);
}

double optimal_power_split(const TransferMatrix& tm, PsaMode mode) {
  const GainForm g = gain_form(tm);
  const double rad = g.radical();
  if (rad < 1e-300) throw DegenerateExtremum("gain is independent of the power split");
  const double tilt = (g.a - g.b) / rad;
  return 0.5 * (1.0 + (mode == PsaMode::Amplify ? tilt : -tilt));
}

double max_psa_gain(const TransferMatrix& tm) {
  const GainForm g = gain_form(tm);
  return 0.5 * (g.a + g.b) + 0.5 * g.radical();
}

double min_psd_gain(const TransferMatrix& tm) {
  // |det T|^2 / G_PSA avoids cancellation when the minimum is tiny.
  const double det = std::norm(tm.mu_a * std::conj(tm.mu_s) - tm.nu_a * std::conj(tm.nu_s));
  const double top = max_psa_gain(tm);
  return top > 0.0 ? det / top : 0.0;
}

SignalInput optimal_input(const TransferMatrix& tm, PsaMode mode) {
  return SignalInput::from_split(optimal_power_split(tm, mode), optimal_sum_phase(tm, mode));
}

}  // namespace fopa
