#include "fopa/mean_field.hpp"

#include <algorithm>
#include <cmath>

#include "fopa/detail/closed_form.hpp"
#include "fopa/errors.hpp"

namespace fopa {

namespace {

void check_span(const Coupling& c, double z, double L) {
  if (!(z >= 0.0) || !(L >= z) || !(L <= c.length * (1.0 + 1e-12)))
    throw OutOfRange("transfer span must satisfy 0 <= z <= L <= fiber length");
}

// Pump phase and mismatch factor carried by nu: A_p(z)^2 exp(-i dk z) / I_p(z).
Complex pump_phase_factor(const Coupling& c, double z) {
  const double phase = 2.0 * c.gamma0 * c.pump_power * effective_length(c.alpha_p, z) - c.delta_k * z;
  return std::polar(1.0, phase);
}

}  // namespace

TransferMatrix compose(const TransferMatrix& later, const TransferMatrix& earlier) {
  if (std::abs(later.z_start - earlier.z_end) > 1e-9 * std::max(1.0, std::abs(earlier.z_end)))
    throw ValidationError("composed spans are not contiguous");
  return TransferMatrix::from_bogoliubov(later.bogoliubov() * earlier.bogoliubov(),
                                         earlier.z_start, later.z_end);
}

void validate(const SeriesControl& ctl) {
  if (ctl.max_terms < 1) throw ValidationError("series max_terms must be >= 1");
  if (!(ctl.rel_tolerance > 0.0)) throw ValidationError("series rel_tolerance must be > 0");
}

Complex pump_at(const Coupling& c, double z) {
  if (!(z >= 0.0) || !(z <= c.length * (1.0 + 1e-12)))
    throw OutOfRange("pump position outside the fiber");
  const double amplitude = std::sqrt(c.pump_power) * std::exp(-0.5 * c.alpha_p * z);
  return std::polar(amplitude, c.gamma0 * c.pump_power * effective_length(c.alpha_p, z));
}

Complex pump_at(const PumpSpec& pump, const FiberSpec& fiber, double gamma0, double z) {
  Coupling c;
  c.gamma0 = gamma0;
  c.pump_power = pump.power_w;
  c.alpha_p = fiber.alpha_p;
  c.length = fiber.length_m;
  return pump_at(c, z);
}

TransferMatrix series_segment(const Coupling& c, double z, double L, const SeriesControl& ctl) {
  check_span(c, z, L);
  const double x = L - z;
  const double zeta = effective_length(c.alpha_p, x);
  const double r = c.alpha_p * zeta;
  if (r > 0.5) throw OutOfRange("series validity guard alpha_p * L_eff <= 0.5 violated");

  const double I_z = c.pump_power * std::exp(-c.alpha_p * z);
  const Complex gamma_neg_conj = std::conj(c.gamma_neg);
  const Complex Gamma = I * (c.gamma_pos + gamma_neg_conj) * I_z / 2.0;
  const Complex Lambda = Complex(c.alpha_s / 2.0 - c.alpha_a / 2.0, c.delta_k) / 2.0;
  const Complex xi1 = I * c.gamma_pos * I_z;
  const Complex xi2 = -I * gamma_neg_conj * I_z;

  // Scaled coefficients a_n zeta^n, s*_n zeta^n for both seeds (columns).
  Eigen::Matrix2cd term;     // row 0: a, row 1: s*
  Eigen::Matrix2cd weighted; // sum_j (alpha_p zeta)^j term_{n-j}
  term << 1.0, 0.0, 0.0, 1.0;
  weighted = term;
  Eigen::Matrix2cd sum = term;

  const Complex G = Gamma * zeta, X1 = xi1 * zeta, X2 = xi2 * zeta, Lz = Lambda * zeta;
  int quiet = 0;
  int n = 1;
  for (; n <= ctl.max_terms; ++n) {
    Eigen::Matrix2cd next;
    for (int seed = 0; seed < 2; ++seed) {
      next(0, seed) = (G * term(0, seed) + X1 * term(1, seed) + Lz * weighted(0, seed)) / double(n);
      next(1, seed) = (-G * term(1, seed) + X2 * term(0, seed) - Lz * weighted(1, seed)) / double(n);
    }
    term = next;
    weighted = term + r * weighted;
    sum += term;
    bool small = true;
    for (int seed = 0; seed < 2; ++seed) {
      const double scale = std::abs(sum(0, seed)) + std::abs(sum(1, seed));
      const double step = std::abs(term(0, seed)) + std::abs(term(1, seed));
      if (step > ctl.rel_tolerance * scale) small = false;
    }
    quiet = small ? quiet + 1 : 0;
    if (quiet >= 2) break;
  }
  if (quiet < 2) throw NoConvergence("power series did not converge within max_terms");

  const Complex asym = (c.gamma_pos - gamma_neg_conj) / 2.0;
  const double damping = -(c.alpha_a + c.alpha_s) * x / 4.0;
  const Complex p_plus = I * (c.gamma0 + asym) * I_z * zeta - I * c.delta_k * x / 2.0 + damping;
  const Complex p_minus = I * (asym - c.gamma0) * I_z * zeta + I * c.delta_k * x / 2.0 + damping;
  const Complex e_plus = std::exp(p_plus), e_minus = std::exp(p_minus);
  const Complex P = pump_phase_factor(c, z);

  TransferMatrix t;
  t.mu_a = e_plus * sum(0, 0);
  t.nu_a = P * e_plus * sum(0, 1);
  t.mu_s = std::conj(e_minus * sum(1, 1));
  t.nu_s = P * std::conj(e_minus * sum(1, 0));
  t.z_start = z;
  t.z_end = L;
  return t;
}

TransferMatrix transfer_series(const Coupling& c, double z, double L, const SeriesControl& ctl) {
  check_span(c, z, L);
  validate(ctl);
  const double x = L - z;
  const double I_z = c.pump_power * std::exp(-c.alpha_p * z);
  const double rate = std::abs(c.gamma_pos + std::conj(c.gamma_neg)) * I_z / 2.0 +
                      2.0 * std::abs(Complex(c.alpha_s / 2.0 - c.alpha_a / 2.0, c.delta_k)) / 2.0 +
                      std::max(std::abs(c.gamma_pos), std::abs(c.gamma_neg)) * I_z;
  const double by_stiffness = std::ceil(rate * x / 2.0);
  const double by_guard = std::ceil(c.alpha_p * x / 0.4);
  const auto segments = static_cast<long>(std::max({1.0, by_stiffness, by_guard}));
  if (segments == 1) return series_segment(c, z, L, ctl);

  const double h = x / static_cast<double>(segments);
  Eigen::Matrix2cd total = Eigen::Matrix2cd::Identity();
  for (long k = 0; k < segments; ++k) {
    const double a = z + h * static_cast<double>(k);
    const double b = k + 1 == segments ? L : a + h;
    total = series_segment(c, a, b, ctl).bogoliubov() * total;
  }
  return TransferMatrix::from_bogoliubov(total, z, L);
}

TransferMatrix transfer_lossless(const Coupling& c, double z, double L) {
  check_span(c, z, L);
  if (!c.lossless()) throw ValidationError("transfer_lossless requires alpha = 0");
  const auto k = detail::lossless_general<Complex>(c, z, L);
  return {k.mu_a, k.mu_s, k.nu_a, k.nu_s, z, L};
}

TransferMatrix transfer_matched(const Coupling& c, double z, double L) {
  check_span(c, z, L);
  if (!c.lossless()) throw ValidationError("transfer_matched requires alpha = 0");
  const auto k = detail::lossless_matched<Complex>(c, z, L);
  return {k.mu_a, k.mu_s, k.nu_a, k.nu_s, z, L};
}

TransferMatrix transfer(const Coupling& c, double z, double L, const SeriesControl& ctl) {
  if (c.lossless()) {
    if (std::abs(c.delta_k) * (L - z) < 1e-12) return transfer_matched(c, z, L);
    return transfer_lossless(c, z, L);
  }
  return transfer_series(c, z, L, ctl);
}

TransferMatrix transfer(const Amplifier& amp, double omega, double z, double L,
                        const SeriesControl& ctl) {
  return transfer(couple(amp, omega), z, L, ctl);
}

TransferMatrix transfer(const Amplifier& amp, double omega, const SeriesControl& ctl) {
  return transfer(couple(amp, omega), 0.0, amp.fiber.length_m, ctl);
}

}  // namespace fopa
