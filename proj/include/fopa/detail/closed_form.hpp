#pragma once

// Lossless closed-form transfer coefficients, generic over the complex type
// so the squeezing module can evaluate them in extended precision.

#include <cmath>
#include <complex>

#include "fopa/amplifier.hpp"

namespace fopa::detail {

template <class C>
struct Coefficients {
  C mu_a, mu_s, nu_a, nu_s;
};

template <class C>
C lift(Complex z) {
  return C(z.real(), z.imag());
}

/// exp(-i dk z) A_p(z)^2 / I_p for a lossless pump.
template <class C, class R>
C pump_phase(const Coupling& c, const R& z) {
  using std::exp;
  return exp(C(0, 1) * (R(2.0 * c.gamma0 * c.pump_power - c.delta_k) * z));
}

template <class C, class R>
Coefficients<C> lossless_matched(const Coupling& c, const R& z, const R& L) {
  using std::conj;
  using std::exp;
  const C i(0, 1);
  const R Ip(c.pump_power);
  const R x = L - z;
  const C gp = lift<C>(c.gamma_pos), gn = lift<C>(c.gamma_neg);
  const C pref_a = exp(i * (R(2.0 * c.gamma0) + gp - conj(gn)) * Ip * x / R(2));
  const C pref_s = exp(i * (R(2.0 * c.gamma0) + gn - conj(gp)) * Ip * x / R(2));
  const C P = pump_phase<C>(c, z);
  return {pref_a * (R(1) + i * gp * x * Ip), pref_s * (R(1) + i * gn * x * Ip),
          pref_a * i * gp * x * Ip * P, pref_s * i * gn * x * Ip * P};
}

template <class C, class R>
Coefficients<C> lossless_general(const Coupling& c, const R& z, const R& L) {
  using std::abs;
  using std::conj;
  using std::cosh;
  using std::exp;
  using std::sinh;
  using std::sqrt;
  const C i(0, 1);
  const R Ip(c.pump_power), dk(c.delta_k);
  const R x = L - z;
  const C gp = lift<C>(c.gamma_pos), gn = lift<C>(c.gamma_neg);
  const C kappa = dk + (gp + conj(gn)) * Ip;
  const C g = sqrt(-kappa * kappa / R(4) + gp * conj(gn) * Ip * Ip);

  C ch, sh_over_g;  // cosh(gx), sinh(gx)/g
  const C gx = g * x;
  if (abs(gx) < 1e-8) {
    ch = R(1) + gx * gx / R(2);
    sh_over_g = x * (R(1) + gx * gx / R(6));
  } else {
    ch = cosh(gx);
    sh_over_g = sinh(gx) / g;
  }

  const C pref_a = exp(-i * (dk - (R(2.0 * c.gamma0) + gp - conj(gn)) * Ip) * x / R(2));
  const C pref_s = exp(-i * (dk - (R(2.0 * c.gamma0) + gn - conj(gp)) * Ip) * x / R(2));
  const C P = pump_phase<C>(c, z);
  return {pref_a * (i * kappa / R(2) * sh_over_g + ch),
          pref_s * (i * conj(kappa) / R(2) * conj(sh_over_g) + conj(ch)),
          pref_a * i * gp * Ip * P * sh_over_g, pref_s * i * gn * Ip * P * conj(sh_over_g)};
}

/// Same routing as the double-precision dispatcher for lossless fibers.
template <class C, class R>
Coefficients<C> lossless(const Coupling& c, const R& z, const R& L) {
  if (std::abs(c.delta_k) * static_cast<double>(L - z) < 1e-12) return lossless_matched<C>(c, z, L);
  return lossless_general<C>(c, z, L);
}

}  // namespace fopa::detail
