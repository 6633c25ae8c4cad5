#pragma once

#include "fopa/psa.hpp"
#include "fopa/quadrature.hpp"

namespace fopa {

/// Integrated Langevin noise over the fiber (photon-flux normalization).
struct NoiseIntegrals {
  double r_a_sq = 0.0, r_s_sq = 0.0;
  double c_a1_sq = 0.0, c_a2_sq = 0.0, c_s1_sq = 0.0, c_s2_sq = 0.0;
  Complex r_x, c_x1, c_x2;
  bool lossless = true;
  int evaluations = 0;
};

struct VarianceBreakdown {
  double p_a = 0.0, p_s = 0.0;
  double var_pi = 0.0, var_ps = 0.0;
  double nf_linear = 0.0, nf_db = 0.0;
};

/// Noise integrals for propagation over [0, L]. `tm_total` is filled with
/// the end-to-end transfer matrix when non-null.
NoiseIntegrals noise_integrals(const Coupling& c, const QuadratureControl& quad = {},
                               const SeriesControl& ctl = {}, TransferMatrix* tm_total = nullptr);
NoiseIntegrals noise_integrals(const Amplifier& amp, double omega, const QuadratureControl& quad = {},
                               const SeriesControl& ctl = {}, TransferMatrix* tm_total = nullptr);

std::pair<double, double> output_powers(const TransferMatrix& tm, const SignalInput& sig);

/// Shot-noise-referenced photocurrent variance of the summed output power;
/// the NF fields are left at zero.
VarianceBreakdown photocurrent_variance(const TransferMatrix& tm, const NoiseIntegrals& ni,
                                        const SignalInput& sig, double n_th);

VarianceBreakdown noise_figure(const TransferMatrix& tm, const NoiseIntegrals& ni,
                               const SignalInput& sig, double n_th);

/// NF in the Omega -> 0, dk = 0, lossless limit at the gain-optimal input;
/// raman_const = 4 kT gamma_i'(0) / (hbar gamma0). Equals 1 at phi_nl = 0.
double nf_degenerate_limit(double phi_nl, double raman_const);

/// kT * dIm{gamma}/dOmega(0) / (hbar * gamma0). The NF limit uses four times this.
double raman_slope_constant(const RamanProfile& raman, const Environment& env);

struct NoiseOptimum {
  SignalInput input;
  VarianceBreakdown nf;
};

/// Coordinate-wise golden-section search over sum phase and split, starting
/// from the gain-optimal input.
NoiseOptimum minimize_noise_figure(const TransferMatrix& tm, const NoiseIntegrals& ni, double n_th,
                                   double tolerance = 1e-6);

double to_db(double linear);

}  // namespace fopa
