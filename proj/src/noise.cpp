#include "fopa/noise.hpp"

#include <algorithm>
#include <cmath>

#include "fopa/errors.hpp"

namespace fopa {

namespace {

enum Slot { kRa, kRs, kMuA, kNuA, kMuS, kNuS, kRx, kCx1, kCx2, kSlots };

// Integrand at z given T(z, L). nu / P strips the local pump and mismatch
// phase so the Raman terms see the field relative to the pump.
Eigen::VectorXcd integrand(const Coupling& c, double z, const TransferMatrix& t) {
  const double Iz = c.pump_power * std::exp(-c.alpha_p * z);
  const double phase = 2.0 * c.gamma0 * c.pump_power * effective_length(c.alpha_p, z) - c.delta_k * z;
  const Complex P = std::polar(1.0, phase);
  const Complex Pc = std::conj(P);
  const Complex ra = t.mu_a - t.nu_a * Pc;
  const Complex rs = -t.mu_s + t.nu_s * Pc;

  Eigen::VectorXcd v(kSlots);
  v[kRa] = Iz * std::norm(ra);
  v[kRs] = Iz * std::norm(rs);
  v[kMuA] = std::norm(t.mu_a);
  v[kNuA] = std::norm(t.nu_a);
  v[kMuS] = std::norm(t.mu_s);
  v[kNuS] = std::norm(t.nu_s);
  v[kRx] = Iz * P * ra * rs;
  v[kCx1] = t.mu_a * t.nu_s;
  v[kCx2] = t.nu_a * t.mu_s;
  return v;
}

// Reference magnitudes: cross terms are bounded by Cauchy-Schwarz.
Eigen::VectorXd reference(const Eigen::VectorXcd& v) {
  Eigen::VectorXd r = v.cwiseAbs();
  r[kRx] = std::max(r[kRx], std::sqrt(r[kRa] * r[kRs]));
  r[kCx1] = std::max(r[kCx1], std::sqrt(r[kMuA] * r[kNuS]));
  r[kCx2] = std::max(r[kCx2], std::sqrt(r[kNuA] * r[kMuS]));
  return r;
}

}  // namespace

NoiseIntegrals noise_integrals(const Coupling& c, const QuadratureControl& quad,
                               const SeriesControl& ctl, TransferMatrix* tm_total) {
  const double L = c.length;
  // Context: T(b, L) for the interval's right end b.
  auto f = [&](double x, const TransferMatrix& ctx) {
    return integrand(c, x, compose(ctx, transfer(c, x, ctx.z_start, ctl)));
  };
  auto split = [&](const TransferMatrix& ctx, double, double m, double) {
    return std::pair<TransferMatrix, TransferMatrix>(compose(ctx, transfer(c, m, ctx.z_start, ctl)), ctx);
  };
  // Roughly half an oscillation per starting piece.
  const double rate = std::abs(c.delta_k) +
                      c.pump_power * (2.0 * std::abs(c.gamma0) + std::abs(c.gamma_pos) + std::abs(c.gamma_neg));
  const double want = std::ceil(rate * L / constants::pi);
  const int pieces = static_cast<int>(std::clamp(want, 1.0, std::max(1.0, quad.max_evaluations / 15.0 - 2.0)));
  const QuadratureResult<> q =
      integrate_adaptive(f, split, reference, 0.0, L, TransferMatrix::identity(L), quad, pieces);

  NoiseIntegrals ni;
  const double gi = c.gamma_pos.imag();
  ni.r_a_sq = 2.0 * gi * q.value[kRa].real();
  ni.r_s_sq = -2.0 * c.gamma_neg.imag() * q.value[kRs].real();
  ni.r_x = 2.0 * gi * q.value[kRx];
  ni.c_a1_sq = c.alpha_a * q.value[kMuA].real();
  ni.c_a2_sq = c.alpha_s * q.value[kNuA].real();
  ni.c_s1_sq = c.alpha_s * q.value[kMuS].real();
  ni.c_s2_sq = c.alpha_a * q.value[kNuS].real();
  ni.c_x1 = c.alpha_a * q.value[kCx1];
  ni.c_x2 = c.alpha_s * q.value[kCx2];
  ni.lossless = c.lossless();
  ni.evaluations = q.evaluations;
  if (tm_total) *tm_total = transfer(c, 0.0, L, ctl);
  return ni;
}

NoiseIntegrals noise_integrals(const Amplifier& amp, double omega, const QuadratureControl& quad,
                               const SeriesControl& ctl, TransferMatrix* tm_total) {
  if (!(omega > 0.0)) throw NonPositiveDetuning("noise integrals need omega > 0");
  return noise_integrals(couple(amp, omega), quad, ctl, tm_total);
}

std::pair<double, double> output_powers(const TransferMatrix& tm, const SignalInput& sig) {
  const Complex ea = tm.mu_a * sig.zeta_a + tm.nu_a * std::conj(sig.zeta_s);
  const Complex es = tm.mu_s * sig.zeta_s + tm.nu_s * std::conj(sig.zeta_a);
  return {std::norm(ea), std::norm(es)};
}

VarianceBreakdown photocurrent_variance(const TransferMatrix& tm, const NoiseIntegrals& ni,
                                        const SignalInput& sig, double n_th) {
  const Complex ea = tm.mu_a * sig.zeta_a + tm.nu_a * std::conj(sig.zeta_s);
  const Complex es = tm.mu_s * sig.zeta_s + tm.nu_s * std::conj(sig.zeta_a);
  const Complex Q = ea * es;

  VarianceBreakdown v;
  v.p_a = std::norm(ea);
  v.p_s = std::norm(es);
  const double Ba = std::norm(tm.mu_a) + std::norm(tm.nu_a) + (2.0 * n_th + 1.0) * ni.r_a_sq +
                    ni.c_a1_sq + ni.c_a2_sq;
  const double Bs = std::norm(tm.mu_s) + std::norm(tm.nu_s) + (2.0 * n_th + 1.0) * ni.r_s_sq +
                    ni.c_s1_sq + ni.c_s2_sq;
  v.var_pi = v.p_a * Ba + v.p_s * Bs;

  const Complex B1 = ni.c_x1 + ni.r_x * (n_th + 1.0) + tm.mu_a * tm.nu_s;
  const Complex B2 = std::conj(ni.c_x2) + std::conj(ni.r_x) * n_th + std::conj(tm.mu_s * tm.nu_a);
  const Complex ps = 2.0 * std::conj(Q) * B1 + 2.0 * Q * B2;
  // Relative to the size of the individual contributions to B1 and B2.
  const double scale = std::abs(Q) * (std::abs(tm.mu_a * tm.nu_s) + std::abs(tm.mu_s * tm.nu_a) +
                                      (2.0 * n_th + 1.0) * std::abs(ni.r_x) + std::abs(ni.c_x1) +
                                      std::abs(ni.c_x2));
  if (std::abs(ps.imag()) > 1e-10 * 4.0 * scale)
    throw ConsistencyError("phase-sensitive variance has an imaginary part");
  v.var_ps = ps.real();
  return v;
}

VarianceBreakdown noise_figure(const TransferMatrix& tm, const NoiseIntegrals& ni,
                               const SignalInput& sig, double n_th) {
  const double pin = sig.total_power();
  if (!(pin > 0.0)) throw ZeroInput("noise figure needs a nonzero input");
  VarianceBreakdown v = photocurrent_variance(tm, ni, sig, n_th);
  const double pout = v.p_a + v.p_s;
  v.nf_linear = pin * (v.var_pi + v.var_ps) / (pout * pout);
  v.nf_db = to_db(v.nf_linear);
  return v;
}

double nf_degenerate_limit(double phi_nl, double raman_const) {
  if (!(phi_nl >= 0.0)) throw OutOfRange("phi_nl must be >= 0");
  // Raman noise grows linearly and is not amplified; the signal-noise beat is
  // partly phase-correlated through r_x, hence the (1 + phi / root) factor.
  const double root = std::sqrt(1.0 + phi_nl * phi_nl);
  return 1.0 + raman_const * phi_nl * (1.0 + phi_nl / root) /
                   (1.0 + 2.0 * phi_nl * phi_nl + 2.0 * phi_nl * root);
}

double raman_slope_constant(const RamanProfile& raman, const Environment& env) {
  return constants::boltzmann * env.temperature_k * raman.imag_slope_at_zero() /
         (constants::hbar * raman.gamma0());
}

namespace {

template <class F>
double golden_min(F&& f, double lo, double hi, double tol) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - r * (hi - lo), d = lo + r * (hi - lo);
  double fc = f(c), fd = f(d);
  while (hi - lo > tol) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - r * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + r * (hi - lo);
      fd = f(d);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

NoiseOptimum minimize_noise_figure(const TransferMatrix& tm, const NoiseIntegrals& ni, double n_th,
                                   double tolerance) {
  double theta = 0.0, x = 0.5;
  try {
    theta = optimal_sum_phase(tm, PsaMode::Amplify);
    x = optimal_power_split(tm, PsaMode::Amplify);
  } catch (const DegenerateExtremum&) {
  }
  auto nf = [&](double th, double xx) {
    return noise_figure(tm, ni, SignalInput::from_split(xx, th), n_th).nf_linear;
  };
  double best = nf(theta, x);
  for (int sweep = 0; sweep < 50; ++sweep) {
    const double t_new = golden_min([&](double t) { return nf(t, x); }, theta - constants::pi,
                                    theta + constants::pi, tolerance);
    const double x_new =
        golden_min([&](double xx) { return nf(t_new, xx); }, 0.0, 1.0, tolerance);
    const double value = nf(t_new, x_new);
    const bool moved = std::abs(t_new - theta) > tolerance || std::abs(x_new - x) > tolerance;
    if (value <= best) {
      theta = t_new;
      x = x_new;
      best = value;
    }
    if (!moved || value > best) break;
  }
  NoiseOptimum out;
  out.input = SignalInput::from_split(x, wrap_angle(theta));
  out.nf = noise_figure(tm, ni, out.input, n_th);
  return out;
}

double to_db(double linear) { return 10.0 * std::log10(linear); }

}  // namespace fopa
