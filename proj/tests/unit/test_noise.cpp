#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fopa/errors.hpp"
#include "fopa/noise.hpp"
#include "oracles.hpp"

using namespace fopa;

namespace {

double thz(double f) { return units::hz_to_angular(f * 1e12); }

Amplifier dsf(double power, double length, PhaseMismatch mm = PhaseMismatch::fixed(0.0)) {
  Amplifier a;
  a.fiber.length_m = length;
  a.pump = {power, 1550e-9};
  a.raman = RamanProfile::silica(2e-3, 0.75e-3);
  a.mismatch = mm;
  return a;
}

TransferMatrix squeezer(double r) {
  TransferMatrix t;
  t.mu_a = t.mu_s = std::cosh(r);
  t.nu_a = t.nu_s = std::sinh(r);
  return t;
}

double rel(Complex a, Complex b, double scale) { return std::abs(a - b) / scale; }

}  // namespace

TEST(NoiseIntegrals, VanishWithoutRamanAndLoss) {
  Amplifier a = dsf(0.8, 2000.0, PhaseMismatch::fixed(-0.01));
  a.raman = a.raman.without_raman();
  const NoiseIntegrals ni = noise_integrals(a, thz(1.0));
  for (double v : {ni.r_a_sq, ni.r_s_sq, ni.c_a1_sq, ni.c_a2_sq, ni.c_s1_sq, ni.c_s2_sq}) EXPECT_EQ(v, 0.0);
  for (Complex v : {ni.r_x, ni.c_x1, ni.c_x2}) EXPECT_EQ(v, Complex(0.0));
  EXPECT_TRUE(ni.lossless);
}

TEST(NoiseIntegrals, LosslessHasNoLossTerms) {
  const NoiseIntegrals ni = noise_integrals(dsf(0.8, 2000.0), thz(5.0));
  for (double v : {ni.c_a1_sq, ni.c_a2_sq, ni.c_s1_sq, ni.c_s2_sq}) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(ni.c_x1, Complex(0.0));
  EXPECT_EQ(ni.c_x2, Complex(0.0));
  EXPECT_GT(ni.r_a_sq, 0.0);
  EXPECT_GT(ni.r_s_sq, 0.0);
}

TEST(NoiseIntegrals, WeakDrive) {
  const Amplifier a = dsf(1e-3, 100.0);
  const double w = thz(10.0);
  const NoiseIntegrals ni = noise_integrals(a, w);
  const double want = 2.0 * a.raman.gamma_at(w).imag() * a.pump.power_w * a.fiber.length_m;
  EXPECT_NEAR(ni.r_a_sq, want, 1e-5 * want);
  EXPECT_NEAR(ni.r_s_sq, want, 1e-5 * want);
}

TEST(NoiseIntegrals, SimpsonOracle) {
  std::mt19937_64 rng(31);
  oracle::DrawRanges r;
  r.max_length = 2000.0;
  for (int k = 0; k < 2; ++k) {
    const oracle::Draw d = oracle::random_draw(rng, r);
    const Coupling c = couple(d.amp, d.omega);
    const NoiseIntegrals got = noise_integrals(c, QuadratureControl{1e-10, 400000});
    const NoiseIntegrals ref = oracle::simpson_noise(c, 200000);
    EXPECT_NEAR(got.r_a_sq, ref.r_a_sq, 1e-7 * ref.r_a_sq);
    EXPECT_NEAR(got.r_s_sq, ref.r_s_sq, 1e-7 * ref.r_s_sq);
    EXPECT_NEAR(got.c_a1_sq, ref.c_a1_sq, 1e-7 * ref.c_a1_sq);
    EXPECT_NEAR(got.c_a2_sq, ref.c_a2_sq, 1e-7 * ref.c_a2_sq);
    EXPECT_NEAR(got.c_s1_sq, ref.c_s1_sq, 1e-7 * ref.c_s1_sq);
    EXPECT_NEAR(got.c_s2_sq, ref.c_s2_sq, 1e-7 * ref.c_s2_sq);
    EXPECT_LT(rel(got.r_x, ref.r_x, std::sqrt(ref.r_a_sq * ref.r_s_sq)), 1e-7);
    EXPECT_LT(rel(got.c_x1, ref.c_x1, std::sqrt(ref.c_a1_sq * ref.c_s2_sq)), 1e-7);
    EXPECT_LT(rel(got.c_x2, ref.c_x2, std::sqrt(ref.c_a2_sq * ref.c_s1_sq)), 1e-7);
  }
}

TEST(NoiseIntegrals, CommutatorsAndCauchySchwarz) {
  std::mt19937_64 rng(37);
  oracle::DrawRanges r;
  for (int k = 0; k < 30; ++k) {
    const oracle::Draw d = oracle::random_draw(rng, r);
    TransferMatrix t;
    const NoiseIntegrals ni = noise_integrals(d.amp, d.omega, QuadratureControl{1e-9, 200000}, {}, &t);
    // gamma0 up to 1e-2 gives |mu|^2 up to ~1e14; the identity then holds to
    // a fixed fraction of the coefficient size rather than absolutely
    const double tol = std::max(1e-6, 1e-11 * std::max(std::norm(t.mu_a), std::norm(t.mu_s)));
    EXPECT_NEAR(std::norm(t.mu_a) - std::norm(t.nu_a) + ni.r_a_sq + ni.c_a1_sq - ni.c_a2_sq, 1.0, tol) << k;
    EXPECT_NEAR(std::norm(t.mu_s) - std::norm(t.nu_s) - ni.r_s_sq + ni.c_s1_sq - ni.c_s2_sq, 1.0, tol) << k;
    EXPECT_LE(std::norm(ni.r_x), ni.r_a_sq * ni.r_s_sq * (1.0 + 1e-9));
    for (double v : {ni.r_a_sq, ni.r_s_sq, ni.c_a1_sq, ni.c_a2_sq, ni.c_s1_sq, ni.c_s2_sq}) EXPECT_GE(v, 0.0);
  }
}

TEST(NoiseIntegrals, Errors) {
  EXPECT_THROW(noise_integrals(dsf(0.5, 1000.0), 0.0), NonPositiveDetuning);
  Amplifier a = dsf(1.0, 5000.0, PhaseMismatch::dispersion());
  a.fiber.zero_dispersion_wavelength_m = 1549e-9;
  a.fiber.dispersion_slope = 57.0;
  EXPECT_THROW(noise_integrals(a, thz(12.0), QuadratureControl{1e-9, 60}), QuadratureFailure);
  EXPECT_THROW(noise_integrals(a, thz(1.0), QuadratureControl{0.0, 20000}), ValidationError);
}

TEST(OutputPowers, Cases) {
  const SignalInput s{{0.3, 0.1}, {-0.2, 0.5}};
  auto [pa, ps] = output_powers(TransferMatrix::identity(), s);
  EXPECT_NEAR(pa, std::norm(s.zeta_a), 1e-16);
  EXPECT_NEAR(ps, std::norm(s.zeta_s), 1e-16);

  std::mt19937_64 rng(41);
  oracle::DrawRanges r;
  for (int k = 0; k < 50; ++k) {
    const oracle::Draw d = oracle::random_draw(rng, r);
    const TransferMatrix t = transfer(d.amp, d.omega);
    auto [qa, qs] = output_powers(t, SignalInput{{0.6, -0.2}, {0.0, 0.0}});
    EXPECT_NEAR(qa, std::norm(t.mu_a) * 0.4, 1e-12 * qa);
    EXPECT_NEAR(qs, std::norm(t.nu_s) * 0.4, 1e-12 * qa);
    auto [ra, rs] = output_powers(t, s);
    const double g = phase_sensitive_gain(t, s) * s.total_power();
    EXPECT_NEAR(ra + rs, g, 1e-12 * g);
  }
}

TEST(PhotocurrentVariance, VacuumAndPassthrough) {
  const NoiseIntegrals none;
  const VarianceBreakdown v0 = photocurrent_variance(squeezer(1.0), none, SignalInput{}, 0.1);
  EXPECT_EQ(v0.var_ps, 0.0);
  EXPECT_EQ(v0.var_pi, 0.0);
  const SignalInput s{{0.7, 0.2}, {0.1, -0.4}};
  const VarianceBreakdown v = photocurrent_variance(TransferMatrix::identity(), none, s, 0.0);
  EXPECT_NEAR(v.var_pi, s.total_power(), 1e-15);
  EXPECT_NEAR(v.var_ps, 0.0, 1e-15);
  const VarianceBreakdown nf = noise_figure(TransferMatrix::identity(), none, s, 0.0);
  EXPECT_NEAR(nf.nf_linear, 1.0, 1e-15);
  EXPECT_NEAR(nf.nf_db, 0.0, 1e-14);
  EXPECT_THROW(noise_figure(TransferMatrix::identity(), none, SignalInput{}, 0.0), ZeroInput);
}

TEST(NoiseFigure, NoiselessSqueezerUpTo30dB) {
  const NoiseIntegrals none;
  for (double gdb = 0.5; gdb <= 30.0; gdb += 0.5) {
    const double r = 0.5 * std::log(std::pow(10.0, gdb / 10.0));
    const TransferMatrix t = squeezer(r);
    const VarianceBreakdown v = noise_figure(t, none, optimal_input(t, PsaMode::Amplify), 0.3);
    EXPECT_NEAR(v.nf_linear, 1.0, 1e-9) << gdb;
  }
}

TEST(NoiseFigure, CommonPhaseRotation) {
  TransferMatrix t;
  const Amplifier a = dsf(0.5, 3000.0, PhaseMismatch::input_matched());
  const NoiseIntegrals ni = noise_integrals(a, thz(3.0), {}, {}, &t);
  const double n = thermal_occupation(thz(3.0), a.env);
  const SignalInput s{{0.4, 0.3}, {-0.1, 0.8}};
  const double ref = noise_figure(t, ni, s, n).nf_linear;
  for (double d : {0.3, 1.7, -2.9}) {
    const Complex e = std::polar(1.0, d);
    EXPECT_NEAR(noise_figure(t, ni, {s.zeta_a * e, s.zeta_s * std::conj(e)}, n).nf_linear, ref, 1e-14 * ref);
  }
  const VarianceBreakdown v = noise_figure(t, ni, s, n);
  EXPECT_GT(v.nf_linear, 0.0);
  EXPECT_GE(v.var_pi, 0.0);
  EXPECT_GE(v.p_a, 0.0);
  EXPECT_GE(v.p_s, 0.0);
}

TEST(NoiseFigure, ContinuousAcrossTableNodes) {
  Amplifier a = dsf(0.5, 800.0, PhaseMismatch::input_matched());
  a.fiber.alpha_p = a.fiber.alpha_a = a.fiber.alpha_s = units::db_per_km_to_per_m(0.75);
  // 1 GHz steps across the 13.1, 13.2 and 13.3 THz nodes
  double last = NAN;
  for (int k = 0; k <= 250; ++k) {
    const double w = thz(13.075 + 1e-3 * k);
    TransferMatrix t;
    const NoiseIntegrals ni = noise_integrals(a, w, {}, {}, &t);
    const double nf = noise_figure(t, ni, optimal_input(t, PsaMode::Amplify), thermal_occupation(w, a.env)).nf_db;
    if (k > 0) {
      EXPECT_LT(std::abs(nf - last), 1e-3) << k;
    }
    last = nf;
  }
}

TEST(NoiseFigure, DegenerateLimitFormula) {
  EXPECT_DOUBLE_EQ(nf_degenerate_limit(0.0, 0.3), 1.0);
  EXPECT_NEAR(nf_degenerate_limit(1e6, 0.3), 1.0, 1e-6);
  EXPECT_THROW(nf_degenerate_limit(-1.0, 0.3), OutOfRange);
  EXPECT_DOUBLE_EQ(nf_degenerate_limit(2.0, 0.0), 1.0);
  // rises above 0 dB, peaks and falls back
  const double a = nf_degenerate_limit(0.1, 0.3), b = nf_degenerate_limit(1.0, 0.3), c = nf_degenerate_limit(30.0, 0.3);
  EXPECT_GT(b, a);
  EXPECT_GT(b, c);
  EXPECT_GT(c, 1.0);
}

TEST(NoiseFigure, PipelineMatchesDegenerateLimit) {
  Amplifier a = dsf(1.0, 1.0);
  const double w = units::hz_to_angular(1e6);
  const double rc = 4.0 * raman_slope_constant(a.raman, a.env);
  for (double phi : {0.05, 0.5, 1.0, 3.0, 8.0}) {
    a.fiber.length_m = phi / (a.raman.gamma0() * a.pump.power_w);
    TransferMatrix t;
    const NoiseIntegrals ni = noise_integrals(a, w, {}, {}, &t);
    const double nf = noise_figure(t, ni, optimal_input(t, PsaMode::Amplify), thermal_occupation(w, a.env)).nf_db;
    EXPECT_NEAR(nf, to_db(nf_degenerate_limit(phi, rc)), 1e-3) << phi;
  }
}

TEST(NoiseFigure, NumericalMinimumBeatsGainOptimum) {
  Amplifier a = dsf(0.4, 2000.0, PhaseMismatch::input_matched());
  a.fiber.alpha_p = a.fiber.alpha_a = a.fiber.alpha_s = units::db_per_km_to_per_m(0.5);
  const double w = thz(6.0), n = thermal_occupation(w, a.env);
  TransferMatrix t;
  const NoiseIntegrals ni = noise_integrals(a, w, {}, {}, &t);
  const double at_gain = noise_figure(t, ni, optimal_input(t, PsaMode::Amplify), n).nf_linear;
  const NoiseOptimum opt = minimize_noise_figure(t, ni, n);
  EXPECT_LE(opt.nf.nf_linear, at_gain * (1.0 + 1e-12));
  double grid = HUGE_VAL;
  for (int i = 0; i < 181; ++i)
    for (int j = 0; j <= 100; ++j)
      grid = std::min(grid, noise_figure(t, ni, SignalInput::from_split(j / 100.0, -constants::pi + i * constants::pi / 90.0), n).nf_linear);
  EXPECT_LE(opt.nf.nf_linear, grid * (1.0 + 1e-4));
}

TEST(NoiseFigure, RamanSlopeConstant) {
  const RamanProfile r = RamanProfile::silica(2e-3, 0.75e-3);
  const double want = oracle::kB * 300.0 * r.imag_slope_at_zero() / (oracle::kH / (2.0 * oracle::kPi) * 2e-3);
  EXPECT_NEAR(raman_slope_constant(r, Environment{300.0}), want, 1e-12 * want);
  EXPECT_EQ(raman_slope_constant(r.without_raman(), Environment{300.0}), 0.0);
}
