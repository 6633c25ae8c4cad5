#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fopa/errors.hpp"
#include "fopa/mean_field.hpp"
#include "oracles.hpp"

using namespace fopa;

namespace {

double thz(double f) { return units::hz_to_angular(f * 1e12); }

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

double max_rel(const TransferMatrix& a, const TransferMatrix& b) {
  return std::max({rel(a.mu_a, b.mu_a), rel(a.mu_s, b.mu_s), rel(a.nu_a, b.nu_a), rel(a.nu_s, b.nu_s)});
}

// Entry deviation scaled by the largest coefficient.
double max_dev(const TransferMatrix& a, const TransferMatrix& b) {
  const double s = std::max({std::abs(b.mu_a), std::abs(b.mu_s), std::abs(b.nu_a), std::abs(b.nu_s)});
  return std::max({std::abs(a.mu_a - b.mu_a), std::abs(a.mu_s - b.mu_s), std::abs(a.nu_a - b.nu_a),
                   std::abs(a.nu_s - b.nu_s)}) / s;
}

bool bit_equal(const TransferMatrix& a, const TransferMatrix& b) {
  return a.mu_a == b.mu_a && a.mu_s == b.mu_s && a.nu_a == b.nu_a && a.nu_s == b.nu_s;
}

Coupling dsf(double power, double length, double dk, bool raman = true) {
  Coupling c;
  c.gamma0 = 2e-3;
  const Complex g = raman ? RamanProfile::silica(2e-3, 0.75e-3).gamma_at(thz(1.0)) : Complex(2e-3);
  c.gamma_pos = g;
  c.gamma_neg = std::conj(g);
  c.delta_k = dk;
  c.pump_power = power;
  c.length = length;
  return c;
}

}  // namespace

TEST(PumpAt, ReferencePhase) {
  const Coupling c = dsf(0.5, 1000.0, 0.0);
  EXPECT_EQ(pump_at(c, 0.0), Complex(std::sqrt(0.5), 0.0));
}

TEST(PumpAt, SpmRotation) {
  Coupling c = dsf(0.5, 1e4, 0.0);
  const double z = constants::pi / (c.gamma0 * c.pump_power);
  const Complex a = pump_at(c, z);
  EXPECT_NEAR(std::abs(a - std::sqrt(0.5) * std::exp(Complex(0, constants::pi))), 0.0, 1e-14);
}

TEST(PumpAt, LossyDecay) {
  FiberSpec f;
  f.length_m = 4440.0;
  f.alpha_p = units::db_per_km_to_per_m(0.41);
  const PumpSpec p{0.33, 1551.5e-9};
  const Complex a = pump_at(p, f, 2e-3, 4440.0);
  const double want = 0.33 * std::exp(-oracle::per_m(0.41) * 4440.0);
  EXPECT_NEAR(std::norm(a), want, 1e-14 * want);
  const double phase = 2e-3 * 0.33 * -std::expm1(-f.alpha_p * 4440.0) / f.alpha_p;
  EXPECT_NEAR(std::arg(a), phase, 1e-13);
  EXPECT_THROW(pump_at(p, f, 2e-3, -1.0), OutOfRange);
  EXPECT_THROW(pump_at(p, f, 2e-3, 4441.0), OutOfRange);
}

TEST(Transfer, IdentityAtZeroLength) {
  Coupling c = dsf(0.7, 2000.0, -0.3);
  const TransferMatrix id = TransferMatrix::identity(500.0);
  EXPECT_TRUE(bit_equal(transfer_lossless(c, 500.0, 500.0), id));
  c.delta_k = 0.0;
  EXPECT_TRUE(bit_equal(transfer_matched(c, 500.0, 500.0), id));
  c.alpha_p = c.alpha_a = c.alpha_s = 1e-4;
  EXPECT_LT(max_dev(transfer_series(c, 500.0, 500.0), id), 1e-12);
}

TEST(Transfer, PumpOffIsPureLoss) {
  Coupling c = dsf(0.0, 3000.0, -0.2);
  c.alpha_p = 2e-4;
  c.alpha_a = 1.5e-4;
  c.alpha_s = 0.7e-4;
  const TransferMatrix t = transfer_series(c, 250.0, 3000.0);
  EXPECT_EQ(t.nu_a, Complex(0.0));
  EXPECT_EQ(t.nu_s, Complex(0.0));
  EXPECT_NEAR(std::abs(t.mu_a), std::exp(-c.alpha_a * 2750.0 / 2.0), 1e-11);
  EXPECT_NEAR(std::abs(t.mu_s), std::exp(-c.alpha_s * 2750.0 / 2.0), 1e-11);
}

TEST(Transfer, SeriesMatchesLosslessForm) {
  for (double dk : {-0.8, -1e-2, 3e-3, 0.5}) {
    const Coupling c = dsf(0.9, 2500.0, dk);
    EXPECT_LT(max_rel(transfer_series(c, 300.0, 2500.0), transfer_lossless(c, 300.0, 2500.0)), 1e-8) << dk;
  }
}

TEST(Transfer, LosslessAgreesWithMatchedAtZeroMismatch) {
  for (bool raman : {true, false}) {
    const Coupling c = dsf(1.0, 1500.0, 0.0, raman);
    EXPECT_LT(max_rel(transfer_lossless(c, 0.0, 1500.0), transfer_matched(c, 0.0, 1500.0)), 1e-10);
    EXPECT_LT(max_rel(transfer_lossless(c, 700.0, 1500.0), transfer_matched(c, 700.0, 1500.0)), 1e-10);
  }
}

TEST(Transfer, PhaseMatchedCosh) {
  Coupling c = dsf(0.8, 3000.0, 0.0, false);
  c.delta_k = -2.0 * c.gamma0 * c.pump_power;  // kappa = 0
  const TransferMatrix t = transfer_lossless(c, 0.0, c.length);
  const double r = c.gamma0 * c.pump_power * c.length;
  EXPECT_NEAR(std::norm(t.mu_a), std::cosh(r) * std::cosh(r), 1e-12 * std::cosh(r) * std::cosh(r));
  EXPECT_NEAR(std::abs(t.nu_a), std::sinh(r), 1e-12 * std::sinh(r));
}

TEST(Transfer, VanishingGainCoefficient) {
  // Instantaneous response at dk = 0: kappa = 2 gamma I, so g = 0.
  const Coupling c = dsf(0.6, 2000.0, 0.0, false);
  const TransferMatrix t = transfer_lossless(c, 0.0, c.length);
  const double x = c.gamma0 * c.pump_power * c.length;
  const Complex kappa = 2.0 * c.gamma0 * c.pump_power;
  const Complex pref = std::exp(Complex(0, 1) * kappa * c.length / 2.0);
  EXPECT_LT(rel(t.mu_a, pref * (1.0 + Complex(0, 1) * kappa * c.length / 2.0)), 1e-12);
  EXPECT_NEAR(std::norm(t.mu_a), 1.0 + x * x, 1e-12 * (1.0 + x * x));
  EXPECT_LT(max_rel(t, transfer_matched(c, 0.0, c.length)), 1e-12);
}

TEST(Transfer, MatchedRamanGainTerms) {
  const Coupling c = dsf(0.5, 1000.0, 0.0, true);
  const TransferMatrix t = transfer_matched(c, 0.0, c.length);
  const double IL = c.pump_power * c.length;
  const double gi = c.gamma_pos.imag();
  EXPECT_NEAR(std::norm(t.mu_a), 1.0 - 2.0 * gi * IL + std::norm(c.gamma_pos) * IL * IL, 1e-13);
  // Stokes side: linear Raman gain, the sign of Im{gamma_-Omega} flipped.
  EXPECT_NEAR(std::norm(t.mu_s), 1.0 - 2.0 * c.gamma_neg.imag() * IL + std::norm(c.gamma_neg) * IL * IL, 1e-13);
  EXPECT_GT(std::norm(t.mu_s), std::norm(t.mu_a));
  EXPECT_TRUE(bit_equal(transfer_matched(c, 400.0, 400.0), TransferMatrix::identity(400.0)));
}

TEST(Transfer, DispatchRule) {
  Coupling c = dsf(0.4, 1200.0, 0.0);
  EXPECT_TRUE(bit_equal(transfer(c, 0.0, c.length), transfer_matched(c, 0.0, c.length)));
  c.delta_k = -0.02;
  EXPECT_TRUE(bit_equal(transfer(c, 0.0, c.length), transfer_lossless(c, 0.0, c.length)));
  c.alpha_a = 1e-5;
  EXPECT_TRUE(bit_equal(transfer(c, 0.0, c.length), transfer_series(c, 0.0, c.length)));
}

TEST(Transfer, AgreesWithOdeOracle) {
  std::mt19937_64 rng(5);
  oracle::DrawRanges r;
  r.max_thz = 14.0;
  for (int k = 0; k < 12; ++k) {
    r.lossy = k % 2 == 0;
    const oracle::Draw d = oracle::random_draw(rng, r);
    const Coupling c = couple(d.amp, d.omega);
    const double z = 0.3 * c.length;
    const int steps = 4000 + static_cast<int>(40.0 * std::abs(c.delta_k) * c.length);
    EXPECT_LT(max_dev(transfer(c, z, c.length), oracle::rk4_transfer(c, z, c.length, steps)), 1e-9) << k;
  }
}

TEST(Transfer, PrincipalBranchMatchesOde) {
  // g^2 = -kappa^2/4 + gamma_+ conj(gamma_-) I^2 crosses the negative real
  // axis as dk moves out of the gain band; both signs of Omega put it on
  // either side of the cut.
  for (double sgn : {1.0, -1.0}) {
    Coupling c = dsf(0.5, 2000.0, 0.0, true);
    if (sgn < 0) std::swap(c.gamma_pos, c.gamma_neg);
    for (double dk : {-4e-3, -3.2e-3, -3e-3, -2.5e-3, 1e-3, 3e-3}) {
      c.delta_k = dk;
      EXPECT_LT(max_dev(transfer_lossless(c, 0.0, c.length), oracle::rk4_transfer(c, 0.0, c.length, 20000)), 1e-10)
          << sgn << " " << dk;
    }
  }
}

TEST(Transfer, CompositionLossless) {
  std::mt19937_64 rng(17);
  oracle::DrawRanges r;
  r.lossy = false;
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int k = 0; k < 50; ++k) {
    const oracle::Draw d = oracle::random_draw(rng, r);
    const Coupling c = couple(d.amp, d.omega);
    const double m = u(rng) * c.length;
    const TransferMatrix whole = transfer(c, 0.0, c.length);
    const TransferMatrix parts = compose(transfer(c, m, c.length), transfer(c, 0.0, m));
    EXPECT_LT(max_dev(parts, whole), 1e-8) << k;
    EXPECT_EQ(parts.z_start, 0.0);
    EXPECT_EQ(parts.z_end, c.length);
  }
}

TEST(Transfer, CompositionLossy) {
  std::mt19937_64 rng(19);
  oracle::DrawRanges r;
  for (int k = 0; k < 20; ++k) {
    const oracle::Draw d = oracle::random_draw(rng, r);
    const Coupling c = couple(d.amp, d.omega);
    const double m = 0.4 * c.length;
    EXPECT_LT(max_dev(compose(transfer(c, m, c.length), transfer(c, 0.0, m)), transfer(c, 0.0, c.length)), 1e-8);
  }
}

TEST(Transfer, ComposeRejectsGaps) {
  const Coupling c = dsf(0.4, 1000.0, 0.0);
  EXPECT_THROW(compose(transfer(c, 600.0, 1000.0), transfer(c, 0.0, 500.0)), Error);
}

TEST(Transfer, SymplecticWithoutRaman) {
  std::mt19937_64 rng(23);
  oracle::DrawRanges r;
  r.lossy = false;
  for (int k = 0; k < 100; ++k) {
    oracle::Draw d = oracle::random_draw(rng, r);
    d.amp.raman = d.amp.raman.without_raman();
    const TransferMatrix t = transfer(d.amp, d.omega);
    const double s = std::norm(t.mu_a);
    EXPECT_NEAR(std::norm(t.mu_a) - std::norm(t.nu_a), 1.0, 1e-9 * s);
    EXPECT_NEAR(std::norm(t.mu_s) - std::norm(t.nu_s), 1.0, 1e-9 * s);
    EXPECT_LT(std::abs(t.mu_a * t.nu_s - t.nu_a * t.mu_s), 1e-9 * s);
  }
}

TEST(Transfer, SeriesConvergenceControl) {
  Coupling c = dsf(0.9, 4000.0, -0.05);
  c.alpha_p = c.alpha_a = c.alpha_s = units::db_per_km_to_per_m(0.5);
  EXPECT_THROW(transfer_series(c, 0.0, c.length, SeriesControl{1, 1e-12}), NoConvergence);
  EXPECT_THROW(validate(SeriesControl{0, 1e-12}), ValidationError);
  EXPECT_THROW(validate(SeriesControl{10, 0.0}), ValidationError);
  // One segment beyond the alpha_p L_eff <= 0.5 guard is refused; the
  // segmented solver handles the span.
  c.alpha_p = 1e-3;
  EXPECT_THROW(series_segment(c, 0.0, c.length), OutOfRange);
  EXPECT_NO_THROW(transfer_series(c, 0.0, c.length));
}
