#include "fopa/workbench/presets.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "fopa/errors.hpp"
#include "fopa/noise.hpp"
#include "fopa/squeezing.hpp"
#include "fopa/workbench/sweep.hpp"

namespace fopa::workbench {

namespace {

double thz(double f) { return units::hz_to_angular(f * 1e12); }
double db_km(double v) { return units::db_per_km_to_per_m(v); }

FigurePreset make_fig1() {
  FigurePreset p;
  p.id = PresetId::Fig1;
  p.base.fiber.length_m = 3630.0;
  p.base.fiber.zero_dispersion_wavelength_m = 1551.16e-9;
  p.base.fiber.dispersion_slope = 57.0;
  p.base.pump = {0.33, 1551.5e-9};
  p.base.raman = RamanProfile::silica(2e-3, 0.75e-3);
  p.lossy_alpha = db_km(0.41);
  p.lossy_length_m = 4440.0;
  p.axis = Axis::Detuning;
  p.start = thz(0.1);
  p.stop = thz(2.6);
  p.points = 251;
  return p;
}

FigurePreset make_fig2() {
  FigurePreset p;
  p.id = PresetId::Fig2;
  p.base.fiber.length_m = 1000.0;
  p.base.pump = {4.0, 1550e-9};
  p.base.raman = RamanProfile::silica(2e-3, 0.75e-3);
  p.base.mismatch = PhaseMismatch::input_matched(1.0);
  p.lossy_alpha = db_km(0.25);
  p.detunings = {thz(1.0)};
  p.axis = Axis::Length;
  p.start = 10.0;
  p.stop = 1000.0;
  p.points = 100;
  return p;
}

FigurePreset make_fig3() {
  FigurePreset p;
  p.id = PresetId::Fig3;
  p.base.fiber.length_m = 1000.0;
  p.base.pump = {0.34, 1550e-9};
  p.base.raman = RamanProfile::silica(9e-3, 3.5e-3);
  p.base.mismatch = PhaseMismatch::input_matched(1.0);
  p.lossy_alpha = db_km(0.75);
  p.detunings = {thz(13.8), thz(1.38), thz(0.04), units::hz_to_angular(kZeroDetuningHz)};
  p.axis = Axis::Gain;
  p.start = 5.0;
  p.stop = 1000.0;
  p.points = 200;
  return p;
}

FigurePreset make_fig4() {
  FigurePreset p;
  p.id = PresetId::Fig4;
  p.base.fiber.length_m = 4000.0;
  p.base.fiber.alpha_p = p.base.fiber.alpha_a = p.base.fiber.alpha_s = db_km(0.41);
  p.base.fiber.zero_dispersion_wavelength_m = 1551.15e-9;
  p.base.fiber.dispersion_slope = 57.0;
  p.base.pump = {0.3, 1555.5e-9};
  p.base.raman = RamanProfile::silica(2e-3, 0.75e-3);
  p.axis = Axis::Detuning;
  p.start = thz(0.01);
  p.stop = thz(13.01);
  p.points = 261;
  // Far from phase matching dk L reaches ~10^4 rad.
  p.quad.max_evaluations = 400000;
  return p;
}

FigurePreset make_fig5() {
  FigurePreset p;
  p.id = PresetId::Fig5;
  p.base.fiber.length_m = 1000.0;
  p.base.pump = {1.0, 1550e-9};
  p.base.raman = RamanProfile::silica_with_slope_constant(2e-3, 0.026, 300.0);
  p.base.mismatch = PhaseMismatch::fixed(0.0);
  p.detunings = {thz(0.04)};
  p.axis = Axis::PhiNl;
  p.start = 0.25;
  p.stop = 40.0;
  p.points = 160;
  return p;
}

std::string curve_label(double omega) {
  const double hz = units::angular_to_hz(omega);
  if (hz <= kZeroDetuningHz) return "0Hz";
  char buf[32];
  if (hz >= 1e12) std::snprintf(buf, sizeof buf, "%gTHz", hz / 1e12);
  else std::snprintf(buf, sizeof buf, "%gGHz", hz / 1e9);
  std::string s = buf;
  for (char& ch : s)
    if (ch == '.') ch = 'p';
  return s;
}

Amplifier lossy(const FigurePreset& p) {
  Amplifier a = p.base;
  a.fiber.alpha_p = a.fiber.alpha_a = a.fiber.alpha_s = p.lossy_alpha;
  if (p.lossy_length_m > 0.0) a.fiber.length_m = p.lossy_length_m;
  return a;
}

Amplifier no_raman(const Amplifier& amp) {
  Amplifier a = amp;
  a.raman = amp.raman.without_raman();
  return a;
}

double psd_equal(const TransferMatrix& tm) {
  return phase_sensitive_gain(tm, SignalInput::from_split(0.5, optimal_sum_phase(tm, PsaMode::Deamplify)));
}
double psa_equal(const TransferMatrix& tm) {
  return phase_sensitive_gain(tm, SignalInput::from_split(0.5, optimal_sum_phase(tm, PsaMode::Amplify)));
}

// Gain and NF at the gain-optimal input.
std::pair<double, double> gain_and_nf(const Amplifier& amp, double omega, const QuadratureControl& quad) {
  TransferMatrix tm;
  const NoiseIntegrals ni = noise_integrals(amp, omega, quad, {}, &tm);
  const SignalInput sig = optimal_input(tm, PsaMode::Amplify);
  return {to_db(phase_sensitive_gain(tm, sig)), noise_figure(tm, ni, sig, thermal_occupation(omega, amp.env)).nf_db};
}

Amplifier at_detuning(const Amplifier& amp, double omega) {
  Amplifier a = amp;
  if (units::angular_to_hz(omega) <= kZeroDetuningHz) a.mismatch = PhaseMismatch::fixed(0.0);
  return a;
}

std::string describe(const FigurePreset& p) {
  std::ostringstream s;
  s.precision(17);
  const auto& f = p.base.fiber;
  s << to_string(p.id) << " L=" << f.length_m << " a=" << f.alpha_p << ',' << f.alpha_a << ',' << f.alpha_s
    << " l0=" << f.zero_dispersion_wavelength_m << " S=" << f.dispersion_slope << " P=" << p.base.pump.power_w
    << " lp=" << p.base.pump.wavelength_m << " g0=" << p.base.raman.gamma0()
    << " slope=" << p.base.raman.imag_slope_at_zero() << " T=" << p.base.env.temperature_k
    << " mm=" << static_cast<int>(p.base.mismatch.kind) << ',' << p.base.mismatch.value << " lossy=" << p.lossy_alpha
    << ',' << p.lossy_length_m << " axis=" << to_string(p.axis) << ' ' << p.start << ' ' << p.stop << ' '
    << p.points << " quad=" << p.quad.rel_tolerance << ',' << p.quad.max_evaluations << " det=";
  for (double d : p.detunings) s << d << ',';
  return s.str();
}

}  // namespace

const FigurePreset& figure_preset(PresetId id) {
  static const FigurePreset presets[] = {make_fig1(), make_fig2(), make_fig3(), make_fig4(), make_fig5()};
  return presets[static_cast<int>(id)];
}

PresetId parse_preset_id(const std::string& name) {
  for (PresetId id : {PresetId::Fig1, PresetId::Fig2, PresetId::Fig3, PresetId::Fig4, PresetId::Fig5})
    if (to_string(id) == name) return id;
  throw ValidationError("unknown preset '" + name + "' (expected fig1..fig5)");
}

std::string to_string(PresetId id) { return "fig" + std::to_string(static_cast<int>(id) + 1); }

Table run_preset(PresetId id, int threads) {
  const FigurePreset& p = figure_preset(id);
  const std::vector<double> xs = axis_grid(p.start, p.stop, p.points);
  Table t;
  t.metadata.push_back({"preset", to_string(id)});
  t.metadata.push_back({"config_hash", hash_text(describe(p))});
  std::function<std::vector<double>(int)> row;
  std::function<std::string(int)> label = [&](int i) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s = %.12g", to_string(p.axis).c_str(),
                  p.axis == Axis::Detuning ? units::angular_to_hz(xs[i]) / 1e12 : xs[i]);
    return std::string(buf);
  };

  switch (id) {
    case PresetId::Fig1:
      t.columns = {"detuning_THz",       "g_psa_noraman_dB", "g_psa_raman_dB", "g_psa_lossy_dB",
                   "g_psd_noraman_dB",   "g_psd_raman_dB",   "g_psd_lossy_dB"};
      row = [&](int i) {
        const double w = xs[i];
        const TransferMatrix a = transfer(no_raman(p.base), w), b = transfer(p.base, w), c = transfer(lossy(p), w);
        return std::vector<double>{units::angular_to_hz(w) / 1e12,
                                   to_db(max_psa_gain(a)), to_db(max_psa_gain(b)), to_db(max_psa_gain(c)),
                                   to_db(min_psd_gain(a)), to_db(min_psd_gain(b)), to_db(min_psd_gain(c))};
      };
      break;
    case PresetId::Fig2:
      t.columns = {"length_m",           "psd_opt_lossless_dB", "psd_opt_lossy_dB",   "psd_equal_lossless_dB",
                   "psd_equal_lossy_dB", "psa_equal_lossless_dB", "psa_opt_lossless_dB", "psa_equal_lossy_dB",
                   "psa_opt_lossy_dB"};
      row = [&](int i) {
        Amplifier a = p.base, b = lossy(p);
        a.fiber.length_m = b.fiber.length_m = xs[i];
        const double w = p.detunings.front();
        const TransferMatrix ta = transfer(a, w), tb = transfer(b, w);
        return std::vector<double>{xs[i],
                                   to_db(min_psd_gain(ta)), to_db(min_psd_gain(tb)),
                                   to_db(psd_equal(ta)), to_db(psd_equal(tb)),
                                   to_db(psa_equal(ta)), to_db(max_psa_gain(ta)),
                                   to_db(psa_equal(tb)), to_db(max_psa_gain(tb))};
      };
      break;
    case PresetId::Fig3:
      t.columns = {"length_m"};
      for (double w : p.detunings)
        for (const char* loss : {"lossy", "lossless"})
          for (const char* q : {"g", "nf"}) t.columns.push_back(std::string(q) + "_" + curve_label(w) + "_" + loss + "_dB");
      row = [&](int i) {
        std::vector<double> r{xs[i]};
        for (double w : p.detunings) {
          for (Amplifier a : {lossy(p), p.base}) {
            a = at_detuning(a, w);
            a.fiber.length_m = xs[i];
            const auto [g, nf] = gain_and_nf(a, w, p.quad);
            r.insert(r.end(), {g, nf});
          }
        }
        return r;
      };
      break;
    case PresetId::Fig4:
      t.columns = {"detuning_THz", "g_psa_dB", "g_psd_dB", "nf_dB"};
      row = [&](int i) {
        const double w = xs[i];
        TransferMatrix tm;
        const NoiseIntegrals ni = noise_integrals(p.base, w, p.quad, {}, &tm);
        const SignalInput sig = optimal_input(tm, PsaMode::Amplify);
        return std::vector<double>{units::angular_to_hz(w) / 1e12, to_db(max_psa_gain(tm)), to_db(min_psd_gain(tm)),
                                   noise_figure(tm, ni, sig, thermal_occupation(w, p.base.env)).nf_db};
      };
      break;
    case PresetId::Fig5:
      t.columns = {"phi_nl_rad",       "s_opt_raman",       "s_opt_noraman",      "s_limit",
                   "s_equal_raman",    "s_opt_raman_pm",    "s_equal_raman_pm",   "s_opt_raman_third",
                   "s_equal_raman_third"};
      row = [&](int i) {
        const double w = p.detunings.front(), phi = xs[i];
        Amplifier a = p.base;
        a.fiber.length_m = length_for_phase(a, phi);
        Amplifier pm = a, third = a;
        pm.mismatch = PhaseMismatch::input_matched(1.0);
        third.mismatch = PhaseMismatch::input_matched(1.0 / 3.0);
        const double c = raman_slope_constant(a.raman, a.env);
        const HomodyneVariance va(a, w, p.quad), vpm(pm, w, p.quad), vthird(third, w, p.quad);
        return std::vector<double>{phi,
                                   va.optimal().s,
                                   optimal_squeezing(no_raman(a), w, p.quad).s,
                                   squeezing_degenerate_limit(phi, c),
                                   va.fixed_split(0.5).s,
                                   vpm.optimal().s,
                                   vpm.fixed_split(0.5).s,
                                   vthird.optimal().s,
                                   vthird.fixed_split(0.5).s};
      };
      break;
  }
  t.rows = evaluate_rows(p.points, threads, row, label);
  return t;
}

}  // namespace fopa::workbench
