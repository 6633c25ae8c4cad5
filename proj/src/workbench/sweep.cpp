#include "fopa/workbench/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <thread>

#include "fopa/errors.hpp"
#include "fopa/noise.hpp"
#include "fopa/squeezing.hpp"

namespace fopa::workbench {

std::vector<std::vector<double>> evaluate_rows(int n, int threads,
                                               const std::function<std::vector<double>(int)>& row,
                                               const std::function<std::string(int)>& label) {
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(std::max(n, 0)));
  std::vector<std::exception_ptr> errors(rows.size());
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        rows[i] = row(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int workers = std::max(1, std::min(threads, n));
  std::vector<std::thread> pool;
  for (int t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  for (int i = 0; i < n; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (Error& e) {
      e.add_context(label(i));
      throw;
    }
  }
  return rows;
}

std::vector<double> axis_grid(double start, double stop, int points) {
  std::vector<double> x(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i)
    x[i] = i + 1 == points ? stop : start + (stop - start) * i / (points - 1);
  return x;
}

double length_for_phase(const Amplifier& amp, double phi_nl) {
  const double leff = phi_nl / (amp.raman.gamma0() * amp.pump.power_w);
  const double a = amp.fiber.alpha_p;
  if (a == 0.0) return leff;
  if (!(a * leff < 1.0)) throw OutOfRange("nonlinear phase not reachable with this attenuation");
  return -std::log1p(-a * leff) / a;
}

namespace {

std::string axis_column(Axis axis) {
  switch (axis) {
    case Axis::Detuning: return "detuning_THz";
    case Axis::Length:
    case Axis::Gain: return "length_m";
    case Axis::PumpPower: return "pump_power_W";
    case Axis::PhiNl: return "phi_nl_rad";
  }
  return "x";
}

double axis_display(Axis axis, double x) { return axis == Axis::Detuning ? units::angular_to_hz(x) / 1e12 : x; }

bool wants(const SweepConfig& cfg, Output o) {
  return std::find(cfg.outputs.begin(), cfg.outputs.end(), o) != cfg.outputs.end();
}

SignalInput chosen_input(const SweepConfig& cfg, const TransferMatrix& tm, const NoiseIntegrals* ni, double n_th) {
  switch (cfg.input) {
    case InputMode::Optimal: return optimal_input(tm, PsaMode::Amplify);
    case InputMode::EqualSplit: return SignalInput::from_split(0.5, optimal_sum_phase(tm, PsaMode::Amplify));
    case InputMode::NfOptimal: return minimize_noise_figure(tm, *ni, n_th).input;
  }
  return optimal_input(tm, PsaMode::Amplify);
}

std::vector<double> sweep_row(const SweepConfig& cfg, double x) {
  Amplifier amp = cfg.amp;
  double omega = cfg.detuning;
  std::vector<double> row{axis_display(cfg.axis, x)};
  switch (cfg.axis) {
    case Axis::Detuning: omega = x; break;
    case Axis::Length:
    case Axis::Gain: amp.fiber.length_m = x; break;
    case Axis::PumpPower: amp.pump.power_w = x; break;
    case Axis::PhiNl:
      amp.fiber.length_m = length_for_phase(amp, x);
      row.push_back(amp.fiber.length_m);
      break;
  }
  validate(amp);

  const double n_th = thermal_occupation(omega, amp.env);
  const bool need_noise = wants(cfg, Output::NoiseFigure) || cfg.input == InputMode::NfOptimal;
  TransferMatrix tm;
  NoiseIntegrals ni;
  if (need_noise) ni = noise_integrals(amp, omega, cfg.quad, cfg.series, &tm);
  else tm = transfer(amp, omega, cfg.series);

  const bool need_input = wants(cfg, Output::ClassicalGain) || wants(cfg, Output::NoiseFigure);
  const SignalInput sig = need_input ? chosen_input(cfg, tm, &ni, n_th) : SignalInput{};

  for (Output o : cfg.outputs) {
    switch (o) {
      case Output::ClassicalGain:
        row.push_back(to_db(max_psa_gain(tm)));
        row.push_back(to_db(phase_sensitive_gain(tm, sig)));
        break;
      case Output::PsdGain: row.push_back(to_db(min_psd_gain(tm))); break;
      case Output::NoiseFigure: row.push_back(noise_figure(tm, ni, sig, n_th).nf_db); break;
      case Output::Squeezing: {
        const SqueezingResult s = optimal_squeezing(amp, omega, cfg.quad);
        row.insert(row.end(), {s.s, s.s_db, s.lo.y_a, s.lo.theta_sum});
        break;
      }
      case Output::TransferCoeffs:
        for (Complex v : {tm.mu_a, tm.nu_a, tm.mu_s, tm.nu_s}) row.insert(row.end(), {v.real(), v.imag()});
        break;
    }
  }
  return row;
}

std::string axis_label(const SweepConfig& cfg, double x) {
  char buf[64];
  if (cfg.axis == Axis::Detuning) std::snprintf(buf, sizeof buf, "detuning = %.12g THz", axis_display(cfg.axis, x));
  else std::snprintf(buf, sizeof buf, "%s = %.12g", axis_column(cfg.axis).c_str(), x);
  return buf;
}

}  // namespace

std::vector<std::string> sweep_columns(const SweepConfig& cfg) {
  std::vector<std::string> cols{axis_column(cfg.axis)};
  if (cfg.axis == Axis::PhiNl) cols.push_back("length_m");
  for (Output o : cfg.outputs) {
    switch (o) {
      case Output::ClassicalGain: cols.insert(cols.end(), {"g_psa_dB", "g_input_dB"}); break;
      case Output::PsdGain: cols.push_back("g_psd_dB"); break;
      case Output::NoiseFigure: cols.push_back("nf_dB"); break;
      case Output::Squeezing: cols.insert(cols.end(), {"s_opt", "s_opt_dB", "lo_y_a", "lo_theta_rad"}); break;
      case Output::TransferCoeffs:
        cols.insert(cols.end(), {"mu_a_re", "mu_a_im", "nu_a_re", "nu_a_im", "mu_s_re", "mu_s_im", "nu_s_re", "nu_s_im"});
        break;
    }
  }
  return cols;
}

Table run_sweep(const SweepConfig& cfg, int threads) {
  validate(cfg);
  const std::vector<double> xs = axis_grid(cfg.start, cfg.stop, cfg.points);
  Table t;
  t.columns = sweep_columns(cfg);
  t.metadata.push_back({"config_hash", config_hash(cfg)});
  t.metadata.push_back({"axis", to_string(cfg.axis)});
  t.metadata.push_back({"input", to_string(cfg.input)});
  char buf[64];
  for (const auto& e : cfg.echo) {
    std::string v = e.text;
    if (!e.si_unit.empty()) {
      std::snprintf(buf, sizeof buf, "%.17g", e.si);
      v += " -> " + std::string(buf) + " " + e.si_unit;
    }
    t.metadata.push_back({e.key, v});
  }
  t.rows = evaluate_rows(
      cfg.points, threads > 0 ? threads : cfg.threads, [&](int i) { return sweep_row(cfg, xs[i]); },
      [&](int i) { return axis_label(cfg, xs[i]); });
  return t;
}

}  // namespace fopa::workbench
