#include "fopa/raman.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "fopa/errors.hpp"
#include "fopa/fiber.hpp"

namespace fopa {

namespace {

double sign(double x) { return (x > 0.0) - (x < 0.0); }

// Damped-oscillator silica response, tau1 = 12.2 fs, tau2 = 32 fs.
constexpr double kTau1 = 12.2e-15;
constexpr double kTau2 = 32e-15;
constexpr double kPeakThz = 13.2;
constexpr double kStepThz = 0.1;
constexpr int kSamples = 400;

std::complex<double> oscillator_response(double omega) {
  const double amplitude = (kTau1 * kTau1 + kTau2 * kTau2) / (kTau1 * kTau2 * kTau2);
  const std::complex<double> d = std::complex<double>(1.0 / kTau2, -omega);
  return amplitude / kTau1 / (d * d + 1.0 / (kTau1 * kTau1));
}

double oscillator_peak_omega() {
  // golden-section maximum of Im over [10, 16] THz
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = units::hz_to_angular(10e12), b = units::hz_to_angular(16e12);
  double c = b - g * (b - a), d = a + g * (b - a);
  while (b - a > 1e-9 * b) {
    if (oscillator_response(c).imag() > oscillator_response(d).imag()) {
      b = d;
    } else {
      a = c;
    }
    c = b - g * (b - a);
    d = a + g * (b - a);
  }
  return 0.5 * (a + b);
}

struct SilicaShape {
  std::vector<TablePoint> table;
  double slope_at_zero = 0.0;  // per unit peak, s/rad
};

const SilicaShape& shape() {
  static const SilicaShape s = [] {
    SilicaShape out;
    const double peak = oscillator_peak_omega();
    const double target = units::hz_to_angular(kPeakThz * 1e12);
    const double scale = peak / target;  // model omega per shape omega
    const double norm = oscillator_response(peak).imag();
    out.table.reserve(kSamples);
    for (int i = 1; i <= kSamples; ++i) {
      const double omega = units::hz_to_angular(i * kStepThz * 1e12);
      out.table.push_back({omega, oscillator_response(omega * scale).imag() / norm});
    }
    const double a = 1.0 / kTau2, b = 1.0 / kTau1;
    const double amplitude = (kTau1 * kTau1 + kTau2 * kTau2) / (kTau1 * kTau2 * kTau2);
    const double denom = a * a + b * b;
    out.slope_at_zero = amplitude / kTau1 * 2.0 * a / (denom * denom) * scale / norm;
    return out;
  }();
  return s;
}

void check_increasing(const std::vector<TablePoint>& table, const char* what) {
  double prev = 0.0;
  for (const auto& p : table) {
    if (!std::isfinite(p.omega) || !std::isfinite(p.value))
      throw InvalidProfile(std::string(what) + " has non-finite entries");
    if (!(p.omega > prev))
      throw InvalidProfile(std::string(what) + " detunings must be positive and strictly increasing");
    prev = p.omega;
  }
}

}  // namespace

MonotoneCubic::MonotoneCubic(std::vector<TablePoint> points, std::optional<double> slope_at_zero) {
  const std::size_t n = points.size() + 1;
  nodes_.reserve(n);
  values_.reserve(n);
  nodes_.push_back(0.0);
  values_.push_back(0.0);
  for (const auto& p : points) {
    nodes_.push_back(p.omega);
    values_.push_back(p.value);
  }
  slopes_.assign(n, 0.0);
  if (n < 2) return;

  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = nodes_[k + 1] - nodes_[k];
    delta[k] = (values_[k + 1] - values_[k]) / h[k];
  }
  if (n == 2) {
    slopes_[0] = slopes_[1] = delta[0];
  } else {
    for (std::size_t k = 1; k + 1 < n; ++k) {
      if (delta[k - 1] * delta[k] <= 0.0) continue;
      const double w1 = 2.0 * h[k] + h[k - 1];
      const double w2 = h[k] + 2.0 * h[k - 1];
      slopes_[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
    }
    auto endpoint = [](double h0, double h1, double d0, double d1) {
      double d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
      if (sign(d) != sign(d0)) {
        d = 0.0;
      } else if (sign(d0) != sign(d1) && std::abs(d) > 3.0 * std::abs(d0)) {
        d = 3.0 * d0;
      }
      return d;
    };
    slopes_[0] = endpoint(h[0], h[1], delta[0], delta[1]);
    slopes_[n - 1] = endpoint(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  }
  if (slope_at_zero) slopes_[0] = *slope_at_zero;
}

double MonotoneCubic::operator()(double omega) const {
  if (nodes_.size() < 2) return 0.0;
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), omega);
  std::size_t k = it == nodes_.begin() ? 0 : static_cast<std::size_t>(it - nodes_.begin()) - 1;
  k = std::min(k, nodes_.size() - 2);
  const double h = nodes_[k + 1] - nodes_[k];
  const double t = (omega - nodes_[k]) / h;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  return h00 * values_[k] + h10 * h * slopes_[k] + h01 * values_[k + 1] + h11 * h * slopes_[k + 1];
}

double endpoint_slope(const std::vector<TablePoint>& table) {
  if (table.empty()) return 0.0;
  return MonotoneCubic(table, std::nullopt).slope_at_zero();
}

const std::vector<TablePoint>& silica_shape() { return shape().table; }

double silica_peak_omega() { return units::hz_to_angular(kPeakThz * 1e12); }

RamanProfile RamanProfile::silica(double gamma0, double peak_imag) {
  if (!(peak_imag > 0.0)) throw InvalidProfile("peak Im{gamma} must be > 0");
  std::vector<TablePoint> table = shape().table;
  for (auto& p : table) p.value *= peak_imag;
  return from_table(gamma0, std::move(table), shape().slope_at_zero * peak_imag);
}

RamanProfile RamanProfile::silica_with_slope_constant(double gamma0, double slope_constant,
                                                      double temperature_k) {
  const double slope = slope_constant * constants::hbar * gamma0 /
                       (constants::boltzmann * temperature_k);
  return silica(gamma0, slope / shape().slope_at_zero);
}

RamanProfile RamanProfile::instantaneous(double gamma0) {
  if (!(gamma0 > 0.0) || !std::isfinite(gamma0)) throw InvalidProfile("gamma0 must be > 0");
  RamanProfile p;
  p.gamma0_ = gamma0;
  return p;
}

RamanProfile RamanProfile::from_table(double gamma0, std::vector<TablePoint> imag_table,
                                      std::optional<double> imag_slope_at_zero,
                                      std::vector<TablePoint> real_deviation_table) {
  RamanProfile p = instantaneous(gamma0);
  if (imag_table.empty()) throw InvalidProfile("Raman table is empty");
  check_increasing(imag_table, "Im{gamma} table");
  for (const auto& pt : imag_table)
    if (!(pt.value > 0.0)) throw InvalidProfile("Im{gamma} must be > 0 for Omega > 0");
  const double estimate = endpoint_slope(imag_table);
  if (imag_slope_at_zero) {
    if (!(std::abs(*imag_slope_at_zero - estimate) <= 0.01 * std::abs(estimate)))
      throw InvalidProfile("imag_slope_at_zero disagrees with the table's slope at 0 by more than 1%");
  }
  if (!real_deviation_table.empty()) {
    check_increasing(real_deviation_table, "Re{gamma} deviation table");
    if (real_deviation_table.back().omega < imag_table.back().omega)
      throw InvalidProfile("Re{gamma} deviation table must cover the Im{gamma} table range");
    p.real_deviation_ = MonotoneCubic(std::move(real_deviation_table), std::nullopt);
  }
  p.imag_ = MonotoneCubic(imag_table, imag_slope_at_zero.value_or(estimate));
  p.imag_table_ = std::move(imag_table);
  return p;
}

double RamanProfile::max_detuning() const {
  return raman_active() ? imag_.max_omega() : std::numeric_limits<double>::infinity();
}

Complex RamanProfile::gamma_at(double omega) const {
  const double w = std::abs(omega);
  if (!std::isfinite(omega) || w > max_detuning())
    throw OutOfRange("detuning beyond the tabulated Raman range");
  const double re = gamma0_ + (real_deviation_.empty() ? 0.0 : real_deviation_(w));
  const double im = raman_active() ? imag_(w) : 0.0;
  return {re, sign(omega) * im};
}

std::vector<TablePoint> parse_raman_table(const std::string& text) {
  std::vector<TablePoint> table;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    double thz = 0.0, value = 0.0;
    if (!(fields >> thz)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw ParseError("line " + std::to_string(line_no) + ": expected two numbers");
    }
    std::string rest;
    if (!(fields >> value) || (fields >> rest))
      throw ParseError("line " + std::to_string(line_no) + ": expected two numbers");
    if (!table.empty() && !(units::hz_to_angular(thz * 1e12) > table.back().omega))
      throw ParseError("line " + std::to_string(line_no) + ": first column must be strictly increasing");
    table.push_back({units::hz_to_angular(thz * 1e12), value});
  }
  if (table.empty()) throw ParseError("Raman table has no data rows");
  return table;
}

std::vector<TablePoint> load_raman_table(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open Raman table '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_raman_table(ss.str());
}

}  // namespace fopa
