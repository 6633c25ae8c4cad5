#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fopa/constants.hpp"

namespace fopa {

/// One tabulated point: angular detuning (rad/s) and a value in 1/(W m).
struct TablePoint {
  double omega;
  double value;
};

/// Piecewise-cubic Hermite interpolant with Fritsch-Carlson slopes. The
/// curve is anchored at (0, 0); the slope there may be pinned.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<TablePoint> points, std::optional<double> slope_at_zero);

  double operator()(double omega) const;
  double slope_at_zero() const { return slopes_.empty() ? 0.0 : slopes_.front(); }
  double max_omega() const { return nodes_.empty() ? 0.0 : nodes_.back(); }
  bool empty() const { return nodes_.size() <= 1; }

 private:
  std::vector<double> nodes_;
  std::vector<double> values_;
  std::vector<double> slopes_;
};

/// Complex nonlinear coefficient gamma(Omega) = gamma0 + dRe(|Omega|) +
/// i sign(Omega) Im(|Omega|). Conjugate symmetry gamma(-Omega) =
/// conj(gamma(Omega)) holds by construction.
class RamanProfile {
 public:
  /// Built-in silica-like shape, peak at 13.2 THz scaled to `peak_imag`.
  static RamanProfile silica(double gamma0, double peak_imag);

  /// Silica-like shape scaled so that kT*slope/(hbar*gamma0) equals
  /// `slope_constant` at temperature `temperature_k`.
  static RamanProfile silica_with_slope_constant(double gamma0, double slope_constant,
                                                 double temperature_k);

  /// Purely electronic (instantaneous) response: Im gamma = 0 everywhere.
  static RamanProfile instantaneous(double gamma0);

  /// User table. `imag_slope_at_zero`, when given, must agree with the
  /// table's own endpoint derivative within 1%.
  static RamanProfile from_table(double gamma0, std::vector<TablePoint> imag_table,
                                 std::optional<double> imag_slope_at_zero = std::nullopt,
                                 std::vector<TablePoint> real_deviation_table = {});

  Complex gamma_at(double omega) const;

  double gamma0() const { return gamma0_; }
  double imag_slope_at_zero() const { return imag_.slope_at_zero(); }
  double max_detuning() const;
  bool raman_active() const { return !imag_.empty(); }
  const std::vector<TablePoint>& imag_table() const { return imag_table_; }

  /// Same electronic part with the Raman response removed.
  RamanProfile without_raman() const { return instantaneous(gamma0_); }

 private:
  double gamma0_ = 0.0;
  std::vector<TablePoint> imag_table_;
  MonotoneCubic imag_;
  MonotoneCubic real_deviation_;
};

/// Normalized silica shape: (Omega, Im) with Im = 1 at 13.2 THz.
const std::vector<TablePoint>& silica_shape();

/// Peak detuning of the built-in shape (rad/s).
double silica_peak_omega();

/// Parse a two-column text table (THz, 1/(W m)); '#' starts a comment.
std::vector<TablePoint> load_raman_table(const std::string& path);
std::vector<TablePoint> parse_raman_table(const std::string& text);

/// Endpoint slope at Omega = 0 estimated from the first two table points
/// and the (0, 0) anchor.
double endpoint_slope(const std::vector<TablePoint>& table);

}  // namespace fopa
