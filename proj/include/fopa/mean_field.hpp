#pragma once

#include <Eigen/Core>

#include "fopa/amplifier.hpp"

namespace fopa {

/// Bogoliubov coefficients for propagation from z_start to z_end:
///   A_a(L) = mu_a A_a(z) + nu_a A_s*(z)
///   A_s(L) = mu_s A_s(z) + nu_s A_a*(z)
struct TransferMatrix {
  Complex mu_a{1.0, 0.0};
  Complex mu_s{1.0, 0.0};
  Complex nu_a{0.0, 0.0};
  Complex nu_s{0.0, 0.0};
  double z_start = 0.0;
  double z_end = 0.0;

  static TransferMatrix identity(double z = 0.0) { return {{1, 0}, {1, 0}, {0, 0}, {0, 0}, z, z}; }

  /// Map acting on the column (A_a, A_s*).
  Eigen::Matrix2cd bogoliubov() const {
    Eigen::Matrix2cd m;
    m << mu_a, nu_a, std::conj(nu_s), std::conj(mu_s);
    return m;
  }

  static TransferMatrix from_bogoliubov(const Eigen::Matrix2cd& m, double z_start, double z_end) {
    return {m(0, 0), std::conj(m(1, 1)), m(0, 1), std::conj(m(1, 0)), z_start, z_end};
  }
};

/// `later` after `earlier`; the spans must be contiguous.
TransferMatrix compose(const TransferMatrix& later, const TransferMatrix& earlier);

/// Truncation control for the distributed-loss power series.
struct SeriesControl {
  int max_terms = 200;
  double rel_tolerance = 1e-12;
};

void validate(const SeriesControl& ctl);

/// Undepleted pump amplitude (sqrt(W)) at z, phase referenced to the input.
Complex pump_at(const Coupling& c, double z);
Complex pump_at(const PumpSpec& pump, const FiberSpec& fiber, double gamma0, double z);

/// One power-series solve over [z, L]. Requires alpha_p * L_eff <= 0.5.
TransferMatrix series_segment(const Coupling& c, double z, double L, const SeriesControl& ctl = {});

/// Distributed-loss solution over [z, L]; long or stiff spans are split into
/// series segments and composed.
TransferMatrix transfer_series(const Coupling& c, double z, double L, const SeriesControl& ctl = {});

/// Lossless closed form, arbitrary dk.
TransferMatrix transfer_lossless(const Coupling& c, double z, double L);

/// Lossless closed form at dk = 0 (linear in length).
TransferMatrix transfer_matched(const Coupling& c, double z, double L);

/// Routes to the matched, lossless or series solution.
TransferMatrix transfer(const Coupling& c, double z, double L, const SeriesControl& ctl = {});

// Convenience overloads resolving the coupling at detuning `omega`.
TransferMatrix transfer(const Amplifier& amp, double omega, double z, double L,
                        const SeriesControl& ctl = {});
TransferMatrix transfer(const Amplifier& amp, double omega, const SeriesControl& ctl = {});

}  // namespace fopa
