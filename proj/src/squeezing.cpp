#include "fopa/squeezing.hpp"

#include <algorithm>
#include <array>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <cmath>

#include "fopa/detail/closed_form.hpp"

#include "fopa/errors.hpp"

namespace fopa {

namespace {

// S = A y_a + B y_s + 4 Re{C e^{-i theta}} sqrt(y_a y_s)
struct HomodyneForm {
  double A, B;
  Complex C;
};

HomodyneForm homodyne_form(const TransferMatrix& tm, const NoiseIntegrals& ni, double n_th) {
  if (!ni.lossless) throw LossyFiberUnsupported("squeezing is modeled for lossless fibers only");
  return {1.0 + 2.0 * (std::norm(tm.nu_a) + ni.r_a_sq * n_th),
          1.0 + 2.0 * (std::norm(tm.nu_s) + ni.r_s_sq * (1.0 + n_th)),
          tm.mu_s * tm.nu_a * (1.0 + n_th) - tm.mu_a * tm.nu_s * n_th};
}

}  // namespace

double squeezing_parameter(const TransferMatrix& tm, const NoiseIntegrals& ni, double n_th,
                           const LocalOscillator& lo) {
  if (!(lo.y_a >= 0.0 && lo.y_a <= 1.0)) throw OutOfRange("LO fraction y_a must lie in [0, 1]");
  const HomodyneForm h = homodyne_form(tm, ni, n_th);
  const double y_s = 1.0 - lo.y_a;
  const double cross = (h.C * std::polar(1.0, -lo.theta_sum)).real();
  return h.A * lo.y_a + h.B * y_s + 4.0 * cross * std::sqrt(lo.y_a * y_s);
}

LocalOscillator optimal_lo(const TransferMatrix& tm, const NoiseIntegrals& ni, double n_th) {
  const HomodyneForm h = homodyne_form(tm, ni, n_th);
  const double root = std::sqrt((h.A - h.B) * (h.A - h.B) + 16.0 * std::norm(h.C));
  if (std::abs(h.C) < 1e-300 || root < 1e-300)
    throw DegenerateExtremum("homodyne variance is independent of the LO");
  return {0.5 * (1.0 + (h.B - h.A) / root), wrap_angle(constants::pi + std::arg(h.C))};
}

SqueezingResult optimal_squeezing(const TransferMatrix& tm, const NoiseIntegrals& ni, double n_th) {
  const HomodyneForm h = homodyne_form(tm, ni, n_th);
  SqueezingResult r;
  const double half_diff = 0.5 * (h.A - h.B);
  r.s = 0.5 * (h.A + h.B) - std::sqrt(half_diff * half_diff + 4.0 * std::norm(h.C));
  if (std::abs(h.C) >= 1e-300) r.lo = optimal_lo(tm, ni, n_th);
  else if (h.A != h.B) r.lo = {h.A < h.B ? 1.0 : 0.0, 0.0};
  r.s_db = to_db(r.s);
  return r;
}

double squeezing_degenerate_limit(double phi_nl, double raman_slope_const) {
  if (!(phi_nl >= 0.0)) throw OutOfRange("phi_nl must be >= 0");
  // 1 + 2 phi b - 2 phi sqrt(1 + b^2), rearranged so large phi does not cancel.
  const double b = phi_nl + 2.0 * raman_slope_const;
  const double q = std::hypot(1.0, b) + b;
  return (4.0 * raman_slope_const + 1.0 / q) / q;
}

}  // namespace fopa

namespace fopa {

namespace {

namespace mp = boost::multiprecision;
using XReal = mp::number<mp::cpp_bin_float<60>, mp::et_off>;
using XComplex = mp::number<mp::complex_adaptor<mp::cpp_bin_float<60>>, mp::et_off>;

constexpr double kMaxCondition = 1e50;

// Raman-noise integrands: I|ra|^2, I|rs|^2 and the cross term I ra conj(rs_row).
struct XVec {
  std::array<XComplex, 3> v;
};

XVec operator+(const XVec& a, const XVec& b) {
  return {{a.v[0] + b.v[0], a.v[1] + b.v[1], a.v[2] + b.v[2]}};
}
XVec operator-(const XVec& a, const XVec& b) {
  return {{a.v[0] - b.v[0], a.v[1] - b.v[1], a.v[2] - b.v[2]}};
}
XVec operator*(double w, const XVec& a) { return {{w * a.v[0], w * a.v[1], w * a.v[2]}}; }

Eigen::VectorXd magnitudes(const XVec& a) {
  Eigen::VectorXd m(3);
  for (int k = 0; k < 3; ++k) m[k] = static_cast<double>(abs(a.v[k]));
  return m;
}

double angle_of(const XComplex& z) {
  return std::atan2(static_cast<double>(imag(z)), static_cast<double>(real(z)));
}

}  // namespace

// Homodyne quadratic form S = y^H M y over unit LO vectors.
struct HomodyneVariance::Form {
  XReal m11, m22;
  XComplex m12;
};

HomodyneVariance::HomodyneVariance(const Amplifier& amp, double omega, const QuadratureControl& quad) {
  validate(amp);
  if (!amp.fiber.lossless()) throw LossyFiberUnsupported("squeezing is modeled for lossless fibers only");
  const double n_th = thermal_occupation(omega, amp.env);
  const Coupling c = couple(amp, omega);
  const XReal L(c.length);

  // S = q M q^H over unit rows q = (u, w*): vacuum anti-Stokes row (mu_a, nu_s*),
  // vacuum Stokes row (nu_a, mu_s*), Raman rows weighted by (2n+1) 2 Im{gamma}.
  const auto t = detail::lossless<XComplex>(c, XReal(0), L);
  auto form = std::make_shared<Form>(Form{norm(t.mu_a) + norm(t.nu_a), norm(t.nu_s) + norm(t.mu_s),
                                          t.mu_a * t.nu_s + t.nu_a * t.mu_s});
  if (c.gamma_pos.imag() != 0.0) {
    auto f = [&](double z, int) {
      const auto tz = detail::lossless<XComplex>(c, XReal(z), L);
      const XComplex Pc = conj(detail::pump_phase<XComplex>(c, XReal(z)));
      const XComplex ra = tz.mu_a - tz.nu_a * Pc;
      const XComplex rs_row = conj(tz.nu_s) - conj(tz.mu_s) * Pc;  // second entry of the noise row
      const XReal Iz(c.pump_power);
      return XVec{{Iz * norm(ra), Iz * norm(rs_row), Iz * ra * conj(rs_row)}};
    };
    auto split = [](int, double, double, double) { return std::pair<int, int>(0, 0); };
    auto scale = [](const XVec& v) {
      Eigen::VectorXd r = magnitudes(v);
      r[2] = std::max(r[2], std::sqrt(r[0] * r[1]));
      return r;
    };
    const double rate = std::abs(c.delta_k) + c.pump_power * (2.0 * c.gamma0 + std::abs(c.gamma_pos));
    const int pieces = static_cast<int>(std::clamp(std::ceil(rate * c.length / constants::pi), 1.0,
                                                   std::max(1.0, quad.max_evaluations / 15.0 - 2.0)));
    const auto q = integrate_adaptive<XVec>(f, split, scale, 0.0, c.length, 0, quad, pieces);
    const XReal weight = XReal(2.0 * n_th + 1.0) * XReal(2.0 * c.gamma_pos.imag());
    form->m11 += weight * real(q.value.v[0]);
    form->m22 += weight * real(q.value.v[1]);
    form->m12 += weight * q.value.v[2];
  }
  form_ = std::move(form);
}

SqueezingResult HomodyneVariance::optimal() const {
  const auto& [m11, m22, m12] = *form_;
  const XReal half_diff = (m11 - m22) / 2;
  const XReal lambda_max = (m11 + m22) / 2 + sqrt(half_diff * half_diff + norm(m12));
  const XReal lambda_min = (m11 * m22 - norm(m12)) / lambda_max;
  if (!(lambda_min > 0) || lambda_max / lambda_min > XReal(kMaxCondition))
    throw NoConvergence("squeezing beyond the resolution of extended precision");

  SqueezingResult r;
  r.s = static_cast<double>(lambda_min);
  r.s_db = to_db(r.s);
  // Eigenvector y of M for lambda_min; the LO row is conj(y).
  XComplex y1 = m12, y2 = XComplex(lambda_min - m11);
  const XComplex z1 = XComplex(lambda_min - m22), z2 = conj(m12);
  if (norm(z1) + norm(z2) > norm(y1) + norm(y2)) {
    y1 = z1;
    y2 = z2;
  }
  const XReal total = norm(y1) + norm(y2);
  if (total > 0) {
    r.lo.y_a = static_cast<double>(norm(y1) / total);
    r.lo.theta_sum = wrap_angle(-angle_of(y2 * conj(y1)));
  }
  return r;
}

SqueezingResult HomodyneVariance::fixed_split(double y_a) const {
  if (!(y_a >= 0.0 && y_a <= 1.0)) throw OutOfRange("LO fraction y_a must lie in [0, 1]");
  const auto& [m11, m22, m12] = *form_;
  const XReal ya(y_a), ys = XReal(1) - ya;
  const XReal top = ya * m11 + ys * m22;
  const XReal s = top - 2 * sqrt(ya * ys) * abs(m12);
  if (!(s > 0) || top / s > XReal(kMaxCondition))
    throw NoConvergence("squeezing beyond the resolution of extended precision");

  SqueezingResult r;
  r.s = static_cast<double>(s);
  r.s_db = to_db(r.s);
  r.lo.y_a = y_a;
  r.lo.theta_sum = abs(m12) > 0 ? wrap_angle(angle_of(m12) + constants::pi) : 0.0;
  return r;
}

SqueezingResult optimal_squeezing(const Amplifier& amp, double omega, const QuadratureControl& quad) {
  return HomodyneVariance(amp, omega, quad).optimal();
}

SqueezingResult squeezing_fixed_split(const Amplifier& amp, double omega, double y_a,
                                      const QuadratureControl& quad) {
  return HomodyneVariance(amp, omega, quad).fixed_split(y_a);
}

}  // namespace fopa
