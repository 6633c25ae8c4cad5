#include "fopa/amplifier.hpp"

#include "fopa/errors.hpp"

namespace fopa {

void validate(const Amplifier& amp) {
  validate(amp.fiber);
  validate(amp.pump);
  validate(amp.env);
}

double resolve_delta_k(const Amplifier& amp, double omega) {
  switch (amp.mismatch.kind) {
    case PhaseMismatch::Kind::Dispersion:
      return delta_k(amp.fiber, amp.pump, omega);
    case PhaseMismatch::Kind::Fixed:
      return amp.mismatch.value;
    case PhaseMismatch::Kind::InputMatched:
      return -2.0 * amp.mismatch.value * amp.raman.gamma_at(omega).real() * amp.pump.power_w;
  }
  return 0.0;
}

Coupling couple(const Amplifier& amp, double omega) {
  Coupling c;
  c.gamma0 = amp.raman.gamma0();
  c.gamma_pos = amp.raman.gamma_at(omega);
  c.gamma_neg = amp.raman.gamma_at(-omega);
  c.delta_k = resolve_delta_k(amp, omega);
  c.pump_power = amp.pump.power_w;
  c.alpha_p = amp.fiber.alpha_p;
  c.alpha_a = amp.fiber.alpha_a;
  c.alpha_s = amp.fiber.alpha_s;
  c.length = amp.fiber.length_m;
  return c;
}

double nonlinear_phase(const Amplifier& amp) {
  return amp.raman.gamma0() * amp.pump.power_w *
         effective_length(amp.fiber.alpha_p, amp.fiber.length_m);
}

}  // namespace fopa
