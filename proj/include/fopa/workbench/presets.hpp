#pragma once

#include <string>
#include <vector>

#include "fopa/workbench/config.hpp"
#include "fopa/workbench/table.hpp"

namespace fopa::workbench {

enum class PresetId { Fig1, Fig2, Fig3, Fig4, Fig5 };

/// Frozen parameter bundle for one figure. `base` is the reference
/// amplifier; the curves of a figure are variations of it (Raman removed,
/// lossy variant, other detunings).
struct FigurePreset {
  PresetId id = PresetId::Fig1;
  Amplifier base;
  double lossy_alpha = 0.0;     // 1/m, attenuation of the lossy variant (0: none)
  double lossy_length_m = 0.0;  // length of the lossy variant when it differs from base
  std::vector<double> detunings;  // rad/s, curves at fixed detuning
  Axis axis = Axis::Detuning;
  double start = 0.0, stop = 0.0;  // SI, detuning axis in rad/s
  int points = 0;
  QuadratureControl quad;
};

const FigurePreset& figure_preset(PresetId id);
PresetId parse_preset_id(const std::string& name);
std::string to_string(PresetId id);

/// Detunings at or below this are treated as the zero-detuning curve (dk = 0).
inline constexpr double kZeroDetuningHz = 1e6;

Table run_preset(PresetId id, int threads = 1);

}  // namespace fopa::workbench
