#pragma once

#include <string>
#include <vector>

#include "fopa/amplifier.hpp"
#include "fopa/mean_field.hpp"
#include "fopa/quadrature.hpp"

namespace fopa::workbench {

enum class Axis { Detuning, Length, PumpPower, PhiNl, Gain };
enum class Output { ClassicalGain, PsdGain, NoiseFigure, Squeezing, TransferCoeffs };
/// Signal input used for the gain-with-input and NF columns.
enum class InputMode { Optimal, EqualSplit, NfOptimal };

/// One ingested "number unit" value, kept for the metadata echo.
struct EchoEntry {
  std::string key;   // section.name
  std::string text;  // as written in the file
  double si = 0.0;
  std::string si_unit;
};

struct SweepConfig {
  Amplifier amp;
  Axis axis = Axis::Detuning;
  double start = 0.0, stop = 0.0;  // SI: rad/s, m, W or rad
  int points = 0;
  double detuning = 0.0;           // rad/s, used unless the axis is detuning
  std::vector<Output> outputs;     // kept in canonical order, no duplicates
  InputMode input = InputMode::Optimal;
  QuadratureControl quad;
  SeriesControl series;
  int threads = 1;
  std::vector<EchoEntry> echo;
};

SweepConfig load_config(const std::string& path);
/// `base_dir` resolves relative paths (the Raman table).
SweepConfig parse_config(const std::string& text, const std::string& base_dir = ".");
void validate(const SweepConfig& cfg);

/// Converts "value unit" to SI for a quantity of the given kind, e.g.
/// to_si(4, "km", "length") == 4000. Throws ParseError for unknown units.
double to_si(double value, const std::string& unit, const std::string& kind);
double from_si(double si, const std::string& unit, const std::string& kind);
/// SI unit name reported for a kind ("m", "W", "Hz", ...).
std::string si_unit(const std::string& kind);

std::string to_string(Axis axis);
std::string to_string(Output out);
std::string to_string(InputMode mode);

/// FNV-1a 64 of `text` as 16 hex digits.
std::string hash_text(const std::string& text);
/// FNV-1a 64 over the canonical echo (key and SI value), as 16 hex digits.
std::string config_hash(const SweepConfig& cfg);

}  // namespace fopa::workbench
