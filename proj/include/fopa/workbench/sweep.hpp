#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fopa/workbench/config.hpp"
#include "fopa/workbench/table.hpp"

namespace fopa::workbench {

/// Evaluates row(i) for i in [0, n) on up to `threads` workers and returns
/// the rows in index order. If any row throws, the error from the lowest
/// failing index is rethrown with label(i) appended to its message.
std::vector<std::vector<double>> evaluate_rows(int n, int threads,
                                               const std::function<std::vector<double>(int)>& row,
                                               const std::function<std::string(int)>& label);

/// Axis grid start + i (stop - start) / (points - 1); the last point is stop.
std::vector<double> axis_grid(double start, double stop, int points);

/// Fiber length giving nonlinear phase phi = gamma0 P L_eff.
double length_for_phase(const Amplifier& amp, double phi_nl);

/// One row per axis point; `threads` > 0 overrides the config.
Table run_sweep(const SweepConfig& cfg, int threads = 0);

/// Column names run_sweep produces for this config.
std::vector<std::string> sweep_columns(const SweepConfig& cfg);

}  // namespace fopa::workbench
