#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fopa::workbench {

enum class Suite { Commutators, SeriesVsClosed, OptimaBruteforce, Quadrature, DegenerateLimits, All };

struct CheckResult {
  std::string suite;
  std::string check;
  double tolerance = 0.0;
  double observed = 0.0;
  bool pass = false;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool pass() const;
};

Suite parse_suite(const std::string& name);
std::string to_string(Suite suite);

/// Runs the oracle suite with fixed seeds. Failures are report content; the
/// oracles (RK4 transfer chains, fixed-grid Simpson, brute-force grids) share
/// no numerics with the solvers they check.
VerifyReport verify(Suite suite, int threads = 1);

void print_report(const VerifyReport& report, std::ostream& out);

}  // namespace fopa::workbench
