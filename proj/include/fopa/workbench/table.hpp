#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace fopa::workbench {

inline constexpr const char* kToolName = "fopa-lab";
inline constexpr const char* kToolVersion = "0.1.0";

/// Numeric result table. Column names carry their unit as a suffix
/// (detuning_THz, g_psa_dB); dimensionless columns have none.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  /// Emitted as '# key: value' lines ahead of the header.
  std::vector<std::pair<std::string, std::string>> metadata;

  void add_row(std::vector<double> row);
  std::size_t column(const std::string& name) const;
};

/// Metadata block, header and rows with 12 significant digits. The
/// '# generated:' line is the only part that varies between identical runs.
void write_csv(const Table& table, std::ostream& out);
void emit_csv(const Table& table, const std::string& path);

}  // namespace fopa::workbench
