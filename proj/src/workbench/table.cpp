#include "fopa/workbench/table.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <ostream>

#include "fopa/errors.hpp"

namespace fopa::workbench {

void Table::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) throw ValidationError("row width does not match the header");
  rows.push_back(std::move(row));
}

std::size_t Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  throw ValidationError("no column named '" + name + "'");
}

namespace {

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

void write_csv(const Table& table, std::ostream& out) {
  out << "# tool: " << kToolName << ' ' << kToolVersion << '\n';
  for (const auto& [key, value] : table.metadata) out << "# " << key << ": " << value << '\n';
  out << "# generated: " << utc_now() << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  char buf[40];
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.12g", row[i]);
      out << (i ? "," : "") << buf;
    }
    out << '\n';
  }
}

void emit_csv(const Table& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_csv(table, out);
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace fopa::workbench
