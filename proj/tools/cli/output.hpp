#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "config.hpp"

namespace roughcontact::cli {

/// "%.17g".
std::string csv_real(double v);

/// Fixed-column CSV: `#!` config header, one column-name line, then rows.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_row(const std::vector<double>& row);
  bool empty() const noexcept { return rows_.empty(); }
  std::string render(const RunConfig& cfg) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::string> rows_;
};

/// {"command": ..., key: value...} with out / plot-script omitted.
nlohmann::json config_json(const RunConfig& cfg);

/// With --out PREFIX writes PREFIX.csv (if any) and PREFIX.json; otherwise
/// prints both to `out`.
void emit(const RunConfig& cfg, const CsvTable* csv, const nlohmann::json& summary,
          std::ostream& out);

std::string csv_path(const RunConfig& cfg);

/// Writes `script` to the --plot-script path when one is configured.
void emit_plot_script(const RunConfig& cfg, const std::string& script);

}  // namespace roughcontact::cli
