#include "output.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace roughcontact::cli {

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw UsageError("cannot write '" + path + "'");
  os << content;
  if (!os) throw UsageError("failed writing '" + path + "'");
}

}  // namespace

std::string csv_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void CsvTable::add_row(const std::vector<double>& row) {
  std::string line;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) line += ',';
    line += csv_real(row[i]);
  }
  rows_.push_back(std::move(line));
}

std::string CsvTable::render(const RunConfig& cfg) const {
  std::ostringstream os;
  os << cfg.header();
  for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
  os << "\n";
  for (const auto& r : rows_) os << r << "\n";
  return os.str();
}

nlohmann::json config_json(const RunConfig& cfg) {
  nlohmann::json j;
  j["command"] = cfg.command();
  for (const auto& [key, value] : cfg.values()) {
    if (key == "out" || key == "plot-script") continue;
    j[key] = value;
  }
  return j;
}

std::string csv_path(const RunConfig& cfg) { return cfg.text("out") + ".csv"; }

void emit(const RunConfig& cfg, const CsvTable* csv, const nlohmann::json& summary,
          std::ostream& out) {
  const std::string json_text = summary.dump(2) + "\n";
  if (cfg.has("out")) {
    if (csv) write_file(csv_path(cfg), csv->render(cfg));
    write_file(cfg.text("out") + ".json", json_text);
    return;
  }
  if (csv) out << csv->render(cfg);
  out << json_text;
}

void emit_plot_script(const RunConfig& cfg, const std::string& script) {
  if (!cfg.has("plot-script")) return;
  write_file(cfg.text("plot-script"), script);
}

}  // namespace roughcontact::cli
