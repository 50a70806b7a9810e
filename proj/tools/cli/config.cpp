#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace roughcontact::cli {

namespace {

const std::vector<std::string> kAll{"field-probe", "sweep-norms", "drag-table",
                                    "fall",        "bmo-check",   "lemma10"};
const std::vector<std::string> kGap{"field-probe", "sweep-norms", "drag-table", "fall", "lemma10"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

const OptionSpec* find_spec(const std::string& key) {
  for (const auto& spec : option_table()) {
    if (spec.key == key) return &spec;
  }
  return nullptr;
}

double parse_real(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty() || !std::isfinite(v)) {
    throw UsageError("option '" + key + "': '" + text + "' is not a finite number");
  }
  return v;
}

long long parse_integer(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw UsageError("option '" + key + "': '" + text + "' is not an integer");
  }
  return v;
}

void check_value(const OptionSpec& spec, const std::string& value) {
  switch (spec.kind) {
    case ValueKind::Real: parse_real(spec.key, value); break;
    case ValueKind::Integer: parse_integer(spec.key, value); break;
    case ValueKind::RealList:
      for (const auto& item : split_list(value)) parse_real(spec.key, item);
      break;
    case ValueKind::IntegerList:
      for (const auto& item : split_list(value)) parse_integer(spec.key, item);
      break;
    case ValueKind::Text:
    case ValueKind::TextList: break;
  }
}

}  // namespace

const std::vector<OptionSpec>& option_table() {
  static const std::vector<OptionSpec> table{
      {"alpha", ValueKind::RealList, "0.25,0.5,0.75,1", "gap exponents in (0, 1]", kGap,
       {{"fall", "0.25"}}},
      {"delta", ValueKind::Real, "1", "half-width of the gap region", kGap},
      {"mu", ValueKind::Real, "1", "viscosity", {"field-probe", "sweep-norms", "drag-table", "fall"}},
      {"h-min", ValueKind::Real, "1e-7", "smallest gap", {"field-probe", "sweep-norms", "drag-table", "lemma10"}},
      {"h-max", ValueKind::Real, "1e-3", "largest gap", {"field-probe", "sweep-norms", "drag-table", "lemma10"}},
      {"samples", ValueKind::Integer, "25", "log-spaced h samples (drag table nodes for fall)",
       {"field-probe", "sweep-norms", "drag-table", "lemma10", "fall"}},
      {"tol", ValueKind::Real, "1e-8", "relative tolerance (quadrature and integrator)",
       {"sweep-norms", "drag-table", "fall", "lemma10"}},
      {"out", ValueKind::Text, "", "output prefix: writes PREFIX.csv and/or PREFIX.json", kAll},
      {"seed", ValueKind::Integer, "12345", "seed for random probe points", {"field-probe"}},
      {"jobs", ValueKind::Integer, "0", "worker threads (0: available parallelism)", kAll},
      {"plot-script", ValueKind::Text, "", "write a gnuplot script for the CSV output",
       {"sweep-norms", "drag-table", "fall", "lemma10"}},
      {"points", ValueKind::Integer, "100", "random interior probes per (alpha, h)", {"field-probe"}},
      {"probes", ValueKind::TextList, "", "extra probe points x1:x2 reported in full", {"field-probe"}},
      {"r2-floor", ValueKind::Real, "0.999", "minimum r_squared of power-law fits", {"sweep-norms"}},
      {"p", ValueKind::Real, "2", "numerator power of |x1| (lemma10) or L^p exponent (bmo-check)",
       {"lemma10", "bmo-check"}},
      {"q", ValueKind::Real, "3", "power of the gap in the denominator", {"lemma10"}},
      {"theta", ValueKind::Real, "0.5", "interpolation parameter in (0, 1)", {"bmo-check"}},
      {"resolutions", ValueKind::IntegerList, "128,256,512", "grid resolutions", {"bmo-check"}},
      {"functions", ValueKind::TextList, "constant,linear,bump,log_abs,inv_sqrt,pow_0.3",
       "catalog functions", {"bmo-check"}},
      {"h0", ValueKind::Real, "1e-3", "initial gap (top of the drag table)", {"fall"}},
      {"G", ValueKind::Real, "1", "driving force (rho_S - rho_F) g |S(0)|", {"fall"}},
      {"drag", ValueKind::Text, "table", "drag source: table or power", {"fall"}},
      {"K", ValueKind::Real, "1", "power-law drag prefactor", {"fall"}},
      {"beta", ValueKind::Real, "0.5", "power-law drag exponent", {"fall"}},
      {"h-contact", ValueKind::Real, "", "contact threshold (default: 1e-9 h0)", {"fall"}},
      {"t-max", ValueKind::Real, "", "time horizon (default: 10 h0 n(h0) / G)", {"fall"}},
  };
  return table;
}

std::vector<OptionSpec> options_for(const std::string& command) {
  std::vector<OptionSpec> out;
  for (const auto& spec : option_table()) {
    if (std::find(spec.commands.begin(), spec.commands.end(), command) != spec.commands.end()) {
      out.push_back(spec);
    }
  }
  return out;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string content = buffer.str();
  std::map<std::string, std::string> out;

  if (trim(content).rfind('{', 0) == 0) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(content);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("config file '" + path + "': " + e.what());
    }
    if (!doc.contains("config") || !doc["config"].is_object()) {
      throw UsageError("config file '" + path + "': JSON input needs a \"config\" object");
    }
    for (const auto& [key, value] : doc["config"].items()) {
      out[key] = value.is_string() ? value.get<std::string>() : value.dump();
    }
    out.erase("command");
    return out;
  }

  const bool from_output = content.find("#!") != std::string::npos;
  std::istringstream lines(content);
  std::string line;
  int number = 0;
  while (std::getline(lines, line)) {
    ++number;
    std::string body = trim(line);
    if (from_output) {
      if (body.rfind("#!", 0) != 0) continue;
      body = trim(body.substr(2));
    } else if (body.empty() || body[0] == '#') {
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config file '" + path + "' line " + std::to_string(number) +
                       ": expected key = value");
    }
    out[trim(body.substr(0, eq))] = trim(body.substr(eq + 1));
  }
  out.erase("command");
  return out;
}

RunConfig RunConfig::resolve(const std::string& command,
                             const std::map<std::string, std::string>& flags,
                             const std::map<std::string, std::string>& file) {
  RunConfig cfg;
  cfg.command_ = command;
  const auto specs = options_for(command);
  auto accepted = [&](const std::string& key) {
    return std::any_of(specs.begin(), specs.end(), [&](const auto& s) { return s.key == key; });
  };
  for (const auto& [key, value] : file) {
    if (!accepted(key)) throw UsageError("config key '" + key + "' is not used by " + command);
  }
  for (const auto& [key, value] : flags) {
    if (!accepted(key)) throw UsageError("option --" + key + " is not used by " + command);
  }
  for (const auto& spec : specs) {
    std::string value = spec.fallback;
    if (auto it = spec.command_fallback.find(command); it != spec.command_fallback.end()) {
      value = it->second;
    }
    if (auto it = file.find(spec.key); it != file.end()) value = it->second;
    if (auto it = flags.find(spec.key); it != flags.end()) value = it->second;
    if (value.empty()) continue;
    check_value(spec, value);
    cfg.values_[spec.key] = value;
  }
  return cfg;
}

bool RunConfig::has(const std::string& key) const { return values_.count(key) != 0; }

const std::string& RunConfig::text(const std::string& key) const {
  static const std::string empty;
  auto it = values_.find(key);
  return it == values_.end() ? empty : it->second;
}

double RunConfig::real(const std::string& key) const {
  if (!has(key)) throw UsageError("missing value for '" + key + "'");
  return parse_real(key, text(key));
}

std::optional<double> RunConfig::optional_real(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return real(key);
}

long long RunConfig::integer(const std::string& key) const {
  if (!has(key)) throw UsageError("missing value for '" + key + "'");
  return parse_integer(key, text(key));
}

std::uint64_t RunConfig::unsigned_integer(const std::string& key) const {
  const long long v = integer(key);
  if (v < 0) throw UsageError("option '" + key + "' must be >= 0");
  return static_cast<std::uint64_t>(v);
}

std::vector<double> RunConfig::reals(const std::string& key) const {
  std::vector<double> out;
  for (const auto& item : split_list(text(key))) out.push_back(parse_real(key, item));
  return out;
}

std::vector<long long> RunConfig::integers(const std::string& key) const {
  std::vector<long long> out;
  for (const auto& item : split_list(text(key))) out.push_back(parse_integer(key, item));
  return out;
}

std::vector<std::string> RunConfig::texts(const std::string& key) const {
  return split_list(text(key));
}

void RunConfig::set(const std::string& key, const std::string& value) {
  const OptionSpec* spec = find_spec(key);
  if (!spec) throw UsageError("unknown option '" + key + "'");
  check_value(*spec, value);
  values_[key] = value;
}

std::string RunConfig::header() const {
  std::ostringstream os;
  os << "#! command = " << command_ << "\n";
  for (const auto& spec : options_for(command_)) {
    if (spec.key == "out" || spec.key == "plot-script") continue;
    if (auto it = values_.find(spec.key); it != values_.end()) {
      os << "#! " << spec.key << " = " << it->second << "\n";
    }
  }
  return os.str();
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string format_real(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

}  // namespace roughcontact::cli
