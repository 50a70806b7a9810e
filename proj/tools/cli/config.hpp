#pragma once

// Run configuration: a flat key = value map shared by config files, flags and
// output headers. Keys are the long flag names without the leading dashes.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace roughcontact::cli {

/// Bad flag, config key or value; maps to exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ValueKind { Real, Integer, RealList, IntegerList, Text, TextList };

struct OptionSpec {
  std::string key;
  ValueKind kind;
  std::string fallback;  // empty: unset unless given
  std::string help;
  std::vector<std::string> commands;
  std::map<std::string, std::string> command_fallback{};  // overrides `fallback`
};

/// Every option understood by some subcommand.
const std::vector<OptionSpec>& option_table();

/// Options accepted by `command`, in table order.
std::vector<OptionSpec> options_for(const std::string& command);

/// Reads `key = value` lines ('#' comments). Files produced by a previous run
/// are accepted too: CSV outputs through their `#! key = value` header lines,
/// JSON outputs through their "config" object.
std::map<std::string, std::string> read_config_file(const std::string& path);

class RunConfig {
 public:
  RunConfig() = default;

  /// Flags win over file values, file values over defaults. Unknown keys in
  /// the file are usage errors.
  static RunConfig resolve(const std::string& command,
                           const std::map<std::string, std::string>& flags,
                           const std::map<std::string, std::string>& file);

  const std::string& command() const noexcept { return command_; }
  bool has(const std::string& key) const;
  const std::string& text(const std::string& key) const;
  double real(const std::string& key) const;
  std::optional<double> optional_real(const std::string& key) const;
  long long integer(const std::string& key) const;
  std::uint64_t unsigned_integer(const std::string& key) const;
  std::vector<double> reals(const std::string& key) const;
  std::vector<long long> integers(const std::string& key) const;
  std::vector<std::string> texts(const std::string& key) const;

  /// Sets a resolved value (used for defaults derived from other keys).
  void set(const std::string& key, const std::string& value);

  const std::map<std::string, std::string>& values() const noexcept { return values_; }

  /// `#! key = value` lines, one per effective setting, command first.
  std::string header() const;

 private:
  std::string command_;
  std::map<std::string, std::string> values_;
};

std::vector<std::string> split_list(const std::string& text);

/// Shortest round-trip decimal form.
std::string format_real(double v);

}  // namespace roughcontact::cli
