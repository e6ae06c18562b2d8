#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace pasym {

/// Flat `key = value` experiment configuration with dotted sections and `#`
/// comments. Every key has a registered default; unknown keys are rejected.
class ExperimentConfig {
 public:
  /// All keys at their defaults.
  ExperimentConfig();

  /// Throws ConfigError for unknown keys or malformed values.
  void set(const std::string& key, const std::string& value);
  const std::string& get(const std::string& key) const;

  std::string text(const std::string& key) const { return get(key); }
  double number(const std::string& key) const;
  int integer(const std::string& key) const;
  bool flag(const std::string& key) const;
  std::vector<double> numbers(const std::string& key) const;
  std::vector<std::string> words(const std::string& key) const;

  /// Sorted `key = value` lines.
  void write(std::ostream& out) const;
  const std::map<std::string, std::string>& entries() const { return values_; }

  /// Parses the text format into validated pairs without applying them, so a
  /// `benchmark = <id>` base can be resolved before the overrides.
  static std::vector<std::pair<std::string, std::string>> parse(std::istream& in);

  static const std::vector<std::string>& known_keys();

 private:
  std::map<std::string, std::string> values_;
};

/// Splits a comma-separated list, trimming blanks; "" gives an empty list.
std::vector<std::string> split_list(const std::string& text);

/// Parses a real number, accepting "inf".
double parse_number(const std::string& text);

}  // namespace pasym
