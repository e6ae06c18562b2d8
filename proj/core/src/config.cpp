#include "pasym/config.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <set>

#include "pasym/errors.hpp"

namespace pasym {

namespace {

enum class Kind { Text, Number, Integer, Flag, Numbers, Words, Choice };

struct KeySpec {
  const char* key;
  const char* fallback;
  Kind kind;
  const char* choices = "";
};

// clang-format off
const std::vector<KeySpec>& key_table() {
  static const std::vector<KeySpec> table = {
      {"name", "custom", Kind::Text},
      {"benchmark", "", Kind::Text},
      {"anchor", "", Kind::Text},
      {"grid.dimension", "1", Kind::Integer},
      {"grid.half_extent", "40", Kind::Number},
      {"grid.points", "4096", Kind::Integer},
      {"nonlinearity.name", "heat", Kind::Choice, "heat,semilinear,convection,keller-segel,system"},
      {"nonlinearity.lambda", "1", Kind::Number},
      {"nonlinearity.p", "3", Kind::Number},
      {"nonlinearity.a", "1", Kind::Numbers},
      {"nonlinearity.system_exponent", "4", Kind::Number},
      {"nonlinearity.components", "1", Kind::Integer},
      {"initial.family", "gaussian", Kind::Choice, "gaussian,shifted-gaussian,dipole"},
      {"initial.mass", "0.1", Kind::Numbers},
      {"initial.shift", "1", Kind::Numbers},
      {"initial.width", "1", Kind::Number},
      {"chemical.mass", "0.05", Kind::Number},
      {"solver.horizon", "100", Kind::Number},
      {"solver.uniform_dt", "0.02", Kind::Number},
      {"solver.uniform_until", "1", Kind::Number},
      {"solver.growth", "1.05", Kind::Number},
      {"solver.max_dt", "2", Kind::Number},
      {"solver.refinement", "0", Kind::Integer},
      {"solver.picard_tol", "1e-10", Kind::Number},
      {"solver.picard_max_iters", "25", Kind::Integer},
      {"solver.duhamel_rule", "trapezoid", Kind::Choice, "trapezoid,exponential"},
      {"expansion.K", "1", Kind::Number},
      {"expansion.orders", "0", Kind::Numbers},
      {"expansion.variants", "Un", Kind::Words},
      {"expansion.J", "0", Kind::Integer},
      {"rates.norms", "1,2,inf", Kind::Numbers},
      {"rates.derivatives", "0,1", Kind::Numbers},
      {"rates.weights", "", Kind::Numbers},
      {"rates.window", "auto", Kind::Text},
      {"rates.tolerance", "0.15", Kind::Number},
      {"rates.tolerance_higher", "0.2", Kind::Number},
      {"rates.log_correction", "auto", Kind::Choice, "auto,on,off"},
      {"output.dir", "", Kind::Text},
      {"output.snapshots", "false", Kind::Flag},
  };
  return table;
}
// clang-format on

const KeySpec* find_key(const std::string& key) {
  for (const KeySpec& s : key_table()) {
    if (key == s.key) return &s;
  }
  return nullptr;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

void validate(const KeySpec& spec, const std::string& value) {
  const std::string where = std::string("config key '") + spec.key + "': ";
  try {
    switch (spec.kind) {
      case Kind::Text: break;
      case Kind::Number: (void)parse_number(value); break;
      case Kind::Integer: {
        std::size_t used = 0;
        (void)std::stoi(value, &used);
        if (used != value.size()) throw ConfigError("trailing characters");
        break;
      }
      case Kind::Flag:
        if (value != "true" && value != "false") throw ConfigError("expected true or false");
        break;
      case Kind::Numbers:
        for (const auto& item : split_list(value)) (void)parse_number(item);
        break;
      case Kind::Words:
        if (split_list(value).empty()) throw ConfigError("expected a non-empty list");
        break;
      case Kind::Choice: {
        const auto options = split_list(spec.choices);
        if (std::find(options.begin(), options.end(), value) == options.end()) {
          throw ConfigError(std::string("expected one of ") + spec.choices);
        }
        break;
      }
    }
  } catch (const ConfigError& e) {
    throw ConfigError(where + e.what() + " (got '" + value + "')");
  } catch (const std::exception&) {
    throw ConfigError(where + "malformed value '" + value + "'");
  }
}

}  // namespace

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  if (trim(text).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(trim(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_number(const std::string& text) {
  const std::string t = trim(text);
  if (t == "inf" || t == "+inf") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + text + "'");
  }
  if (used != t.size() || std::isnan(v)) throw ConfigError("not a number: '" + text + "'");
  return v;
}

ExperimentConfig::ExperimentConfig() {
  for (const KeySpec& s : key_table()) values_[s.key] = s.fallback;
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  const KeySpec* spec = find_key(key);
  if (spec == nullptr) throw ConfigError("unknown config key '" + key + "'");
  const std::string v = trim(value);
  validate(*spec, v);
  values_[key] = v;
}

const std::string& ExperimentConfig::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown config key '" + key + "'");
  return it->second;
}

double ExperimentConfig::number(const std::string& key) const { return parse_number(get(key)); }

int ExperimentConfig::integer(const std::string& key) const { return std::stoi(get(key)); }

bool ExperimentConfig::flag(const std::string& key) const { return get(key) == "true"; }

std::vector<double> ExperimentConfig::numbers(const std::string& key) const {
  std::vector<double> out;
  for (const auto& item : split_list(get(key))) out.push_back(parse_number(item));
  return out;
}

std::vector<std::string> ExperimentConfig::words(const std::string& key) const { return split_list(get(key)); }

void ExperimentConfig::write(std::ostream& out) const {
  for (const auto& [k, v] : values_) out << k << " = " << v << '\n';
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::parse(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> out;
  std::set<std::string> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const KeySpec* spec = find_key(key);
    if (spec == nullptr) throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (!seen.insert(key).second) {
      throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
    validate(*spec, value);
    out.emplace_back(key, value);
  }
  return out;
}

const std::vector<std::string>& ExperimentConfig::known_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const KeySpec& s : key_table()) k.push_back(s.key);
    return k;
  }();
  return keys;
}

}  // namespace pasym
