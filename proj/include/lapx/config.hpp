#ifndef LAPX_CONFIG_HPP_
#define LAPX_CONFIG_HPP_

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace lapx {

/// INI-style experiment file: [section] headers, key = value lines, '#' or
/// ';' comments. Lists are comma separated.
class ConfigFile {
 public:
  static ConfigFile load(const std::string& path);
  static ConfigFile parse(const std::string& text, const std::string& origin = "<string>");

  /// Raw value with any trailing comment removed, or nullopt.
  std::optional<std::string> get(const std::string& section, const std::string& key) const;
  std::vector<std::string> sections() const;
  std::vector<std::string> keys(const std::string& section) const;
  const std::vector<std::string>& parse_errors() const { return parse_errors_; }

 private:
  std::map<std::string, std::map<std::string, std::string>> values_;
  std::vector<std::string> section_order_;
  std::vector<std::string> parse_errors_;
};

/// Reads typed parameters of one section, substituting defaults, recording
/// every resolved value into a JSON object and collecting errors as
/// "section.key: message" instead of throwing.
class Params {
 public:
  Params(const ConfigFile& file, std::string section, nlohmann::json& resolved,
         std::vector<std::string>& errors);

  double real(const std::string& key, double fallback);
  long integer(const std::string& key, long fallback);
  bool flag(const std::string& key, bool fallback);
  std::string text(const std::string& key, const std::string& fallback);
  std::vector<double> reals(const std::string& key, const std::vector<double>& fallback);
  std::vector<long> integers(const std::string& key, const std::vector<long>& fallback);
  std::vector<std::string> texts(const std::string& key, const std::vector<std::string>& fallback);

  /// Records an error against section.key.
  void fail(const std::string& key, const std::string& message);
  /// Reports every key present in the file but never read.
  void reject_unknown_keys();
  const std::string& section() const { return section_; }

 private:
  std::optional<std::string> raw(const std::string& key);

  const ConfigFile& file_;
  std::string section_;
  nlohmann::json& out_;
  std::vector<std::string>& errors_;
  std::set<std::string> used_;
};

/// Canonical text of a resolved config (sorted keys, no whitespace).
std::string canonical_json(const nlohmann::json& resolved);
/// 64-bit FNV-1a of canonical_json, as 16 lowercase hex digits.
std::string config_hash(const nlohmann::json& resolved);

std::vector<std::string> split_list(const std::string& text);
std::string trim(const std::string& text);

}  // namespace lapx

#endif  // LAPX_CONFIG_HPP_
