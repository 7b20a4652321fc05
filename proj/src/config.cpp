#include "lapx/config.hpp"

#include "lapx/core.hpp"

#include <boost/property_tree/ini_parser.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace lapx {

std::string trim(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) out.push_back(trim(item));
  if (!text.empty() && text.back() == ',') out.push_back("");
  return out;
}

namespace {

// "value  # note" -> "value"; a comment marker must follow whitespace.
std::string strip_comment(const std::string& value) {
  for (std::size_t i = 1; i < value.size(); ++i)
    if ((value[i] == '#' || value[i] == ';') && std::isspace(static_cast<unsigned char>(value[i - 1])))
      return trim(value.substr(0, i));
  if (!value.empty() && (value[0] == '#' || value[0] == ';')) return "";
  return trim(value);
}

bool parse_double(const std::string& s, double& out) {
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end && !s.empty();
}

bool parse_long(const std::string& s, long& out) {
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  if (ec == std::errc() && ptr == end && !s.empty()) return true;
  // integers written in scientific notation, e.g. 1e5
  double d;
  if (parse_double(s, d) && std::isfinite(d) && d == std::floor(d) && std::abs(d) < 9e15) {
    out = static_cast<long>(d);
    return true;
  }
  return false;
}

}  // namespace

ConfigFile ConfigFile::parse(const std::string& text, const std::string& origin) {
  ConfigFile file;
  boost::property_tree::ptree tree;
  std::istringstream in(text);
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    file.parse_errors_.push_back(origin + ": line " + std::to_string(e.line()) + ": " + e.message());
    return file;
  }
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      file.parse_errors_.push_back(origin + ": key '" + section + "' outside of any [section]");
      continue;
    }
    file.section_order_.push_back(section);
    auto& entries = file.values_[section];
    for (const auto& [key, value] : body) entries[key] = strip_comment(value.data());
  }
  return file;
}

ConfigFile ConfigFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    ConfigFile file;
    file.parse_errors_.push_back(path + ": cannot open file");
    return file;
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str(), path);
}

std::optional<std::string> ConfigFile::get(const std::string& section, const std::string& key) const {
  const auto s = values_.find(section);
  if (s == values_.end()) return std::nullopt;
  const auto k = s->second.find(key);
  if (k == s->second.end()) return std::nullopt;
  return k->second;
}

std::vector<std::string> ConfigFile::sections() const { return section_order_; }

std::vector<std::string> ConfigFile::keys(const std::string& section) const {
  std::vector<std::string> out;
  const auto s = values_.find(section);
  if (s != values_.end())
    for (const auto& [key, value] : s->second) out.push_back(key);
  return out;
}

Params::Params(const ConfigFile& file, std::string section, nlohmann::json& resolved,
               std::vector<std::string>& errors)
    : file_(file), section_(std::move(section)), out_(resolved), errors_(errors) {
  if (!out_.contains(section_)) out_[section_] = nlohmann::json::object();
}

std::optional<std::string> Params::raw(const std::string& key) {
  used_.insert(key);
  auto v = file_.get(section_, key);
  if (v && v->empty()) {
    fail(key, "empty value");
    return std::nullopt;
  }
  return v;
}

void Params::fail(const std::string& key, const std::string& message) {
  errors_.push_back(section_ + "." + key + ": " + message);
}

double Params::real(const std::string& key, double fallback) {
  double value = fallback;
  if (auto v = raw(key)) {
    if (!parse_double(*v, value) || !std::isfinite(value)) {
      fail(key, "expected a finite number, got '" + *v + "'");
      value = fallback;
    }
  }
  out_[section_][key] = value;
  return value;
}

long Params::integer(const std::string& key, long fallback) {
  long value = fallback;
  if (auto v = raw(key)) {
    if (!parse_long(*v, value)) {
      fail(key, "expected an integer, got '" + *v + "'");
      value = fallback;
    }
  }
  out_[section_][key] = value;
  return value;
}

bool Params::flag(const std::string& key, bool fallback) {
  bool value = fallback;
  if (auto v = raw(key)) {
    std::string s = *v;
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "true" || s == "yes" || s == "on" || s == "1") value = true;
    else if (s == "false" || s == "no" || s == "off" || s == "0") value = false;
    else fail(key, "expected true or false, got '" + *v + "'");
  }
  out_[section_][key] = value;
  return value;
}

std::string Params::text(const std::string& key, const std::string& fallback) {
  std::string value = fallback;
  if (auto v = raw(key)) value = *v;
  out_[section_][key] = value;
  return value;
}

std::vector<double> Params::reals(const std::string& key, const std::vector<double>& fallback) {
  std::vector<double> values = fallback;
  if (auto v = raw(key)) {
    values.clear();
    for (const auto& item : split_list(*v)) {
      double d;
      if (!parse_double(item, d) || !std::isfinite(d)) {
        fail(key, "expected a list of finite numbers, got '" + item + "'");
        values = fallback;
        break;
      }
      values.push_back(d);
    }
  }
  out_[section_][key] = values;
  return values;
}

std::vector<long> Params::integers(const std::string& key, const std::vector<long>& fallback) {
  std::vector<long> values = fallback;
  if (auto v = raw(key)) {
    values.clear();
    for (const auto& item : split_list(*v)) {
      long n;
      if (!parse_long(item, n)) {
        fail(key, "expected a list of integers, got '" + item + "'");
        values = fallback;
        break;
      }
      values.push_back(n);
    }
  }
  out_[section_][key] = values;
  return values;
}

std::vector<std::string> Params::texts(const std::string& key,
                                       const std::vector<std::string>& fallback) {
  std::vector<std::string> values = fallback;
  if (auto v = raw(key)) {
    values = split_list(*v);
    for (const auto& item : values)
      if (item.empty()) {
        fail(key, "empty list entry");
        values = fallback;
        break;
      }
  }
  out_[section_][key] = values;
  return values;
}

void Params::reject_unknown_keys() {
  for (const auto& key : file_.keys(section_))
    if (!used_.count(key)) fail(key, "unknown key");
}

std::string canonical_json(const nlohmann::json& resolved) { return resolved.dump(); }

std::string config_hash(const nlohmann::json& resolved) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_json(resolved)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace lapx
