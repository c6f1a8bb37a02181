#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "actinfo/cli.hpp"
#include "actinfo/io.hpp"

namespace actinfo::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string normalize_key(std::string key) {
  std::replace(key.begin(), key.end(), '-', '_');
  return key;
}

std::vector<std::string> list_items(const std::string& key, const std::string& value) {
  std::vector<std::string> items;
  for (const auto& f : io::split_fields(value)) {
    auto t = trim(f);
    if (t.empty()) throw ConfigError("--" + key + ": empty list item in '" + value + "'");
    items.push_back(std::move(t));
  }
  return items;
}

double parse_real(const std::string& key, const std::string& text) {
  try {
    return io::parse_double(trim(text));
  } catch (const Error&) {
    throw ConfigError("--" + key + ": expected a number, got '" + text + "'");
  }
}

long long parse_integer(const std::string& key, const std::string& text) {
  const auto t = trim(text);
  char* end = nullptr;
  errno = 0;
  const long long v = std::strtoll(t.c_str(), &end, 10);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE)
    throw ConfigError("--" + key + ": expected an integer, got '" + text + "'");
  return v;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view text) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

const char* to_string(Source s) noexcept {
  switch (s) {
    case Source::Default: return "default";
    case Source::ConfigFile: return "config";
    case Source::Flag: return "flag";
  }
  return "?";
}

bool is_runtime_key(std::string_view key) noexcept {
  return key == "jobs" || key == "out" || key == "config" || key == "plot";
}

std::map<std::string, std::string> parse_config_text(std::string_view text) {
  std::map<std::string, std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(number) + ": expected key=value");
    auto key = normalize_key(trim(std::string_view(t).substr(0, eq)));
    if (key.empty()) throw ConfigError("config line " + std::to_string(number) + ": empty key");
    out[key] = trim(std::string_view(t).substr(eq + 1));
  }
  return out;
}

Settings::Settings(std::string command, const std::vector<std::pair<std::string, std::string>>& defaults)
    : command_(std::move(command)) {
  for (const auto& [k, v] : defaults) values_[k] = {v, Source::Default};
}

void Settings::apply(const std::map<std::string, std::string>& values, Source source) {
  for (const auto& [k, v] : values) {
    auto it = values_.find(k);
    if (it == values_.end()) throw ConfigError("unknown setting '" + k + "' for command " + command_);
    it->second = {v, source};
  }
}

bool Settings::has(const std::string& key) const {
  auto it = values_.find(key);
  return it != values_.end() && !it->second.value.empty();
}

const Setting& Settings::at(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("setting '" + key + "' is not defined for " + command_);
  return it->second;
}

std::string Settings::text(const std::string& key) const { return at(key).value; }

double Settings::real(const std::string& key) const {
  const double v = parse_real(key, at(key).value);
  if (!std::isfinite(v)) throw ConfigError("--" + key + ": must be finite");
  return v;
}

long long Settings::integer(const std::string& key) const { return parse_integer(key, at(key).value); }

std::uint64_t Settings::unsigned_integer(const std::string& key) const {
  const auto t = trim(at(key).value);
  if (t.empty()) throw ConfigError("--" + key + " is required");
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
  if (t[0] == '-' || end != t.c_str() + t.size() || errno == ERANGE)
    throw ConfigError("--" + key + ": expected a nonnegative integer, got '" + t + "'");
  return v;
}

bool Settings::flag(const std::string& key) const {
  const auto t = trim(at(key).value);
  if (t == "1" || t == "true" || t == "yes" || t == "on") return true;
  if (t.empty() || t == "0" || t == "false" || t == "no" || t == "off") return false;
  throw ConfigError("--" + key + ": expected a boolean, got '" + t + "'");
}

std::vector<double> Settings::reals(const std::string& key) const {
  std::vector<double> out;
  for (const auto& item : list_items(key, at(key).value)) out.push_back(parse_real(key, item));
  return out;
}

std::vector<long long> Settings::integers(const std::string& key) const {
  std::vector<long long> out;
  for (const auto& item : list_items(key, at(key).value)) out.push_back(parse_integer(key, item));
  return out;
}

std::string Settings::manifest() const {
  std::ostringstream os;
  os << "command=" << command_ << '\n' << "version=" << ACTINFO_VERSION << '\n';
  for (const auto& [k, s] : values_) os << k << '=' << s.value << '\n';
  for (const auto& [k, s] : values_) os << "source." << k << '=' << to_string(s.source) << '\n';
  return os.str();
}

std::uint64_t Settings::hash() const {
  std::string canonical = command_ + '\n' + ACTINFO_VERSION + '\n';
  for (const auto& [k, s] : values_)
    if (!is_runtime_key(k)) canonical += k + '=' + s.value + '\n';
  return fnv1a64(canonical);
}

std::string Settings::hash_hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash()));
  return buf;
}

}  // namespace actinfo::cli
