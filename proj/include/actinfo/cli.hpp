#pragma once

// Command-line front end. Settings resolve as flag > config file > default
// and are echoed to manifest.txt; every CSV begins with the manifest hash.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace actinfo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint64_t fnv1a64(std::string_view text) noexcept;

enum class Source { Default, ConfigFile, Flag };
const char* to_string(Source s) noexcept;

struct Setting {
  std::string value;
  Source source = Source::Default;
};

/// Parses key=value lines; '#' starts a comment, dashes in keys become
/// underscores.
std::map<std::string, std::string> parse_config_text(std::string_view text);

class Settings {
 public:
  Settings(std::string command, const std::vector<std::pair<std::string, std::string>>& defaults);

  /// Keys not declared for the command raise ConfigError.
  void apply(const std::map<std::string, std::string>& values, Source source);

  const std::string& command() const noexcept { return command_; }
  bool has(const std::string& key) const;
  const Setting& at(const std::string& key) const;

  std::string text(const std::string& key) const;
  double real(const std::string& key) const;
  long long integer(const std::string& key) const;
  std::uint64_t unsigned_integer(const std::string& key) const;
  bool flag(const std::string& key) const;
  std::vector<double> reals(const std::string& key) const;
  std::vector<long long> integers(const std::string& key) const;

  /// Sorted key=value lines, then source.<key>=default|config|flag lines.
  std::string manifest() const;
  /// Hash of the command, library version and non-runtime settings.
  std::uint64_t hash() const;
  std::string hash_hex() const;

 private:
  std::string command_;
  std::map<std::string, Setting> values_;
};

/// Keys that affect how a run executes but not what it computes.
bool is_runtime_key(std::string_view key) noexcept;

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace actinfo::cli
