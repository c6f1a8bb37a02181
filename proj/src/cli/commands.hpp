#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "actinfo/cli.hpp"

namespace actinfo::cli {

class Output {
 public:
  Output(std::filesystem::path dir, std::string hash_hex, bool plots);

  /// Opens dir/name and writes the manifest-hash comment line.
  std::ofstream csv(const std::string& name);
  void plot(const std::string& name, const std::string& script);
  void note(const std::string& key, const std::string& value);

  const std::vector<std::pair<std::string, std::string>>& notes() const noexcept { return notes_; }
  const std::vector<std::string>& files() const noexcept { return files_; }
  bool plots() const noexcept { return plots_; }

 private:
  std::filesystem::path dir_;
  std::string hash_hex_;
  bool plots_;
  std::vector<std::pair<std::string, std::string>> notes_;
  std::vector<std::string> files_;
};

struct CommandSpec {
  std::string name;
  std::string description;
  std::vector<std::pair<std::string, std::string>> defaults;
  bool stochastic;
  std::function<void(const Settings&, Output&)> handler;
};

const std::vector<CommandSpec>& command_table();

/// Defaults shared by every command.
std::vector<std::pair<std::string, std::string>> common_defaults();

}  // namespace actinfo::cli
