#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "actinfo/error.hpp"
#include "actinfo/kernels.hpp"
#include "commands.hpp"

namespace actinfo::cli {

namespace {

std::string dashed(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return key;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("--config: cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_config_kind(ErrorKind k) { return k == ErrorKind::InvalidArgument || k == ErrorKind::ParseError; }

int execute(const CommandSpec& spec, const std::map<std::string, std::string>& flags, std::ostream& out) {
  auto defaults = common_defaults();
  defaults.insert(defaults.end(), spec.defaults.begin(), spec.defaults.end());
  Settings settings(spec.name, defaults);
  if (auto it = flags.find("config"); it != flags.end() && !it->second.empty()) {
    auto from_file = parse_config_text(read_file(it->second));
    from_file.erase("config");
    settings.apply(from_file, Source::ConfigFile);
  }
  settings.apply(flags, Source::Flag);

  if (spec.stochastic && !settings.has("seed")) throw ConfigError("--seed is required for " + spec.name);
  if (settings.has("seed")) settings.unsigned_integer("seed");
  const long long jobs = settings.integer("jobs");
  if (jobs < 0) throw ConfigError("--jobs must be nonnegative");
  if (jobs > 0) kernels::set_threads(static_cast<int>(jobs));

  const std::filesystem::path dir = settings.text("out");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("--out: cannot create '" + dir.string() + "': " + ec.message());

  Output output(dir, settings.hash_hex(), settings.flag("plot"));
  spec.handler(settings, output);

  std::ofstream manifest(dir / "manifest.txt", std::ios::binary);
  if (!manifest) throw std::runtime_error("cannot write manifest.txt");
  manifest << "manifest_hash=" << settings.hash_hex() << '\n' << settings.manifest();
  for (const auto& [k, v] : output.notes()) manifest << "result." << k << '=' << v << '\n';
  for (const auto& f : output.files()) manifest << "file=" << f << '\n';
  for (const auto& f : output.files()) out << (dir / f).string() << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Active information: figures, estimator calibration and example models", "actinfo"};
  app.set_version_flag("--version", ACTINFO_VERSION);
  app.require_subcommand(1);

  const auto& table = command_table();
  std::vector<std::map<std::string, std::string>> flag_values(table.size());
  std::vector<std::vector<std::pair<std::string, CLI::Option*>>> options(table.size());
  std::vector<CLI::App*> subs;
  for (std::size_t c = 0; c < table.size(); ++c) {
    CLI::App* sub = app.add_subcommand(table[c].name, table[c].description);
    subs.push_back(sub);
    auto keys = common_defaults();
    keys.insert(keys.end(), table[c].defaults.begin(), table[c].defaults.end());
    for (const auto& [key, def] : keys) {
      CLI::Option* opt;
      if (key == "plot") {
        opt = sub->add_flag_function(
            "--plot", [&fv = flag_values[c]](std::int64_t) { fv["plot"] = "1"; }, "Also write gnuplot scripts");
      } else {
        const std::string help = def.empty() ? std::string("(unset)") : "default " + def;
        opt = sub->add_option("--" + dashed(key), flag_values[c][key], help);
      }
      options[c].emplace_back(key, opt);
    }
  }

  std::vector<std::string> storage = args;
  std::vector<char*> argv;
  std::string program = "actinfo";
  argv.push_back(program.data());
  for (auto& a : storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  for (std::size_t c = 0; c < table.size(); ++c) {
    if (!subs[c]->parsed()) continue;
    std::map<std::string, std::string> given;
    for (const auto& [key, opt] : options[c])
      if (opt->count() > 0) given[key] = flag_values[c][key];
    try {
      return execute(table[c], given, out);
    } catch (const ConfigError& e) {
      err << "config error: " << e.what() << '\n';
      return kExitConfig;
    } catch (const Error& e) {
      err << (is_config_kind(e.kind()) ? "config error: " : "numeric failure: ") << to_string(e.kind()) << ": "
          << e.what() << '\n';
      return is_config_kind(e.kind()) ? kExitConfig : kExitNumeric;
    } catch (const std::exception& e) {
      err << "failure: " << e.what() << '\n';
      return kExitNumeric;
    }
  }
  return kExitConfig;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace actinfo::cli
