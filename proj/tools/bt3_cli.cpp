#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "experiments.hpp"

namespace fs = std::filesystem;
using bt3::io::json;

namespace {

int fail_config(const json& error, const std::string& out_dir) {
  std::cout << error.dump() << '\n';
  if (!out_dir.empty()) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (!ec) std::ofstream(fs::path(out_dir) / "error.json") << error.dump() << '\n';
  }
  return bt3::io::kConfigError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Experiments on the Bruhat-Tits building of SL3(Q_p)"};
  std::string config_path, out_dir = "out";
  std::uint64_t seed = 0;
  unsigned threads = 1;
  app.add_option("--config", config_path, "JSON configuration file");
  auto* seed_opt = app.add_option("--seed", seed, "64-bit seed");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 256u));
  app.require_subcommand(1);
  for (const auto& name : bt3::io::subcommands()) app.add_subcommand(name)->fallthrough();
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return fail_config({{"error", "usage"}, {"message", e.what()}}, "");
  }
  const std::string name = app.get_subcommands().front()->get_name();

  json config = json::object();
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) return fail_config({{"error", "config"}, {"field", "--config"}, {"message", "cannot read " + config_path}}, out_dir);
    std::stringstream text;
    text << in.rdbuf();
    try {
      config = bt3::io::parse_document(text.str());
    } catch (const bt3::io::ConfigError& e) {
      return fail_config({{"error", "config"}, {"field", config_path}, {"message", e.what()}}, out_dir);
    }
  }
  if (!seed_opt->count() && config.is_object() && config.contains("seed")) {
    if (!config["seed"].is_number_unsigned())
      return fail_config({{"error", "config"}, {"field", "seed"}, {"message", "expected an unsigned integer"}}, out_dir);
    seed = config["seed"].get<std::uint64_t>();
  }

  auto result = bt3::io::run_subcommand(name, config, seed, threads);
  if (result.status == bt3::io::kConfigError) return fail_config(result.error, out_dir);

  fs::create_directories(out_dir);
  {
    std::ofstream records(fs::path(out_dir) / (name + ".jsonl"));
    for (const auto& r : result.records) records << r.dump() << '\n';
    if (!result.error.is_null()) records << result.error.dump() << '\n';
  }
  for (const auto& [table, csv] : result.tables) std::ofstream(fs::path(out_dir) / (name + "_" + table + ".csv")) << csv;
  for (const auto& [table, csv] : result.tables) std::cout << "# " << name << "_" << table << ".csv\n" << csv;
  if (!result.error.is_null()) std::cout << result.error.dump() << '\n';
  return result.status;
}
