#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "semitherm/errors.hpp"
#include "semitherm/fixtures.hpp"
#include "semitherm/parallel.hpp"
#include "semitherm/runner.hpp"

using nlohmann::json;

namespace {

void diagnostic(const char* kind, const std::string& msg) {
  std::cerr << json{{"error", kind}, {"message", msg}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semitherm: transfer-operator experiments for semigroups of expanding maps"};
  app.require_subcommand(1);
  std::string config_path, out_dir = ".";
  std::uint64_t seed = 0;
  std::size_t grid_n = 0;
  unsigned threads = 1;

  std::vector<CLI::App*> subs;
  for (const auto& name : semitherm::experiment_names()) {
    auto* s = app.add_subcommand(name, "run the " + name + " experiment");
    s->add_option("--config", config_path, "JSON config document")->required()->check(CLI::ExistingFile);
    s->add_option("--seed", seed, "root seed (overrides config)");
    s->add_option("--out-dir", out_dir, "output directory");
    s->add_option("--threads", threads, "worker threads, 0 = all cores");
    s->add_option("--grid-n", grid_n, "grid size (overrides config)");
    subs.push_back(s);
  }
  auto* list = app.add_subcommand("list-fixtures", "print the built-in fixtures");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (list->parsed()) {
    for (const auto& e : semitherm::fixtures::catalog())
      std::cout << e.name << ": " << e.reference << "  [" << e.kind << "; source: " << e.source << "]\n";
    return 0;
  }

  for (auto* s : subs) {
    if (!s->parsed()) continue;
    try {
      semitherm::set_thread_count(threads);
      json cfg;
      {
        std::ifstream in(config_path);
        try {
          cfg = json::parse(in);
        } catch (const json::exception& e) {
          throw semitherm::ConfigError(std::string("config is not valid JSON: ") + e.what());
        }
      }
      semitherm::RunOptions opt;
      opt.out_dir = out_dir;
      if (s->count("--seed")) opt.seed = seed;
      if (s->count("--grid-n")) opt.grid_n = grid_n;
      const auto r = semitherm::run_experiment(s->get_name(), cfg, opt);
      std::cout << r.summary.dump(2) << "\n";
      return 0;
    } catch (const semitherm::ConfigError& e) {
      diagnostic("config", e.what());
      return 2;
    } catch (const nlohmann::json::exception& e) {
      diagnostic("config", e.what());
      return 2;
    } catch (const semitherm::NumericalGuard& e) {
      diagnostic("numerical-guard", e.what());
      return 3;
    }
  }
  return 2;
}
