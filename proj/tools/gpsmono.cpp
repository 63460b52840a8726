// Batch verification runner: configures the algebra and domain, runs named
// suites, writes one CSV row per metric. Exit code 0 iff every row passed.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gps/suites.hpp"

int main(int argc, char** argv) {
  CLI::App app{"numerical verification suites for slice-function integral operators"};
  app.require_subcommand(0, 1);

  bool list_suites = false;
  app.add_flag("--list-suites", list_suites, "print suite names and exit");

  CLI::App* verify = app.add_subcommand("verify", "run verification suites");
  std::string suite;
  std::string config_path;
  std::string out_path;
  verify->add_option("--suite", suite, "suite to run (default: the config's list)");
  verify->add_option("--config", config_path, "experiment config file");
  verify->add_option("--out", out_path, "output CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  if (list_suites) {
    for (const auto& name : gps::suite_names()) std::printf("%s\n", name.c_str());
    return 0;
  }
  if (!verify->parsed()) {
    std::fprintf(stderr, "error: expected the 'verify' subcommand or --list-suites\n");
    return 2;
  }

  try {
    gps::ExperimentConfig cfg =
        config_path.empty() ? gps::default_config() : gps::load_config(config_path);
    std::vector<std::string> to_run;
    if (!suite.empty())
      to_run.push_back(suite);
    else
      to_run = cfg.suites;

    std::vector<gps::ResultRow> rows;
    for (const std::string& name : to_run) {
      auto part = gps::run_suite(name, cfg);
      rows.insert(rows.end(), part.begin(), part.end());
    }
    gps::emit_csv_file(rows, out_path);

    std::size_t failed = 0;
    for (const auto& r : rows)
      if (!r.pass) ++failed;
    std::printf("%zu rows, %zu failed -> %s\n", rows.size(), failed, out_path.c_str());
    return failed == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
