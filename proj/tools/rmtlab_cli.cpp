// Copyright 2026 The rmtlab Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Talks to the library only through rmtlab.h.
#include <cstdio>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rmtlab/rmtlab.h"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitError = 2;

struct ConfigDeleter {
  void operator()(rmt_config* c) const { rmt_config_destroy(c); }
};
struct ReportDeleter {
  void operator()(rmt_report* r) const { rmt_report_destroy(r); }
};

int report_error(rmt_status status, const std::string& context) {
  std::fprintf(stderr, "rmtlab: %s: %s: %s\n", context.c_str(), rmt_status_string(status),
               rmt_last_error());
  return kExitError;
}

void print_criterion(const rmt_criterion& c) {
  if (std::string(c.op) == "in") {
    std::printf("%s %s = %.6g in [%.6g, %.6g]\n", c.passed ? "PASS" : "FAIL", c.name, c.value,
                c.threshold, c.threshold_hi);
  } else {
    std::printf("%s %s = %.6g %s %.6g\n", c.passed ? "PASS" : "FAIL", c.name, c.value, c.op,
                c.threshold);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rmtlab: random-matrix spectral experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(rmt_version()));

  std::vector<std::string> keys;
  for (std::size_t i = 0; i < rmt_config_key_count(); ++i) keys.emplace_back(rmt_config_key_name(i));

  struct Command {
    CLI::App* app = nullptr;
    std::string config_file;
    std::map<std::string, std::string> values;
    bool quiet = false;
  };
  std::map<std::string, Command> commands;
  for (std::size_t e = 0; e < rmt_experiment_count(); ++e) {
    const std::string name = rmt_experiment_name(e);
    auto& cmd = commands[name];
    cmd.app = app.add_subcommand(name, "run the " + name + " experiment");
    cmd.app->add_option("--config", cmd.config_file, "key = value file; flags override it");
    cmd.app->add_flag("-q,--quiet", cmd.quiet, "print only the verdict lines");
    for (const auto& key : keys) {
      cmd.app->add_option("--" + key, cmd.values[key]);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  for (auto& [name, cmd] : commands) {
    if (!cmd.app->parsed()) continue;
    rmt_config* raw = nullptr;
    rmt_status status = rmt_config_create(name.c_str(), &raw);
    if (status != RMT_OK) return report_error(status, "config");
    std::unique_ptr<rmt_config, ConfigDeleter> config(raw);
    if (!cmd.config_file.empty()) {
      status = rmt_config_load_file(config.get(), cmd.config_file.c_str());
      if (status != RMT_OK) return report_error(status, cmd.config_file);
    }
    for (const auto& key : keys) {
      if (cmd.app->count("--" + key) == 0) continue;
      status = rmt_config_set(config.get(), key.c_str(), cmd.values[key].c_str());
      if (status != RMT_OK) return report_error(status, "--" + key);
    }

    rmt_report* report_raw = nullptr;
    status = rmt_run(config.get(), &report_raw);
    if (status != RMT_OK) return report_error(status, name);
    std::unique_ptr<rmt_report, ReportDeleter> report(report_raw);

    if (!cmd.quiet) {
      for (std::size_t i = 0; i < rmt_report_note_count(report.get()); ++i) {
        std::printf("note: %s\n", rmt_report_note(report.get(), i));
      }
    }
    for (std::size_t i = 0; i < rmt_report_criterion_count(report.get()); ++i) {
      rmt_criterion c{};
      if (rmt_report_criterion(report.get(), i, &c) == RMT_OK) print_criterion(c);
    }
    const bool passed = rmt_report_passed(report.get()) != 0;
    std::printf("%s %s (%.2f s)\n", passed ? "PASSED" : "FAILED", name.c_str(),
                rmt_report_elapsed(report.get()));
    return passed ? 0 : kExitFail;
  }
  return kExitError;
}
