// Copyright 2026 The qdarwin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <CLI11.hpp>

#include <filesystem>
#include <mutex>
#include <ostream>

#include "qdarwin/parallel.h"
#include "qdarwin/plot.h"
#include "qdarwin/table.h"
#include "sweep_config.h"

namespace qdarwin::cli {

namespace {

void apply_overrides(SweepSpec& spec, const RunOptions& options) {
  if (options.threshold_mode) spec.redundancy.threshold_mode = *options.threshold_mode;
  if (options.quantifier) spec.redundancy.quantifier = *options.quantifier;
}

int run_spec(const SweepSpec& spec, const RunOptions& options, std::ostream& out, std::ostream& err) {
  try {
    std::mutex mu;
    SweepOptions sweep;
    sweep.workers = resolve_workers(options.workers);
    sweep.progress = [&](const std::string& line) {
      std::lock_guard<std::mutex> lock(mu);
      err << line << "\n" << std::flush;
    };
    const auto records = run_sweep(spec, sweep);
    std::filesystem::create_directories(options.out_dir);
    const auto base = std::filesystem::path(options.out_dir) / spec.figure;
    const std::string csv = base.string() + ".csv";
    const std::string svg = base.string() + ".svg";
    emit_table(records, csv);
    emit_plot(records, spec.layout, svg);
    out << "wrote " << csv << "\n" << "wrote " << svg << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace

std::string usage() {
  return "usage: qdarwin <command> [options]\n"
         "commands:\n"
         "  figure <tag>       reproduce a built-in figure (fig1, fig2, fig3, fig4, fig5)\n"
         "  sweep <config>     run the sweep described by a YAML config file\n"
         "  selftest           run the built-in consistency checks\n"
         "options:\n"
         "  --out <dir>                        output directory (default: out)\n"
         "  --workers <k>                      worker threads (default: all cores)\n"
         "  --threshold-mode <literal|strict>  redundancy threshold convention\n"
         "  --quantifier <holevo|two-sided>    information quantifier for redundancy\n";
}

int cmd_figure(const std::string& tag, const RunOptions& options, std::ostream& out, std::ostream& err) {
  auto spec = builtin_figure(tag);
  if (!spec) {
    err << "error: unknown figure tag '" << tag << "'\n" << usage();
    return kExitUsage;
  }
  apply_overrides(*spec, options);
  return run_spec(*spec, options, out, err);
}

int cmd_sweep(const std::string& config_path, const RunOptions& options, std::ostream& out,
              std::ostream& err) {
  SweepSpec spec;
  try {
    spec = load_sweep_config(config_path);
    apply_overrides(spec, options);
    spec.validate();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return kExitUsage;
  }
  return run_spec(spec, options, out, err);
}

int cmd_selftest(const SelftestOptions& options, std::ostream& out, std::ostream& err) {
  try {
    const auto report = run_selftest(options);
    print_report(report, out);
    return report.all_passed() ? kExitOk : kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum Darwinism simulations of a qubit coupled to a spin environment", "qdarwin"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  RunOptions options;
  std::string mode;
  std::string quantifier;
  app.add_option("--out", options.out_dir, "Output directory");
  app.add_option("--workers", options.workers, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  app.add_option("--threshold-mode", mode, "Redundancy threshold convention")
      ->check(CLI::IsMember({"literal", "strict"}));
  app.add_option("--quantifier", quantifier, "Information quantifier")->check(CLI::IsMember({"holevo", "two-sided"}));
  app.add_flag_callback("--version", [&] { throw CLI::Success(); }, "Print the version");

  std::string tag;
  auto* figure = app.add_subcommand("figure", "Reproduce a built-in figure");
  figure->add_option("tag", tag, "fig1 ... fig5")->required();

  std::string config;
  auto* sweep = app.add_subcommand("sweep", "Run a sweep from a YAML config");
  sweep->add_option("config", config, "Config file")->required();

  SelftestOptions selftest;
  auto* self = app.add_subcommand("selftest", "Run the built-in checks");
  self->add_option("--seed", selftest.seed, "Seed for random probe states");
  // Fault injection for exercising the failure path; not advertised.
  self->add_option("--entropy-log-base", selftest.entropy_log_base)->group("");

  bool version = false;
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help() << "\n" << usage();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::Success&) {
    // Help exceptions derive from Success, so this must come after them.
    version = true;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << usage();
    return kExitUsage;
  }
  if (version) {
    out << "qdarwin " << library_version() << "\n";
    return kExitOk;
  }
  if (!mode.empty()) options.threshold_mode = parse_threshold_mode(mode);
  if (!quantifier.empty()) options.quantifier = parse_quantifier(quantifier);
  selftest.workers = options.workers;

  if (*figure) return cmd_figure(tag, options, out, err);
  if (*sweep) return cmd_sweep(config, options, out, err);
  return cmd_selftest(selftest, out, err);
}

}  // namespace qdarwin::cli
