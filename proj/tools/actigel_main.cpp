#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "actigel/config.hpp"
#include "actigel/errors.hpp"
#include "actigel/scenario.hpp"

namespace {

std::string resolve_out_dir(const std::string& flag_dir,
                            const actigel::config::ScenarioConfig& cfg) {
  if (!flag_dir.empty()) return flag_dir;
  if (!cfg.output.dir.empty()) return cfg.output.dir;
  if (const char* env = std::getenv("ACTIGEL_OUTPUT_ROOT")) return env;
  return "actigel_out";
}

int run_command(const std::string& cfg_path, const std::string& out_dir,
                int threads) {
  actigel::config::ScenarioConfig cfg;
  try {
    cfg = actigel::config::load(cfg_path);
  } catch (const actigel::SolverError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  if (threads > 0) cfg.solver.threads = threads;
  try {
    const auto result = actigel::scenario::run(cfg, resolve_out_dir(out_dir, cfg));
    for (const auto& o : result.outputs) std::cout << o << "\n";
    return 0;
  } catch (const actigel::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}

int validate_command(const std::string& cfg_path) {
  const auto issues = actigel::config::validate_file(cfg_path);
  if (issues.empty()) {
    std::cout << "ok: " << cfg_path << "\n";
    return 0;
  }
  for (const auto& i : issues) {
    const char* tag =
        i.severity == actigel::config::ValidationIssue::Severity::error
            ? "error"
            : "warning";
    std::cout << tag << " [" << i.field << "] " << i.message << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"actigel: thin-film solvers for active nematic films"};
  app.require_subcommand(1);

  std::string cfg_path, out_dir;
  int threads = 0;

  auto* run = app.add_subcommand("run", "execute a scenario config");
  run->add_option("config", cfg_path, "scenario config (JSON)")->required();
  run->add_option("-o,--output", out_dir, "output directory");
  run->add_option("--threads", threads, "parallel column solves");

  auto* validate = app.add_subcommand("validate", "schema and range report");
  validate->add_option("config", cfg_path, "scenario config (JSON)")->required();

  CLI11_PARSE(app, argc, argv);

  if (app.got_subcommand(run)) return run_command(cfg_path, out_dir, threads);
  return validate_command(cfg_path);
}
