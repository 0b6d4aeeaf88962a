#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "spdecay/error.hpp"
#include "spdecay_tools/commands.hpp"

using namespace spdecay;
using namespace spdecay::tools;

int main(int argc, char** argv) {
  CLI::App app{"spdecay: decay of a discrete level coupled to a continuum"};
  app.require_subcommand(1);

  RunOptions options;
  std::string out;
  double tol = 0.0;
  double horizon = 0.0;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", out, "output directory");
    cmd->add_option("--tol", tol, "absolute quadrature tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--horizon", horizon, "evolution horizon T")->check(CLI::PositiveNumber);
    cmd->add_option("--jobs", options.jobs, "worker threads")->check(CLI::Range(1u, 256u));
  };

  std::string config;
  auto* spectrum = app.add_subcommand("spectrum", "eigenvalue, weight and spectral density");
  auto* decay = app.add_subcommand("decay", "survival amplitude by both methods");
  auto* sweep = app.add_subcommand("sweep", "bound-state threshold sweep");
  for (auto* cmd : {spectrum, decay, sweep}) {
    cmd->add_option("config", config, "scenario file")->required();
    add_common(cmd);
  }
  auto* verify = app.add_subcommand("verify", "run the built-in acceptance matrix");
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? kExitOk : kExitConfig;
  }

  auto given = [](CLI::App* cmd, const char* name) { return cmd->count(name) > 0; };
  CLI::App* active = app.get_subcommands().front();
  if (given(active, "--out")) options.out = out;
  if (given(active, "--tol")) options.abs_tol = tol;
  if (given(active, "--horizon")) options.horizon = horizon;

  if (active == verify) {
    return cmd_verify(options.out.value_or("verify_out"), options.jobs, std::cout, std::cerr);
  }

  Scenario scenario;
  try {
    scenario = apply_overrides(load_scenario(config), options);
  } catch (const Error& e) {
    report_error(std::cerr, e);
    return exit_code_for(e.code());
  }
  if (active == spectrum) return cmd_spectrum(scenario, std::cerr);
  if (active == decay) return cmd_decay(scenario, std::cerr);
  return cmd_threshold_sweep(scenario, options.jobs, std::cerr);
}
