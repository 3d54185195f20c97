// Copyright 2026 The pairest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pairest/cli.hpp"

#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pairest/errors.hpp"
#include "pairest/sweep.hpp"

namespace pairest {
namespace {

// Values given on the command line; each overrides the config file.
struct Overrides {
  std::string config_path;
  std::optional<std::string> quantity;
  std::optional<double> phi0;
  std::optional<int> phi0_k;
  std::vector<double> phi1;
  std::optional<double> eps_min;
  std::optional<double> eps_max;
  std::optional<int> eps_steps;
  std::optional<double> sigma;
  std::optional<std::uint64_t> mc_shots;
  std::optional<std::size_t> mc_repeats;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<unsigned> workers;
  bool strict = false;
  bool quiet = false;
};

void add_common_options(CLI::App& cmd, Overrides& o) {
  cmd.add_option("--config", o.config_path, "JSON config file")
      ->check(CLI::ExistingFile);
  cmd.add_option("--quantity", o.quantity,
                 "qfi00|qfi11|fi00|fi11|upsilon|weak_comm|stokes_xx|montecarlo");
  cmd.add_option("--phi0", o.phi0, "mean phase [rad] (default pi/4)");
  cmd.add_option("--phi0-k", o.phi0_k, "set phi0 = k pi/4");
  cmd.add_option("--phi1", o.phi1, "dephasing slopes, comma separated")
      ->delimiter(',');
  cmd.add_option("--eps-min", o.eps_min, "epsilon grid start (default -1)");
  cmd.add_option("--eps-max", o.eps_max, "epsilon grid end (default 1)");
  cmd.add_option("--eps-steps", o.eps_steps, "epsilon grid points (default 81)");
  cmd.add_option("--sigma", o.sigma, "single-photon bandwidth (default 1)");
  cmd.add_option("--mc-shots", o.mc_shots, "photon pairs per experiment M");
  cmd.add_option("--mc-repeats", o.mc_repeats, "simulated experiments");
  cmd.add_option("--seed", o.seed, "64-bit base seed");
  cmd.add_option("--out", o.out, "CSV output path (default stdout)");
  cmd.add_option("--workers", o.workers, "worker threads (0 = all cores)");
  cmd.add_flag("--strict", o.strict, "exit 3 if any point is singular");
  cmd.add_flag("--quiet", o.quiet, "no progress on stderr");
}

SweepConfig resolve(const Overrides& o, bool montecarlo) {
  SweepConfig config =
      o.config_path.empty() ? SweepConfig{} : load_config_file(o.config_path);
  if (o.quantity) config.quantity = parse_quantity(*o.quantity);
  if (o.phi0) config.phi0 = *o.phi0;
  if (o.phi0_k) config.phi0 = *o.phi0_k * std::numbers::pi / 4.0;
  if (!o.phi1.empty()) config.phi1_list = o.phi1;
  if (o.eps_min) config.epsilon_grid.min = *o.eps_min;
  if (o.eps_max) config.epsilon_grid.max = *o.eps_max;
  if (o.eps_steps) config.epsilon_grid.steps = *o.eps_steps;
  if (o.sigma) config.sigma = *o.sigma;
  if (o.out) config.output_path = *o.out;
  if (o.workers) config.workers = *o.workers;
  if (montecarlo) config.quantity = Quantity::kMonteCarlo;
  if (o.mc_shots || o.mc_repeats || o.seed ||
      config.quantity == Quantity::kMonteCarlo) {
    MonteCarloSettings mc = config.mc.value_or(MonteCarloSettings{});
    if (o.mc_shots) mc.shots = *o.mc_shots;
    if (o.mc_repeats) mc.repeats = *o.mc_repeats;
    if (o.seed) mc.seed = *o.seed;
    config.mc = mc;
  }
  config.validate();
  return config;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Phase/dephasing estimation numerics for frequency-correlated "
               "photon pairs"};
  app.name("pairest");
  app.require_subcommand(1);
  Overrides sweep_opts;
  Overrides mc_opts;
  CLI::App* sweep = app.add_subcommand("sweep", "Fisher-information sweep over epsilon");
  CLI::App* mc = app.add_subcommand("montecarlo", "Monte-Carlo CRB check");
  add_common_options(*sweep, sweep_opts);
  add_common_options(*mc, mc_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitConfigError;
  }

  const bool is_mc = mc->parsed();
  const Overrides& opts = is_mc ? mc_opts : sweep_opts;
  try {
    const SweepConfig config = resolve(opts, is_mc);
    std::string csv;
    const bool to_stdout = config.output_path.empty();
    const RunSummary summary =
        config.quantity == Quantity::kMonteCarlo
            ? run_montecarlo(config, to_stdout ? &csv : nullptr)
            : run_sweep(config, to_stdout ? &csv : nullptr);
    if (to_stdout) out << csv;
    if (!opts.quiet) {
      err << "pairest: " << summary.rows << " rows ("
          << summary.singular << " singular)";
      if (!to_stdout) err << " -> " << config.output_path.string();
      err << '\n';
    }
    if (opts.strict && summary.singular > 0) {
      err << "pairest: singular points present (--strict)\n";
      return kExitSingular;
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "pairest: config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    err << "pairest: config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const SingularPointError& e) {
    err << "pairest: singular point: " << e.what() << '\n';
    return opts.strict ? kExitSingular : kExitFailure;
  } catch (const std::exception& e) {
    err << "pairest: error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace pairest
