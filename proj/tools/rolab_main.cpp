// rolab: overhead model, sensitivity analysis and reactive-routing simulator.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rolab/harness.hpp"

namespace {

using rolab::harness::Options;

void add_common(CLI::App* cmd, Options& opts, std::string& formula_mode) {
  cmd->add_option("--seed", opts.seed, "Override the scenario seed");
  cmd->add_option("--protocol", opts.protocol, "aodv | dsr | dymo | custom:<profile.json>");
  cmd->add_option("--out", opts.out_dir, "Output directory (default $ROLAB_OUT_DIR or ./rolab-out)");
  cmd->add_flag("--trace", opts.trace, "Also write the newline-delimited event trace");
  cmd->add_option("--formula-mode", formula_mode, "Route-request tier weighting")
      ->check(CLI::IsMember({"literal", "tiered"}));
  cmd->add_flag("--allow-mobile", opts.allow_mobile, "compare: accept mobile scenarios");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rolab - reactive routing overhead laboratory"};
  app.require_subcommand(1);

  Options opts;
  std::string formula_mode;
  std::string params_file;
  std::string scenario;
  std::string sweep;
  std::string delta = "dn=0,dH=0,dT=0,dt=0";

  auto* model = app.add_subcommand("model", "Evaluate the overhead model for each row of a params file");
  model->add_option("params", params_file, "Model rows (JSON)")->required();
  add_common(model, opts, formula_mode);

  auto* sens = app.add_subcommand("sensitivity", "Partial derivatives and total differential per row");
  sens->add_option("params", params_file, "Model rows (JSON)")->required();
  sens->add_option("--delta", delta, "Parameter deltas, e.g. dn=1,dT=0.5");
  add_common(sens, opts, formula_mode);

  auto* simulate = app.add_subcommand("sim", "Run one scenario and write its report");
  simulate->add_option("scenario", scenario, "Scenario file or builtin:<name>")->required();
  add_common(simulate, opts, formula_mode);

  auto* sweep_cmd = app.add_subcommand("sweep", "Run a parameter sweep");
  sweep_cmd->add_option("sweep", sweep, "Sweep file or builtin:<name>")->required();
  sweep_cmd->add_option("--threads", opts.threads, "Concurrent runs")->check(CLI::PositiveNumber);
  add_common(sweep_cmd, opts, formula_mode);

  auto* compare = app.add_subcommand("compare", "Model prediction against simulated control counts");
  compare->add_option("scenario", scenario, "Scenario file or builtin:<name>")->required();
  compare->add_option("params", params_file, "Model rows (JSON)");
  compare->add_flag("--fit", opts.fit, "Derive n, H, C_i and N_j from the scenario topology");
  add_common(compare, opts, formula_mode);

  auto* dump = app.add_subcommand("scenario", "Print a scenario as JSON (after --seed/--protocol)");
  dump->add_option("scenario", scenario, "Scenario file or builtin:<name>")->required();
  add_common(dump, opts, formula_mode);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : rolab::harness::kExitValidation;
  }

  if (!formula_mode.empty()) opts.formula_mode = rolab::model::formula_mode_from_string(formula_mode);

  if (*model) return rolab::harness::cmd_model(params_file, opts, std::cout, std::cerr);
  if (*sens) return rolab::harness::cmd_sensitivity(params_file, delta, opts, std::cout, std::cerr);
  if (*simulate) return rolab::harness::cmd_sim(scenario, opts, std::cout, std::cerr);
  if (*sweep_cmd) return rolab::harness::cmd_sweep(sweep, opts, std::cout, std::cerr);
  if (*compare) return rolab::harness::cmd_compare(scenario, params_file, opts, std::cout, std::cerr);
  if (*dump) return rolab::harness::cmd_scenario_dump(scenario, opts, std::cout, std::cerr);
  return rolab::harness::kExitValidation;
}
