// Command-line front end: run experiments and seed sweeps, validate and
// export scenario files, solve for f*, and run the acceptance suites.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mwl/acceptance.hpp"
#include "mwl/experiment.hpp"
#include "mwl/oracle.hpp"
#include "mwl/parallel.hpp"
#include "mwl/scenario_io.hpp"

namespace {

std::string default_out_dir() {
  const char* env = std::getenv("MWL_OUT_DIR");
  return env != nullptr && *env != '\0' ? env : "out";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"max-weight learning simulator"};
  app.require_subcommand(1);

  // ---- run
  auto* run_cmd = app.add_subcommand("run", "run a controller experiment over a seed list");
  std::string scenario, mode = "constant", approach = "approach2", seeds_text = "1";
  std::string out_dir = default_out_dir(), label;
  double V = 50.0, V0 = 5.0, beta1 = 0.3, beta2 = 0.6, theta = 0.0, sigma = -1.0;
  long long slots = 100000, t0 = 0;
  int W = 1, jobs = 1;
  bool no_parallel = false;
  run_cmd->add_option("--scenario", scenario, "built-in name or scenario file")->required();
  run_cmd->add_option("--approach", approach, "approach1|approach2|oracle|uniform-random");
  run_cmd->add_option("--mode", mode, "constant|variable");
  run_cmd->add_option("--V", V, "V (constant mode)");
  run_cmd->add_option("--W", W, "window size (constant mode)");
  run_cmd->add_option("--V0", V0, "V0 (variable mode)");
  run_cmd->add_option("--beta1", beta1, "window exponent (variable mode)");
  run_cmd->add_option("--beta2", beta2, "V exponent (variable mode)");
  run_cmd->add_option("--t0", t0, "variable-V start slot");
  run_cmd->add_option("--theta", theta, "exploration probability");
  run_cmd->add_option("--sigma", sigma, "auxiliary box slack (scenario default if omitted)");
  run_cmd->add_option("--slots", slots, "horizon in slots")->required();
  run_cmd->add_option("--seeds", seeds_text, "e.g. 1..20 or 3,5,8");
  run_cmd->add_option("--out", out_dir, "output directory (env MWL_OUT_DIR)");
  run_cmd->add_option("--jobs", jobs, "parallel replications");
  run_cmd->add_option("--label", label, "output file stem");
  run_cmd->add_flag("--no-parallel", no_parallel, "disable the OpenMP kernels");

  // ---- validate
  auto* val_cmd = app.add_subcommand("validate", "validate a scenario file");
  std::string val_path;
  val_cmd->add_option("--scenario", val_path, "scenario file")->required();

  // ---- export
  auto* exp_cmd = app.add_subcommand("export", "write a built-in scenario to a file");
  std::string exp_name, exp_out;
  exp_cmd->add_option("--scenario", exp_name, "built-in name")->required();
  exp_cmd->add_option("--out", exp_out, "output file")->required();

  // ---- fstar
  auto* fstar_cmd = app.add_subcommand("fstar", "solve the stationary-policy optimum");
  std::string fstar_scenario, fstar_out;
  double fstar_theta = 0.0;
  fstar_cmd->add_option("--scenario", fstar_scenario, "built-in name or file")->required();
  fstar_cmd->add_option("--theta", fstar_theta, "exploration floor");
  fstar_cmd->add_option("--out", fstar_out, "result file (stdout if omitted)");

  // ---- accept
  auto* acc_cmd = app.add_subcommand("accept", "run acceptance suites");
  std::string suite = "all";
  acc_cmd->add_option("suite", suite, "suite name or 'all'");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      if (no_parallel) mwl::par::set_enabled(false);
      mwl::ExperimentConfig cfg;
      cfg.scenario = scenario;
      cfg.approach = mwl::approach_from_string(approach);
      if (mode == "constant") {
        cfg.schedule.mode = mwl::Schedule::Mode::constant;
        cfg.schedule.V0 = V;
        cfg.schedule.fixed_W = W;
      } else if (mode == "variable") {
        cfg.schedule.mode = mwl::Schedule::Mode::variable;
        cfg.schedule.V0 = V0;
        cfg.schedule.beta1 = beta1;
        cfg.schedule.beta2 = beta2;
        cfg.schedule.t0 = t0;
      } else {
        std::cerr << "error: --mode must be constant or variable\n";
        return 2;
      }
      cfg.theta = theta;
      if (sigma > 0.0) cfg.sigma = sigma;
      cfg.horizon = slots;
      cfg.seeds = mwl::parse_seed_list(seeds_text);
      cfg.out_dir = out_dir;
      cfg.jobs = jobs;
      cfg.label = label;
      const mwl::ExperimentOutput out = mwl::run_experiment(cfg);
      std::cout << "wrote " << out.csv_paths.size() << " csv files and " << out.summary_path
                << "\n";
      return 0;
    }
    if (val_cmd->parsed()) {
      mwl::load_scenario_file(val_path);
      std::cout << val_path << ": ok\n";
      return 0;
    }
    if (exp_cmd->parsed()) {
      mwl::save_scenario_file(mwl::build_scenario(exp_name), exp_out);
      std::cout << "wrote " << exp_out << "\n";
      return 0;
    }
    if (fstar_cmd->parsed()) {
      const mwl::Scenario sc = mwl::resolve_scenario(fstar_scenario);
      const mwl::FstarResult res = mwl::solve_fstar(sc.model, sc.objective, fstar_theta);
      if (!fstar_out.empty()) {
        mwl::save_fstar_file(res, fstar_theta, fstar_out);
        std::cout << "wrote " << fstar_out << "\n";
      } else {
        std::cout << mwl::fstar_to_json(res, fstar_theta);
      }
      return res.feasible ? 0 : 1;
    }
    if (acc_cmd->parsed()) {
      return mwl::accept::run_and_print(suite, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
