// Experiment front end: simulate / sweep / limit / validate-net.
//
// Exit codes: 0 all verdicts pass, 1 verdict failure, 2 config error,
// 3 engine error.

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "iwave/asymptotics.hpp"
#include "iwave/config.hpp"
#include "iwave/errors.hpp"
#include "iwave/report.hpp"

namespace fs = std::filesystem;
using namespace iwave;

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_override;
  std::string format = "csv";
  std::string eps_override;
  std::string eps_grid_override;
  int jobs = 1;
  std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "scenario config (JSON)")
      ->required();
  cmd->add_option("--out", args.out_override, "output directory");
  cmd->add_option("--format", args.format, "trajectory format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--eps", args.eps_override, "single eps value");
  cmd->add_option("--eps-grid", args.eps_grid_override,
                  "geometric grid start:stop:count");
  cmd->add_option("--jobs", args.jobs, "worker pool size for per-eps runs");
  cmd->add_option("--set", args.sets,
                  "config override as dotted.path=value (repeatable)");
}

ScenarioConfig resolve(const CommonArgs& args) {
  std::vector<std::string> overrides = args.sets;
  if (!args.eps_override.empty())
    overrides.push_back("eps=" + args.eps_override);
  if (!args.eps_grid_override.empty())
    overrides.push_back("eps_grid=\"" + args.eps_grid_override + "\"");
  if (!args.out_override.empty())
    overrides.push_back("out=\"" + args.out_override + "\"");
  ScenarioConfig cfg = load_config_file(args.config_path, overrides);
  if (cfg.eps_grid.empty())
    throw ConfigError("config: eps or eps_grid required");
  return cfg;
}

struct OutDirs {
  fs::path trajectories, reports, plotdata;
};

OutDirs make_dirs(const ScenarioConfig& cfg) {
  fs::path base = fs::path(cfg.out_dir) / cfg.scenario;
  OutDirs d{base / "trajectories", base / "reports", base / "plotdata"};
  fs::create_directories(d.trajectories);
  fs::create_directories(d.reports);
  fs::create_directories(d.plotdata);
  return d;
}

int run_simulate(const CommonArgs& args) {
  ScenarioConfig cfg = resolve(args);
  OutDirs dirs = make_dirs(cfg);
  DeltaNet net = cfg.net();
  bool any_failed = false;
  Json index;
  index["scenario"] = cfg.scenario;
  index["files"] = Json::array();
  const int n_samples = 501;
  for (double eps : cfg.eps_grid) {
    std::string stem = eps_stem(eps);
    try {
      Trajectory traj = integrate_span(*cfg.manifold, cfg.profile, net, eps,
                                       cfg.data, std::min(-cfg.T, cfg.data.u0),
                                       cfg.T, cfg.integrator);
      if (args.format == "json") {
        write_json(trajectory_json(traj, n_samples, cfg),
                   dirs.trajectories / (stem + ".json"));
        index["files"].push_back(stem + ".json");
      } else {
        write_trajectory_csv(traj, n_samples, dirs.trajectories / (stem + ".csv"));
        index["files"].push_back(stem + ".csv");
      }
    } catch (const Error& e) {
      std::cerr << "integration failed at eps=" << eps << ": " << e.what()
                << "\n";
      any_failed = true;
    }
  }
  index["config"] = cfg.resolved;
  write_json(index, dirs.trajectories / "index.json");
  return any_failed ? 3 : 0;
}

int run_sweep(const CommonArgs& args) {
  ScenarioConfig cfg = resolve(args);
  OutDirs dirs = make_dirs(cfg);
  DeltaNet net = cfg.net();

  SweepReport rep = sweep(*cfg.manifold, cfg.profile, net, cfg.data, cfg.T,
                          cfg.eps_grid, cfg.integrator, cfg.v_sample_points,
                          args.jobs);
  Json j = sweep_report_json(rep, cfg);

  // Distributional pairing against the limit, when test functions are given.
  bool pairing_ok = true;
  if (!cfg.test_functions.empty()) {
    double u_lo = std::min(-cfg.T, cfg.data.u0);
    BrokenGeodesic bg = limit_geodesic(*cfg.manifold, cfg.profile, cfg.data,
                                       u_lo, cfg.T, cfg.integrator.rel_tol);
    std::vector<Trajectory> trajs;
    for (double eps : cfg.eps_grid)
      trajs.push_back(integrate_span(*cfg.manifold, cfg.profile, net, eps,
                                     cfg.data, u_lo, cfg.T, cfg.integrator));
    PairingReport pairing = association_pairing(trajs, bg, cfg.phis());
    j["pairing"] = pairing_report_json(pairing);
    for (bool c : pairing.converges) pairing_ok = pairing_ok && c;
  }

  write_json(j, dirs.reports / "sweep.json");
  std::vector<double> eps, xerr, jerr;
  for (const auto& e : rep.entries) {
    if (!e.error.empty()) continue;
    eps.push_back(e.eps);
    xerr.push_back(e.sup_x_err);
    jerr.push_back(e.jump_err);
  }
  write_plotdata(eps, xerr, dirs.plotdata / "sup_x_err.dat");
  write_plotdata(eps, jerr, dirs.plotdata / "jump_err.dat");

  bool pass = rep.all_integrated && rep.monotone_x && pairing_ok;
  std::cout << (pass ? "sweep: all verdicts pass\n"
                     : "sweep: verdict failure\n");
  return pass ? 0 : 1;
}

int run_limit(const CommonArgs& args) {
  ScenarioConfig cfg = resolve(args);
  OutDirs dirs = make_dirs(cfg);
  BrokenGeodesic bg =
      limit_geodesic(*cfg.manifold, cfg.profile, cfg.data,
                     std::min(-cfg.T, cfg.data.u0), cfg.T,
                     cfg.integrator.rel_tol);
  write_json(broken_geodesic_json(bg, cfg), dirs.reports / "limit.json");
  return 0;
}

int run_validate(const CommonArgs& args) {
  ScenarioConfig cfg = resolve(args);
  OutDirs dirs = make_dirs(cfg);
  DeltaFamily family = make_family(cfg.net_name);
  ValidationReport rep = validate_strict(family, cfg.eps_grid);
  Json j = validation_report_json(rep);
  j["config"] = cfg.resolved;
  write_json(j, dirs.reports / "validate.json");
  std::cout << "net '" << rep.label << "': "
            << (rep.all_pass() ? "strict delta net axioms pass"
                               : "axiom failure")
            << "\n";
  return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geodesics in impulsive wave space-times: simulate, sweep, "
               "limit, validate-net"};
  app.require_subcommand(1);

  CommonArgs args;
  CLI::App* sim = app.add_subcommand("simulate", "integrate trajectories");
  CLI::App* swp = app.add_subcommand("sweep", "eps sweep with error metrics");
  CLI::App* lim = app.add_subcommand("limit", "closed-form limit geodesic");
  CLI::App* val = app.add_subcommand("validate-net", "strict delta net axioms");
  for (CLI::App* c : {sim, swp, lim, val}) add_common(c, args);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return run_simulate(args);
    if (swp->parsed()) return run_sweep(args);
    if (lim->parsed()) return run_limit(args);
    if (val->parsed()) return run_validate(args);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
