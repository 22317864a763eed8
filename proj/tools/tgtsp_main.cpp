// Command-line front end. Talks to the solver exclusively through the
// shared-library C API in tgtsp.h.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tgtsp.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailedCheck = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitNoFeasible = 3;

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

// write-temp-then-rename so partial artifacts never appear under the final name
bool write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out << content;
    if (!out) return false;
  }
  return std::rename(tmp.c_str(), path.c_str()) == 0;
}

struct Owned {
  char* ptr = nullptr;
  ~Owned() { tg_string_free(ptr); }
  std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

int fail(const char* what, char* errmsg) {
  std::cerr << "error: " << what;
  if (errmsg) {
    std::cerr << ": " << errmsg;
    tg_string_free(errmsg);
  }
  std::cerr << "\n";
  return kExitBadInput;
}

tg_scenario* load_scenario(const std::string& path, int* exit_code) {
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << "error: cannot read scenario file '" << path << "'\n";
    *exit_code = kExitBadInput;
    return nullptr;
  }
  tg_scenario* scenario = nullptr;
  char* errmsg = nullptr;
  if (tg_scenario_parse(text.c_str(), &scenario, &errmsg) != TG_OK) {
    *exit_code = fail("invalid scenario", errmsg);
    return nullptr;
  }
  return scenario;
}

tg_trajectory* load_trajectory(const std::string& path, int* exit_code) {
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << "error: cannot read trajectory file '" << path << "'\n";
    *exit_code = kExitBadInput;
    return nullptr;
  }
  tg_trajectory* traj = nullptr;
  char* errmsg = nullptr;
  if (tg_trajectory_parse(text.c_str(), &traj, &errmsg) != TG_OK) {
    *exit_code = fail("invalid trajectory", errmsg);
    return nullptr;
  }
  return traj;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tgtsp — continuous-trajectory TSP solver"};
  app.require_subcommand(1);

  // ---- solve ---------------------------------------------------------------
  std::string solve_scenario, solve_outdir = ".", solve_problem;
  std::string solve_eps_schedule;
  tg_solve_options opts;
  tg_solve_options_defaults(&opts);
  int nodes = opts.nodes, multistart = opts.multistart;
  unsigned long long seed = opts.rng_seed;
  double margin = opts.zone_margin;

  CLI::App* solve = app.add_subcommand("solve", "solve a scenario end to end");
  solve->add_option("scenario", solve_scenario, "scenario JSON file")->required();
  solve->add_option("-o,--outdir", solve_outdir, "output directory");
  solve->add_option("--problem", solve_problem,
                    "override the scenario's problem kind");
  solve->add_option("--nodes", nodes, "collocation nodes");
  solve->add_option("--multistart", multistart, "number of multistart seeds");
  solve->add_option("--seed", seed, "random seed for the heuristics");
  solve->add_option("--eps-schedule", solve_eps_schedule,
                    "comma-separated smoothing lengths (absolute)");
  solve->add_option("--margin", margin, "forbidden-zone inflation factor");

  // ---- verify ----------------------------------------------------------------
  std::string verify_scenario, verify_trajectory;
  CLI::App* verify =
      app.add_subcommand("verify", "re-verify a trajectory exactly");
  verify->add_option("scenario", verify_scenario, "scenario JSON file")
      ->required();
  verify->add_option("trajectory", verify_trajectory, "trajectory JSON file")
      ->required();

  // ---- export ----------------------------------------------------------------
  std::string export_scenario, export_trajectory, export_format = "csv";
  std::string export_out;
  CLI::App* exportc = app.add_subcommand("export", "export trajectory data");
  exportc->add_option("scenario", export_scenario, "scenario JSON file")
      ->required();
  exportc->add_option("trajectory", export_trajectory, "trajectory JSON file")
      ->required();
  exportc->add_option("--format", export_format, "csv or svg");
  exportc->add_option("-o,--out", export_out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (solve->parsed()) {
    int code = kExitOk;
    tg_scenario* scenario = load_scenario(solve_scenario, &code);
    if (!scenario) return code;

    std::vector<double> schedule;
    if (!solve_eps_schedule.empty()) {
      std::stringstream ss(solve_eps_schedule);
      std::string item;
      while (std::getline(ss, item, ',')) {
        try {
          schedule.push_back(std::stod(item));
        } catch (...) {
          std::cerr << "error: bad --eps-schedule entry '" << item << "'\n";
          tg_scenario_free(scenario);
          return kExitBadInput;
        }
      }
      opts.eps_schedule = schedule.data();
      opts.eps_schedule_len = static_cast<int>(schedule.size());
    }
    opts.nodes = nodes;
    opts.multistart = multistart;
    opts.rng_seed = seed;
    opts.zone_margin = margin;
    opts.problem_override = solve_problem.empty() ? nullptr : solve_problem.c_str();
    opts.scenario_path = solve_scenario.c_str();

    tg_run* run = nullptr;
    char* errmsg = nullptr;
    if (tg_solve(scenario, &opts, &run, &errmsg) != TG_OK) {
      tg_scenario_free(scenario);
      return fail("solve failed", errmsg);
    }

    tg_trajectory* traj = nullptr;
    Owned traj_json, report_json, manifest;
    bool io_ok = tg_run_trajectory(run, &traj) == TG_OK &&
                 tg_trajectory_serialize(traj, &traj_json.ptr) == TG_OK &&
                 tg_run_report_json(run, &report_json.ptr) == TG_OK &&
                 tg_run_manifest_json(run, &manifest.ptr) == TG_OK;
    if (io_ok) {
      io_ok = write_file_atomic(solve_outdir + "/trajectory.json", traj_json.str()) &&
              write_file_atomic(solve_outdir + "/report.json", report_json.str()) &&
              write_file_atomic(solve_outdir + "/manifest.json", manifest.str());
    }
    const bool feasible = tg_run_feasible(run) != 0;
    tg_trajectory_free(traj);
    tg_run_free(run);
    tg_scenario_free(scenario);
    if (!io_ok) {
      std::cerr << "error: cannot write artifacts to '" << solve_outdir << "'\n";
      return kExitBadInput;
    }
    if (!feasible) {
      std::cerr << "no feasible run; artifacts written to '" << solve_outdir
                << "'\n";
      return kExitNoFeasible;
    }
    return kExitOk;
  }

  if (verify->parsed()) {
    int code = kExitOk;
    tg_scenario* scenario = load_scenario(verify_scenario, &code);
    if (!scenario) return code;
    tg_trajectory* traj = load_trajectory(verify_trajectory, &code);
    if (!traj) {
      tg_scenario_free(scenario);
      return code;
    }
    Owned report;
    int passes = 0;
    char* errmsg = nullptr;
    const tg_status st =
        tg_verify(scenario, traj, &report.ptr, &passes, &errmsg);
    tg_trajectory_free(traj);
    tg_scenario_free(scenario);
    if (st != TG_OK) return fail("verify failed", errmsg);
    std::cout << report.str();
    return passes ? kExitOk : kExitFailedCheck;
  }

  if (exportc->parsed()) {
    if (export_format != "csv" && export_format != "svg") {
      std::cerr << "error: unknown export format '" << export_format << "'\n";
      return kExitBadInput;
    }
    int code = kExitOk;
    tg_scenario* scenario = load_scenario(export_scenario, &code);
    if (!scenario) return code;
    tg_trajectory* traj = load_trajectory(export_trajectory, &code);
    if (!traj) {
      tg_scenario_free(scenario);
      return code;
    }
    Owned data;
    char* errmsg = nullptr;
    const tg_status st =
        export_format == "csv"
            ? tg_export_csv(scenario, traj, &data.ptr, &errmsg)
            : tg_export_svg(scenario, traj, &data.ptr, &errmsg);
    tg_trajectory_free(traj);
    tg_scenario_free(scenario);
    if (st != TG_OK) return fail("export failed", errmsg);
    if (export_out.empty()) {
      std::cout << data.str();
    } else if (!write_file_atomic(export_out, data.str())) {
      std::cerr << "error: cannot write '" << export_out << "'\n";
      return kExitBadInput;
    }
    return kExitOk;
  }

  return kExitBadInput;
}
