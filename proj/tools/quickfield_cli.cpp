// Command-line front end: batch runs, s_add sweeps, field renders, crowd
// snapshots, and scenario validation. Exit codes: 0 ok, 2 usage or config
// error, 3 I/O error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "quickfield/dynamics.hpp"
#include "quickfield/experiment.hpp"
#include "quickfield/fields.hpp"
#include "quickfield/geometry.hpp"
#include "quickfield/render.hpp"

namespace fs = std::filesystem;
using namespace quickfield;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct ScenarioOpts {
  std::string scenario_path;
  int variant = 0;
  int agents = -1;  // -1: keep the scenario's own count
};

struct ParamOpts {
  ModelParams params;
  std::optional<std::uint64_t> seed;
  int runs = 20;
  int jobs = 0;
  std::string out_dir = ".";
};

void add_scenario_options(CLI::App* cmd, ScenarioOpts& opts) {
  auto* path = cmd->add_option("--scenario", opts.scenario_path,
                               "Scenario file (header + character map)");
  auto* variant = cmd->add_option("--variant", opts.variant,
                                  "Built-in two-door room, exit geometry 1-3")
                      ->check(CLI::Range(1, 3));
  path->excludes(variant);
  cmd->add_option("--agents", opts.agents, "Override the agent count");
}

void add_param_options(CLI::App* cmd, ParamOpts& opts, bool with_runs = true,
                       bool with_s_add = true) {
  cmd->add_option("--k-s", opts.params.k_s, "Static-field coupling");
  cmd->add_option("--k-sdyn", opts.params.k_sdyn,
                  "Dynamic-field coupling (0 disables it)");
  if (with_s_add)
    cmd->add_option("--s-add", opts.params.s_add,
                    "Entry cost of an occupied cell");
  cmd->add_option("--max-time", opts.params.max_time,
                  "Per-run time cap in seconds");
  cmd->add_option("--seed", opts.seed, "Base seed (QUICKFIELD_SEED fallback)");
  cmd->add_option("--out-dir", opts.out_dir, "Output directory");
  if (with_runs) {
    cmd->add_option("--runs", opts.runs, "Runs per batch")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--jobs", opts.jobs,
                    "Worker threads (0 = hardware concurrency)");
  }
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  if (const char* env = std::getenv("QUICKFIELD_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ValidationError(std::string("bad QUICKFIELD_SEED value: ") + env);
    }
  }
  return 1;
}

Scenario resolve_scenario(const ScenarioOpts& opts) {
  Scenario scenario;
  if (!opts.scenario_path.empty()) {
    if (!fs::exists(opts.scenario_path))
      throw ValidationError("scenario file not found: " + opts.scenario_path);
    scenario = load_scenario_file(opts.scenario_path);
  } else if (opts.variant != 0) {
    scenario = build_rimea11(static_cast<ExitVariant>(opts.variant));
  } else {
    throw ValidationError("one of --scenario or --variant is required");
  }
  if (opts.agents >= 0) {
    scenario.agent_count = opts.agents;
    scenario.validate();
  }
  return scenario;
}

std::string scenario_name(const ScenarioOpts& opts) {
  if (!opts.scenario_path.empty())
    return fs::path(opts.scenario_path).filename().string();
  return std::to_string(opts.variant);
}

fs::path prepare_out_dir(const std::string& out_dir) {
  fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory: " + out_dir);
  return dir;
}

int cmd_run(const ScenarioOpts& sc_opts, const ParamOpts& opts, bool trace) {
  const Scenario scenario = resolve_scenario(sc_opts);
  const std::uint64_t seed = resolve_seed(opts.seed);
  const fs::path dir = prepare_out_dir(opts.out_dir);

  const BatchResult result =
      batch(scenario, opts.params, opts.runs, seed, opts.jobs);

  std::string batch_csv = batch_csv_header();
  batch_csv += batch_csv_row(scenario_name(sc_opts), opts.params,
                             result.aggregate);
  write_bytes(dir / "batch.csv", batch_csv);

  std::string runs_csv = runs_csv_header();
  for (const RunResult& r : result.runs) runs_csv += runs_csv_row(r);
  write_bytes(dir / "runs.csv", runs_csv);

  if (trace) {
    for (const RunResult& r : result.runs) {
      std::string csv = trace_csv_header();
      for (const Agent& a : r.agents) csv += trace_csv_row(a);
      write_bytes(dir / ("trace_seed" + std::to_string(r.seed) + ".csv"), csv);
    }
  }

  const AggregateMetrics& agg = result.aggregate;
  std::cout << "variant=" << scenario_name(sc_opts) << " n_runs=" << agg.n_runs
            << " mean_T=" << format_double(agg.mean_total_time)
            << " sd_T=" << format_double(agg.sd_total_time) << " mean_Ti="
            << (agg.mean_individual_time
                    ? format_double(*agg.mean_individual_time)
                    : "-")
            << " mean_right=" << format_double(agg.mean_right_exit)
            << " incomplete=" << agg.incomplete_runs << "\n";
  return kExitOk;
}

int cmd_sweep(const ScenarioOpts& sc_opts, const ParamOpts& opts,
              const std::vector<double>& sadd_values) {
  const Scenario scenario = resolve_scenario(sc_opts);
  const std::uint64_t seed = resolve_seed(opts.seed);
  const fs::path dir = prepare_out_dir(opts.out_dir);

  const auto rows =
      sadd_sweep(scenario, opts.params, sadd_values, opts.runs, seed, opts.jobs);

  std::string csv = batch_csv_header();
  for (const SweepRow& row : rows) {
    ModelParams p = opts.params;
    p.s_add = row.s_add;
    csv += batch_csv_row(scenario_name(sc_opts), p, row.aggregate);
    std::cout << "s_add=" << format_double(row.s_add)
              << " mean_right=" << format_double(row.aggregate.mean_right_exit)
              << " sd_right=" << format_double(row.aggregate.sd_right_exit)
              << "\n";
  }
  write_bytes(dir / "sweep.csv", csv);
  return kExitOk;
}

int cmd_snapshot(const ScenarioOpts& sc_opts, const ParamOpts& opts, int at,
                 int scale) {
  if (at < 0) throw ValidationError("--at must be >= 0");
  const Scenario scenario = resolve_scenario(sc_opts);
  const std::uint64_t seed = resolve_seed(opts.seed);
  const fs::path dir = prepare_out_dir(opts.out_dir);

  Simulation sim(scenario, opts.params, seed);
  while (!sim.done() && sim.clock() < at) sim.step();
  if (sim.done() && sim.clock() < at)
    std::cerr << "warning: egress complete at t=" << sim.clock()
              << "s, before requested t=" << at << "s; writing final state\n";

  write_bytes(dir / "snapshot.ppm",
              encode_ppm(render_snapshot(scenario.grid, sim.occupancy(), scale)));
  const PotentialField s_dyn = compute_s_dyn(
      scenario.grid, sim.occupancy(), sim.static_field(), opts.params.s_add);
  write_bytes(dir / "sdyn.pgm",
              encode_pgm(render_field(s_dyn, scenario.grid, RenderMode::Gray,
                                      scale)));
  std::cout << "t=" << sim.clock() << " active=" << sim.active_count()
            << " exited=" << sim.exited_count() << "\n";
  return kExitOk;
}

int cmd_render_fields(const ScenarioOpts& sc_opts, const ParamOpts& opts,
                      int metrics_size, int scale) {
  const fs::path dir = prepare_out_dir(opts.out_dir);

  if (metrics_size > 0) {
    Grid demo(metrics_size, metrics_size);
    demo.set(metrics_size / 2, metrics_size / 2, CellKind::Destination);
    const auto images = render_metric_comparison(demo, scale);
    const char* names[] = {"manhattan.pgm", "chebyshev.pgm",
                           "minimum_norm.pgm", "v1.pgm"};
    for (int i = 0; i < 4; ++i)
      write_bytes(dir / names[i], encode_pgm(images[i]));
  }

  if (!sc_opts.scenario_path.empty() || sc_opts.variant != 0) {
    const Scenario scenario = resolve_scenario(sc_opts);
    const PotentialField field = compute_static(scenario.grid);
    write_bytes(dir / "static_field.txt", field_to_text(field));
    write_bytes(dir / "static_field.pgm",
                encode_pgm(render_field(field, scenario.grid, RenderMode::Gray,
                                        scale)));
    write_bytes(dir / "static_field_16.pgm",
                encode_field_pgm16(field, scenario.grid));
  } else if (metrics_size <= 0) {
    throw ValidationError(
        "render-fields needs --scenario, --variant, or --metrics");
  }
  return kExitOk;
}

int cmd_validate(const ScenarioOpts& sc_opts) {
  const Scenario scenario = resolve_scenario(sc_opts);
  scenario.validate();
  std::cout << "ok: " << scenario.grid.width() << "x" << scenario.grid.height()
            << " grid, " << scenario.start_region.size() << " start cells, "
            << scenario.agent_count << " agents, "
            << scenario.exit_labels.size() << " destination cells\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pedestrian evacuation simulator with congestion-aware "
               "potential fields"};
  app.require_subcommand(1);

  ScenarioOpts sc_run, sc_sweep, sc_snap, sc_render, sc_validate;
  ParamOpts p_run, p_sweep, p_snap, p_render;
  bool trace = false;
  std::vector<double> sadd_values;
  int snapshot_at = 100;
  int snap_scale = 1, render_scale = 1;
  int metrics_size = 0;

  CLI::App* run_cmd = app.add_subcommand("run", "Run a batch of simulations");
  add_scenario_options(run_cmd, sc_run);
  add_param_options(run_cmd, p_run);
  run_cmd->add_flag("--trace", trace, "Write per-agent trace CSVs");

  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Batch per s_add value, one CSV");
  add_scenario_options(sweep_cmd, sc_sweep);
  add_param_options(sweep_cmd, p_sweep, /*with_runs=*/true, /*with_s_add=*/false);
  sweep_cmd
      ->add_option("--s-add", sadd_values,
                   "Comma-separated s_add values, e.g. 1,2,5,10")
      ->delimiter(',')
      ->required();

  CLI::App* snap_cmd =
      app.add_subcommand("snapshot", "Crowd and shadow images at a time");
  add_scenario_options(snap_cmd, sc_snap);
  add_param_options(snap_cmd, p_snap, /*with_runs=*/false);
  snap_cmd->add_option("--at", snapshot_at, "Snapshot time in seconds");
  snap_cmd->add_option("--scale", snap_scale, "Integer pixel upscale")
      ->check(CLI::PositiveNumber);

  CLI::App* render_cmd =
      app.add_subcommand("render-fields", "Export potential-field images");
  add_scenario_options(render_cmd, sc_render);
  add_param_options(render_cmd, p_render, /*with_runs=*/false);
  render_cmd->add_option(
      "--metrics", metrics_size,
      "Also render the four metric images on an NxN demo grid");
  render_cmd->add_option("--scale", render_scale, "Integer pixel upscale")
      ->check(CLI::PositiveNumber);

  CLI::App* validate_cmd =
      app.add_subcommand("validate", "Check scenario invariants");
  add_scenario_options(validate_cmd, sc_validate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(sc_run, p_run, trace);
    if (sweep_cmd->parsed()) return cmd_sweep(sc_sweep, p_sweep, sadd_values);
    if (snap_cmd->parsed())
      return cmd_snapshot(sc_snap, p_snap, snapshot_at, snap_scale);
    if (render_cmd->parsed())
      return cmd_render_fields(sc_render, p_render, metrics_size, render_scale);
    if (validate_cmd->parsed()) return cmd_validate(sc_validate);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
