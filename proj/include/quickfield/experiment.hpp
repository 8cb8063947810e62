#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quickfield/dynamics.hpp"

namespace quickfield {

struct AggregateMetrics {
  int n_runs = 0;
  double mean_total_time = 0.0;
  double sd_total_time = 0.0;
  std::optional<double> mean_individual_time;
  std::optional<double> sd_individual_time;
  double mean_right_exit = 0.0;
  double sd_right_exit = 0.0;
  int incomplete_runs = 0;
};

struct BatchResult {
  AggregateMetrics aggregate;
  std::vector<RunResult> runs;  // seed order
};

/// Mean and sample standard deviation over a set of runs; order-independent.
AggregateMetrics aggregate_runs(const std::vector<RunResult>& runs);

/// Runs seeds base_seed .. base_seed+n_runs-1. The static field is computed
/// once and shared; runs execute on up to `jobs` worker threads (0 = hardware
/// concurrency). Results are identical for any jobs value.
BatchResult batch(const Scenario& scenario, const ModelParams& params,
                  int n_runs, std::uint64_t base_seed, int jobs = 0);

struct SweepRow {
  double s_add = 0.0;
  AggregateMetrics aggregate;
};

/// One batch per s_add value, k_sdyn held fixed, same seeds per row.
std::vector<SweepRow> sadd_sweep(const Scenario& scenario,
                                 const ModelParams& params,
                                 const std::vector<double>& sadd_values,
                                 int n_runs, std::uint64_t base_seed,
                                 int jobs = 0);

// CSV surface. All numbers are formatted deterministically.
std::string batch_csv_header();
std::string batch_csv_row(const std::string& variant_name,
                          const ModelParams& params,
                          const AggregateMetrics& aggregate);
std::string runs_csv_header();
std::string runs_csv_row(const RunResult& run);
std::string trace_csv_header();
std::string trace_csv_row(const Agent& agent);
std::string format_double(double value);

}  // namespace quickfield
