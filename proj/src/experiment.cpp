#include "quickfield/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

namespace quickfield {

namespace {

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;
};

MeanSd mean_sd(const std::vector<double>& values) {
  MeanSd out;
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / values.size();
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.sd = std::sqrt(ss / (values.size() - 1));
  }
  return out;
}

}  // namespace

AggregateMetrics aggregate_runs(const std::vector<RunResult>& runs) {
  if (runs.empty()) throw ContractError("aggregate_runs: no runs");
  AggregateMetrics agg;
  agg.n_runs = static_cast<int>(runs.size());
  std::vector<double> totals, rights, individuals;
  for (const RunResult& r : runs) {
    totals.push_back(r.total_time);
    rights.push_back(r.right_exit_count);
    if (r.mean_exit_time) individuals.push_back(*r.mean_exit_time);
    if (!r.completed) ++agg.incomplete_runs;
  }
  const MeanSd t = mean_sd(totals);
  agg.mean_total_time = t.mean;
  agg.sd_total_time = t.sd;
  const MeanSd right = mean_sd(rights);
  agg.mean_right_exit = right.mean;
  agg.sd_right_exit = right.sd;
  if (!individuals.empty()) {
    const MeanSd ti = mean_sd(individuals);
    agg.mean_individual_time = ti.mean;
    agg.sd_individual_time = ti.sd;
  }
  return agg;
}

BatchResult batch(const Scenario& scenario, const ModelParams& params,
                  int n_runs, std::uint64_t base_seed, int jobs) {
  if (n_runs < 1) throw ContractError("batch: n_runs must be >= 1");
  scenario.validate();
  params.validate();

  const PotentialField static_field = compute_static(scenario.grid);
  std::vector<RunResult> results(n_runs);

  int workers = jobs > 0 ? jobs
                         : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min(workers, n_runs));

  if (workers == 1) {
    for (int i = 0; i < n_runs; ++i)
      results[i] = run_with_static(scenario, static_field, params,
                                   base_seed + static_cast<std::uint64_t>(i));
  } else {
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= n_runs) return;
        try {
          results[i] =
              run_with_static(scenario, static_field, params,
                              base_seed + static_cast<std::uint64_t>(i));
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }

  BatchResult out;
  out.aggregate = aggregate_runs(results);
  out.runs = std::move(results);
  return out;
}

std::vector<SweepRow> sadd_sweep(const Scenario& scenario,
                                 const ModelParams& params,
                                 const std::vector<double>& sadd_values,
                                 int n_runs, std::uint64_t base_seed,
                                 int jobs) {
  if (sadd_values.empty()) throw ContractError("sadd_sweep: empty s_add list");
  for (double s : sadd_values)
    if (!(s >= 1.0)) throw ContractError("sadd_sweep: s_add values must be >= 1");

  std::vector<SweepRow> rows;
  rows.reserve(sadd_values.size());
  for (double s : sadd_values) {
    ModelParams p = params;
    p.s_add = s;
    rows.push_back({s, batch(scenario, p, n_runs, base_seed, jobs).aggregate});
  }
  return rows;
}

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.10g", value);
  return buffer;
}

std::string batch_csv_header() {
  return "variant,k_S,k_Sdyn,s_add,n_runs,mean_T,sd_T,mean_Ti,sd_Ti,"
         "mean_right,sd_right,incomplete_runs\n";
}

std::string batch_csv_row(const std::string& variant_name,
                          const ModelParams& params,
                          const AggregateMetrics& agg) {
  std::string row = variant_name;
  row += ',' + format_double(params.k_s);
  row += ',' + format_double(params.k_sdyn);
  row += ',' + format_double(params.s_add);
  row += ',' + std::to_string(agg.n_runs);
  row += ',' + format_double(agg.mean_total_time);
  row += ',' + format_double(agg.sd_total_time);
  row += ',';
  if (agg.mean_individual_time) row += format_double(*agg.mean_individual_time);
  row += ',';
  if (agg.sd_individual_time) row += format_double(*agg.sd_individual_time);
  row += ',' + format_double(agg.mean_right_exit);
  row += ',' + format_double(agg.sd_right_exit);
  row += ',' + std::to_string(agg.incomplete_runs);
  row += '\n';
  return row;
}

std::string runs_csv_header() {
  return "seed,T,T_i,right_exit_count,left_exit_count,completed\n";
}

std::string runs_csv_row(const RunResult& run) {
  std::string row = std::to_string(run.seed);
  row += ',' + std::to_string(run.total_time);
  row += ',';
  if (run.mean_exit_time) row += format_double(*run.mean_exit_time);
  row += ',' + std::to_string(run.right_exit_count);
  row += ',' + std::to_string(run.left_exit_count);
  row += run.completed ? ",1\n" : ",0\n";
  return row;
}

std::string trace_csv_header() { return "id,speed,exit_time,exit_taken\n"; }

std::string trace_csv_row(const Agent& agent) {
  std::string row = std::to_string(agent.id);
  row += ',' + std::to_string(agent.speed);
  row += ',';
  if (agent.exit_time) row += std::to_string(*agent.exit_time);
  row += ',';
  if (agent.exit_taken)
    row += *agent.exit_taken == ExitLabel::Left ? 'L' : 'R';
  row += '\n';
  return row;
}

}  // namespace quickfield
