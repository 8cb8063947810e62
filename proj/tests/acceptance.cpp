// Acceptance suite: prints one PASS/FAIL line per criterion and exits with
// the number of failures. Heavier statistical checks share their batches.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "quickfield/dynamics.hpp"
#include "quickfield/experiment.hpp"
#include "quickfield/fields.hpp"
#include "quickfield/geometry.hpp"
#include "quickfield/render.hpp"

using namespace quickfield;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kBaseSeed = 2024;

struct Criterion {
  std::string name;
  double budget_seconds;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

Criterion evaluate(const std::string& name, double budget_seconds,
                   const std::function<bool(std::string&)>& body) {
  Criterion c{name, budget_seconds};
  const auto t0 = std::chrono::steady_clock::now();
  try {
    c.pass = body(c.detail);
  } catch (const std::exception& e) {
    c.pass = false;
    c.detail = std::string("exception: ") + e.what();
  }
  c.seconds = seconds_since(t0);
  if (c.seconds >= budget_seconds) {
    c.pass = false;
    c.detail += " [over time budget]";
  }
  return c;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

double pooled_se(const AggregateMetrics& a, const AggregateMetrics& b) {
  return std::sqrt(a.sd_right_exit * a.sd_right_exit / a.n_runs +
                   b.sd_right_exit * b.sd_right_exit / b.n_runs);
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// ---- criterion bodies ------------------------------------------------------

bool euclidean_exactness(std::string& detail) {
  Grid g(50, 50);
  g.set(17, 31, CellKind::Destination);
  const PotentialField f = compute_static(g);
  double max_err = 0.0;
  for (int y = 0; y < 50; ++y)
    for (int x = 0; x < 50; ++x)
      max_err =
          std::max(max_err, std::abs(f.at(x, y) - std::hypot(x - 17, y - 31)));
  detail = "max |error| = " + fmt(max_err) + " over 2499 cells";
  return max_err < 1e-9;
}

bool oracle_equivalence(std::string& detail) {
  std::mt19937 gen(7777);
  const double s_adds[] = {1.0, 2.0, 5.0, 10.0};
  int compared = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = qftest::random_instance(gen, 20, 20, 0.2, 0.2);
    const double s_add = s_adds[trial % 4];
    for (auto nb : {NeighborhoodKind::VonNeumann, NeighborhoodKind::Moore}) {
      if (!qftest::fields_equal(
              flood_fill(inst.grid, inst.occupancy, nb, s_add),
              qftest::reference_fill(inst.grid, inst.occupancy, nb, s_add))) {
        detail = "mismatch on grid " + std::to_string(trial);
        return false;
      }
      ++compared;
    }
  }
  detail = std::to_string(compared) + " fills equal the reference solver";
  return true;
}

bool sdyn_properties(std::string& detail) {
  std::mt19937 gen(4242);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = qftest::random_instance(gen, 20, 20, 0.2, 0.2);
    const PotentialField stat = compute_static(inst.grid);
    const OccupancyMap empty(20, 20);
    const PotentialField no_occ = compute_s_dyn(inst.grid, empty, stat, 10.0);
    PotentialField prev;
    for (double s_add : {1.0, 2.0, 5.0, 10.0}) {
      const PotentialField cur =
          compute_s_dyn(inst.grid, inst.occupancy, stat, s_add);
      for (int y = 0; y < 20; ++y)
        for (int x = 0; x < 20; ++x) {
          if (!stat.finite_at(x, y)) continue;
          if (no_occ.at(x, y) != 0.0) {
            detail = "S_dyn != 0 with empty occupancy";
            return false;
          }
          if (s_add == 1.0 && cur.at(x, y) != 0.0) {
            detail = "S_dyn != 0 at s_add = 1";
            return false;
          }
          if (cur.at(x, y) < 0.0) {
            detail = "negative S_dyn";
            return false;
          }
          if (prev.width() > 0 && cur.at(x, y) < prev.at(x, y) - 1e-9) {
            detail = "S_dyn decreased in s_add at (" + std::to_string(x) +
                     "," + std::to_string(y) + ")";
            return false;
          }
        }
      prev = cur;
    }
  }
  detail = "zero baseline, non-negative, monotone in s_add on 50 instances";
  return true;
}

// shared between criteria 4 and 5
std::optional<BatchResult> g_variant2_off;

bool ddpf_direction(std::string& detail) {
  const Scenario s = build_rimea11(ExitVariant::V2_Flush);
  ModelParams off;
  off.k_sdyn = 0.0;
  ModelParams on;  // k_sdyn = 1, s_add = 10 defaults

  g_variant2_off = batch(s, off, 20, kBaseSeed, 0);
  const BatchResult with = batch(s, on, 20, kBaseSeed, 0);

  const double share_off = g_variant2_off->aggregate.mean_right_exit / 1000.0;
  const double share_on = with.aggregate.mean_right_exit / 1000.0;
  const double t_off = g_variant2_off->aggregate.mean_total_time;
  const double t_on = with.aggregate.mean_total_time;
  const double ti_off = *g_variant2_off->aggregate.mean_individual_time;
  const double ti_on = *with.aggregate.mean_individual_time;

  const bool a = share_off <= 0.35;
  const bool b = share_on >= 0.40 && share_on <= 0.60;
  const bool c = t_on <= 0.80 * t_off;
  const bool d = ti_on < ti_off;
  detail = "(a) base share " + fmt(share_off) + (a ? " <= 0.35" : " > 0.35!") +
           "; (b) ddpf share " + fmt(share_on) +
           (b ? " in [0.40,0.60]" : " outside [0.40,0.60]!") + "; (c) T " +
           fmt(t_off) + " -> " + fmt(t_on) + " (" +
           fmt((1.0 - t_on / t_off) * 100.0) + "% drop); (d) T_i " +
           fmt(ti_off) + " -> " + fmt(ti_on);
  return a && b && c && d;
}

bool geometry_ordering(std::string& detail) {
  ModelParams off;
  off.k_sdyn = 0.0;
  if (!g_variant2_off)
    g_variant2_off =
        batch(build_rimea11(ExitVariant::V2_Flush), off, 20, kBaseSeed, 0);
  const double v2 = g_variant2_off->aggregate.mean_right_exit;
  const double v1 =
      batch(build_rimea11(ExitVariant::V1_Recessed), off, 20, kBaseSeed, 0)
          .aggregate.mean_right_exit;
  const double v3 =
      batch(build_rimea11(ExitVariant::V3_Corridor), off, 20, kBaseSeed, 0)
          .aggregate.mean_right_exit;
  detail = "mean right-exit counts: v1 " + fmt(v1) + ", v2 " + fmt(v2) +
           ", v3 " + fmt(v3);
  return v2 < v1 && v2 < v3;
}

bool sadd_sweep_shape(std::string& detail) {
  const Scenario s = build_rimea11(ExitVariant::V2_Flush);
  ModelParams on;
  const auto rows = sadd_sweep(s, on, {1.0, 2.0, 5.0, 10.0}, 10, kBaseSeed, 0);

  ModelParams off;
  off.k_sdyn = 0.0;
  const BatchResult baseline = batch(s, off, 10, kBaseSeed, 0);

  const double se0 = pooled_se(rows[0].aggregate, baseline.aggregate);
  const double gap0 = std::abs(rows[0].aggregate.mean_right_exit -
                               baseline.aggregate.mean_right_exit);
  bool ok = gap0 <= 2.0 * se0 + 1e-12;
  detail = "s_add=1 vs baseline gap " + fmt(gap0) + " (2SE " + fmt(2 * se0) +
           "); counts";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    detail += " " + fmt(rows[i].aggregate.mean_right_exit);
    if (i > 0) {
      const double se = pooled_se(rows[i - 1].aggregate, rows[i].aggregate);
      if (rows[i].aggregate.mean_right_exit <
          rows[i - 1].aggregate.mean_right_exit - 2.0 * se) {
        ok = false;
        detail += "(!)";
      }
    }
  }
  return ok;
}

bool cli_determinism(std::string& detail) {
  const std::string cli = QF_CLI_PATH;
  const fs::path base = fs::temp_directory_path() / "quickfield_acceptance";
  std::error_code ec;
  fs::remove_all(base, ec);

  const auto invoke = [&](const std::string& args, const fs::path& dir) {
    const std::string cmd =
        "\"" + cli + "\" " + args + " --out-dir \"" + dir.string() +
        "\" > /dev/null";
    return std::system(cmd.c_str()) == 0;
  };

  for (const char* tag : {"a", "b"}) {
    if (!invoke("run --variant 2 --runs 2 --seed 7 --jobs 1",
                base / ("run_" + std::string(tag))) ||
        !invoke("snapshot --variant 2 --at 100 --seed 7",
                base / ("snap_" + std::string(tag)))) {
      detail = "CLI invocation failed";
      return false;
    }
  }

  for (const char* rel :
       {"run_?/batch.csv", "run_?/runs.csv", "snap_?/snapshot.ppm",
        "snap_?/sdyn.pgm"}) {
    std::string a = rel, b = rel;
    a.replace(a.find('?'), 1, "a");
    b.replace(b.find('?'), 1, "b");
    const std::string bytes_a = read_file(base / a);
    if (bytes_a.empty() || bytes_a != read_file(base / b)) {
      detail = std::string("byte mismatch: ") + rel;
      return false;
    }
  }
  detail = "batch.csv, runs.csv, snapshot.ppm, sdyn.pgm byte-identical";
  return true;
}

bool conservation(std::string& detail) {
  long long ticks_checked = 0;
  for (double k_sdyn : {0.0, 1.0}) {
    Rimea11Params geo;
    geo.agent_count = 200;
    const Scenario s = build_rimea11(ExitVariant::V2_Flush, geo);
    ModelParams p;
    p.k_sdyn = k_sdyn;
    Simulation sim(s, p, 99);
    while (!sim.done() && sim.clock() < p.max_time) {
      sim.step();
      ++ticks_checked;
      int active = 0;
      std::set<std::pair<int, int>> positions;
      for (const Agent& a : sim.agents()) {
        if (!a.active()) continue;
        ++active;
        if (!positions.insert({a.position.x, a.position.y}).second) {
          detail = "two agents share a cell at t=" + std::to_string(sim.clock());
          return false;
        }
      }
      if (active + sim.exited_count() != geo.agent_count) {
        detail = "agent count not conserved at t=" + std::to_string(sim.clock());
        return false;
      }
    }
    if (!sim.done()) {
      detail = "run timed out unexpectedly";
      return false;
    }
  }
  detail = "count conserved, positions unique over " +
           std::to_string(ticks_checked) + " ticks";
  return true;
}

}  // namespace

int main() {
  std::vector<Criterion> results;
  results.push_back(evaluate(
      "1. static field equals the Euclidean distance on an empty 50x50 grid",
      1.0, euclidean_exactness));
  results.push_back(evaluate(
      "2. weighted fills match a brute-force solver on 100 random grids", 30.0,
      oracle_equivalence));
  results.push_back(evaluate(
      "3. shadow field: zero baseline, non-negative, monotone in s_add", 30.0,
      sdyn_properties));
  results.push_back(evaluate(
      "4. two-door room: shadow field shifts load to the far exit", 300.0,
      ddpf_direction));
  results.push_back(evaluate(
      "5. flush exits give the lowest far-exit share of the three geometries",
      600.0, geometry_ordering));
  results.push_back(
      evaluate("6. far-exit use grows with s_add, matching the off baseline "
               "at s_add=1",
               300.0, sadd_sweep_shape));
  results.push_back(evaluate(
      "7. identical seeds reproduce CSV and image files byte for byte", 300.0,
      cli_determinism));
  results.push_back(evaluate(
      "8. agents are conserved and never share a cell", 60.0, conservation));

  int failures = 0;
  for (const Criterion& c : results) {
    if (!c.pass) ++failures;
    std::printf("%s  %s (%s) [%.1fs/%.0fs]\n", c.pass ? "PASS" : "FAIL",
                c.name.c_str(), c.detail.c_str(), c.seconds, c.budget_seconds);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failures,
              results.size());
  return failures;
}
