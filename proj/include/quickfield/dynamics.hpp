#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "quickfield/fields.hpp"
#include "quickfield/geometry.hpp"
#include "quickfield/rng.hpp"

namespace quickfield {

struct Agent {
  int id = 0;
  Coord position;
  int speed = 1;  // cells per second, in {1,2,3,4}
  std::optional<int> exit_time;
  std::optional<ExitLabel> exit_taken;

  bool active() const { return !exit_time.has_value(); }
};

struct ModelParams {
  double k_s = 1.0;     // static-field coupling
  double k_sdyn = 1.0;  // dynamic-field coupling; 0 disables the dynamic field
  double s_add = 10.0;  // entry cost of an occupied cell in the dynamic fills
  int max_time = 3600;  // seconds

  void validate() const;
};

struct TransitionDistribution {
  std::vector<std::pair<Coord, double>> candidates;  // row-major cell order
  double normalizer = 0.0;
};

/// Round a continuous speed draw to the nearest integer, then clamp to [1,4].
int quantize_speed(double raw);

/// Desired speed: Normal(3.5, 1.0) cells/s with cut-offs at 1 and 4.
int sample_speed(Rng& rng);

/// Cells an agent can pick as its destination this tick: every cell reachable
/// within `speed` Moore steps along non-Wall, unoccupied cells. Row-major
/// order; always contains the agent's own position.
std::vector<Coord> candidate_cells(const Grid& grid,
                                   const OccupancyMap& occupancy, Coord position,
                                   int speed);

/// p(c) proportional to exp(-k_s * S(c)) * exp(-k_sdyn * S_dyn(c)), normalized
/// to sum 1. Candidates with infinite static value are dropped first; if every
/// candidate drops, the distribution keeps `self` alone (the agent waits).
/// Pass s_dyn = nullptr when the dynamic field is disabled; it is never read.
TransitionDistribution transition_probabilities(
    const std::vector<Coord>& candidates, Coord self,
    const PotentialField& static_field, const PotentialField* s_dyn,
    const ModelParams& params);

/// Inverse-CDF draw over the candidates in list order; u in [0,1).
Coord sample_transition(const TransitionDistribution& distribution, double u);

struct RunResult {
  std::uint64_t seed = 0;
  int total_time = 0;                    // T: last egress second
  std::optional<double> mean_exit_time;  // T_i: mean over exited agents
  int right_exit_count = 0;
  int left_exit_count = 0;
  bool completed = true;
  std::vector<Agent> agents;  // per-agent records, id order
};

/// One evacuation in progress. One tick = one second: the dynamic field is
/// recomputed from the current occupancy, then agents move one by one in a
/// freshly shuffled order, so moves never conflict. An agent that lands on a
/// destination cell leaves the simulation at the end of its own move.
class Simulation {
 public:
  Simulation(Scenario scenario, const ModelParams& params, std::uint64_t seed);
  Simulation(Scenario scenario, PotentialField static_field,
             const ModelParams& params, std::uint64_t seed);

  void step();
  bool done() const { return exited_count_ == scenario_.agent_count; }

  int clock() const { return clock_; }
  int active_count() const { return scenario_.agent_count - exited_count_; }
  int exited_count() const { return exited_count_; }

  const Scenario& scenario() const { return scenario_; }
  const std::vector<Agent>& agents() const { return agents_; }
  const PotentialField& static_field() const { return static_field_; }
  /// Dynamic field used by the most recent step (all-zero before any step or
  /// while the coupling is off).
  const PotentialField& s_dyn() const { return s_dyn_; }
  const OccupancyMap& occupancy() const { return occupancy_; }
  const ModelParams& params() const { return params_; }

  RunResult result() const;

 private:
  void place_agents();

  Scenario scenario_;
  ModelParams params_;
  Rng rng_;
  PotentialField static_field_;
  PotentialField s_dyn_;
  OccupancyMap occupancy_;
  std::vector<Agent> agents_;
  std::vector<int> move_order_;
  int clock_ = 0;
  int exited_count_ = 0;
  std::uint64_t seed_ = 0;
};

/// Steps a fresh Simulation until egress is complete or params.max_time is
/// reached; a timeout reports completed = false with partial metrics.
RunResult run(const Scenario& scenario, const ModelParams& params,
              std::uint64_t seed);
RunResult run_with_static(const Scenario& scenario,
                          const PotentialField& static_field,
                          const ModelParams& params, std::uint64_t seed);

}  // namespace quickfield
