#include "quickfield/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace quickfield {

void ModelParams::validate() const {
  if (!(k_s >= 0.0)) throw ValidationError("k_s must be >= 0");
  if (!(k_sdyn >= 0.0)) throw ValidationError("k_sdyn must be >= 0");
  if (!(s_add >= 1.0)) throw ValidationError("s_add must be >= 1");
  if (max_time < 0) throw ValidationError("max_time must be >= 0");
}

int quantize_speed(double raw) {
  const int rounded = static_cast<int>(std::llround(raw));
  return std::clamp(rounded, 1, 4);
}

int sample_speed(Rng& rng) { return quantize_speed(rng.normal(3.5, 1.0)); }

namespace {

// Candidate paths run along non-Wall, unoccupied cells: an agent cannot step
// over another agent within a tick. Letting paths cross occupied cells drains
// a jam from anywhere inside its speed-radius and congestion never builds up.
constexpr bool kPathsBlockedByOccupancy = true;

}  // namespace

std::vector<Coord> candidate_cells(const Grid& grid,
                                   const OccupancyMap& occupancy,
                                   Coord position, int speed) {
  if (!grid.in_bounds(position))
    throw ContractError("candidate_cells: position out of bounds");
  if (speed < 1) throw ContractError("candidate_cells: speed must be >= 1");

  const int radius = speed;
  const int side = 2 * radius + 1;
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(side) * side, 0);
  const auto window_index = [&](Coord c) {
    return static_cast<std::size_t>(c.y - position.y + radius) * side +
           (c.x - position.x + radius);
  };

  std::vector<Coord> out{position};
  std::vector<Coord> frontier{position};
  std::vector<Coord> next;
  seen[window_index(position)] = 1;

  for (int depth = 0; depth < radius && !frontier.empty(); ++depth) {
    next.clear();
    for (Coord c : frontier) {
      visit_neighbors(grid, c, NeighborhoodKind::Moore, [&](Coord n) {
        if (seen[window_index(n)]) return;
        seen[window_index(n)] = 1;
        const bool occupied = occupancy.at(n);
        if (!occupied) out.push_back(n);
        if (!occupied || !kPathsBlockedByOccupancy) next.push_back(n);
      });
    }
    std::swap(frontier, next);
  }

  std::sort(out.begin(), out.end(),
            [](Coord a, Coord b) { return a.y != b.y ? a.y < b.y : a.x < b.x; });
  return out;
}

TransitionDistribution transition_probabilities(
    const std::vector<Coord>& candidates, Coord self,
    const PotentialField& static_field, const PotentialField* s_dyn,
    const ModelParams& params) {
  std::vector<std::pair<Coord, double>> kept;  // (cell, combined exponent)
  kept.reserve(candidates.size());
  for (Coord c : candidates) {
    const double s = static_field.at(c);
    if (s == PotentialField::kInfinite) continue;
    double w = params.k_s * s;
    if (s_dyn != nullptr && params.k_sdyn > 0.0) {
      const double d = s_dyn->at(c);
      if (d == PotentialField::kInfinite) continue;
      w += params.k_sdyn * d;
    }
    kept.push_back({c, w});
  }

  TransitionDistribution out;
  if (kept.empty()) {
    // nowhere to go: the agent waits on its own cell
    out.candidates = {{self, 1.0}};
    out.normalizer = 1.0;
    return out;
  }

  // shift by the minimum exponent so the weights never underflow
  double w_min = kept.front().second;
  for (const auto& [c, w] : kept) w_min = std::min(w_min, w);
  double sum = 0.0;
  for (auto& [c, w] : kept) {
    w = std::exp(-(w - w_min));
    sum += w;
  }
  out.candidates.reserve(kept.size());
  for (const auto& [c, w] : kept) out.candidates.push_back({c, w / sum});
  out.normalizer = 1.0 / sum;
  return out;
}

Coord sample_transition(const TransitionDistribution& distribution, double u) {
  if (distribution.candidates.empty())
    throw ContractError("sample_transition: empty distribution");
  double cumulative = 0.0;
  for (const auto& [cell, p] : distribution.candidates) {
    cumulative += p;
    if (u < cumulative) return cell;
  }
  return distribution.candidates.back().first;
}

Simulation::Simulation(Scenario scenario, const ModelParams& params,
                       std::uint64_t seed)
    : Simulation(std::move(scenario), PotentialField(), params, seed) {}

Simulation::Simulation(Scenario scenario, PotentialField static_field,
                       const ModelParams& params, std::uint64_t seed)
    : scenario_(std::move(scenario)), params_(params), rng_(seed),
      seed_(seed) {
  scenario_.validate();
  params_.validate();
  if (static_field.width() == 0)
    static_field_ = compute_static(scenario_.grid);
  else if (static_field.width() != scenario_.grid.width() ||
           static_field.height() != scenario_.grid.height())
    throw ContractError("Simulation: static field does not match the grid");
  else
    static_field_ = std::move(static_field);
  s_dyn_ = PotentialField(scenario_.grid.width(), scenario_.grid.height(), 0.0);
  occupancy_ = OccupancyMap(scenario_.grid.width(), scenario_.grid.height());
  place_agents();
}

void Simulation::place_agents() {
  std::vector<Coord> cells = scenario_.start_region;
  std::sort(cells.begin(), cells.end(),
            [](Coord a, Coord b) { return a.y != b.y ? a.y < b.y : a.x < b.x; });
  agents_.reserve(scenario_.agent_count);
  for (int i = 0; i < scenario_.agent_count; ++i) {
    Agent agent;
    agent.id = i;
    agent.position = cells[i];
    agent.speed = sample_speed(rng_);
    agents_.push_back(agent);
    occupancy_.set(agent.position, true);
  }
}

void Simulation::step() {
  if (done() || clock_ >= params_.max_time) return;

  if (params_.k_sdyn > 0.0)
    s_dyn_ =
        compute_s_dyn(scenario_.grid, occupancy_, static_field_, params_.s_add);
  const PotentialField* s_dyn_ptr = params_.k_sdyn > 0.0 ? &s_dyn_ : nullptr;

  move_order_.clear();
  for (const Agent& agent : agents_)
    if (agent.active()) move_order_.push_back(agent.id);
  rng_.shuffle(move_order_);

  for (const int id : move_order_) {
    Agent& agent = agents_[id];

    const auto leave = [&](Coord cell) {
      agent.exit_time = clock_ + 1;
      agent.exit_taken = scenario_.exit_labels.at(cell);
      ++exited_count_;
    };

    // hand-built states may start an agent directly on a destination
    if (scenario_.grid.at(agent.position) == CellKind::Destination) {
      occupancy_.set(agent.position, false);
      leave(agent.position);
      continue;
    }

    const auto candidates =
        candidate_cells(scenario_.grid, occupancy_, agent.position, agent.speed);
    const auto distribution = transition_probabilities(
        candidates, agent.position, static_field_, s_dyn_ptr, params_);
    const Coord target = sample_transition(distribution, rng_.uniform01());
    if (target == agent.position) continue;

    occupancy_.set(agent.position, false);
    agent.position = target;
    if (scenario_.grid.at(target) == CellKind::Destination)
      leave(target);
    else
      occupancy_.set(target, true);
  }
  ++clock_;
}

RunResult Simulation::result() const {
  RunResult r;
  r.seed = seed_;
  r.agents = agents_;
  int exited = 0;
  double exit_time_sum = 0.0;
  for (const Agent& agent : agents_) {
    if (!agent.exit_time) continue;
    ++exited;
    exit_time_sum += *agent.exit_time;
    r.total_time = std::max(r.total_time, *agent.exit_time);
    if (agent.exit_taken == ExitLabel::Right)
      ++r.right_exit_count;
    else
      ++r.left_exit_count;
  }
  if (exited > 0) r.mean_exit_time = exit_time_sum / exited;
  r.completed = exited == scenario_.agent_count;
  return r;
}

RunResult run(const Scenario& scenario, const ModelParams& params,
              std::uint64_t seed) {
  Simulation sim(scenario, params, seed);
  while (!sim.done() && sim.clock() < params.max_time) sim.step();
  return sim.result();
}

RunResult run_with_static(const Scenario& scenario,
                          const PotentialField& static_field,
                          const ModelParams& params, std::uint64_t seed) {
  Simulation sim(scenario, static_field, params, seed);
  while (!sim.done() && sim.clock() < params.max_time) sim.step();
  return sim.result();
}

}  // namespace quickfield
