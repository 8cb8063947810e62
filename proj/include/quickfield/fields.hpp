#pragma once

#include <limits>
#include <string>
#include <vector>

#include "quickfield/geometry.hpp"

namespace quickfield {

/// Per-cell non-negative path costs in cell units. Walls and cells with no
/// path to a destination hold kInfinite.
class PotentialField {
 public:
  static constexpr double kInfinite = std::numeric_limits<double>::infinity();

  PotentialField() : width_(0), height_(0) {}
  PotentialField(int width, int height, double fill = kInfinite);

  int width() const { return width_; }
  int height() const { return height_; }

  double at(int x, int y) const { return values_[index(x, y)]; }
  double at(Coord c) const { return at(c.x, c.y); }
  void set(int x, int y, double v) { values_[index(x, y)] = v; }
  void set(Coord c, double v) { set(c.x, c.y, v); }

  bool finite_at(int x, int y) const { return at(x, y) != kInfinite; }
  bool finite_at(Coord c) const { return finite_at(c.x, c.y); }

  const std::vector<double>& values() const { return values_; }

  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

 private:
  int width_;
  int height_;
  std::vector<double> values_;
};

class OccupancyMap {
 public:
  OccupancyMap() : width_(0), height_(0) {}
  OccupancyMap(int width, int height)
      : width_(width), height_(height),
        occupied_(static_cast<std::size_t>(width) * height, 0) {}

  int width() const { return width_; }
  int height() const { return height_; }

  bool at(int x, int y) const { return occupied_[index(x, y)] != 0; }
  bool at(Coord c) const { return at(c.x, c.y); }
  void set(int x, int y, bool value) { occupied_[index(x, y)] = value ? 1 : 0; }
  void set(Coord c, bool value) { set(c.x, c.y, value); }

  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> occupied_;
};

struct FieldParams {
  double s_add = 10.0;  // entry cost of an occupied cell, >= 1

  void validate() const;
};

/// Exact shortest-path cost from the destination set. Entering an unoccupied
/// free cell costs 1, entering an occupied cell costs s_add, destination
/// cells cost 0. Costs are non-uniform for s_add > 1, so the fill runs a
/// priority-ordered (Dijkstra) expansion rather than plain BFS. Unreachable
/// cells and walls stay at kInfinite.
PotentialField flood_fill(const Grid& grid, const OccupancyMap& occupancy,
                          NeighborhoodKind nb, double s_add);

/// Per-cell combination d = sqrt(c^2 + (m - c)^2) of a Manhattan fill m and
/// a Chebyshev fill c; approximates Euclidean distance. Infinite cells must
/// match between the inputs and stay infinite.
PotentialField combine_v1(const PotentialField& manhattan,
                          const PotentialField& chebyshev);

/// Combined potential on the empty geometry; the static floor field.
PotentialField compute_static(const Grid& grid);

/// Excess path cost caused by occupancy: the combined occupancy-weighted
/// potential minus `static_field`. Non-negative everywhere finite.
PotentialField compute_s_dyn(const Grid& grid, const OccupancyMap& occupancy,
                             const PotentialField& static_field, double s_add);

/// Rows of space-separated values, `inf` for infinite cells.
std::string field_to_text(const PotentialField& field);

}  // namespace quickfield
